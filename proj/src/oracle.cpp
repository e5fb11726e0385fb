#include "adm/oracle.hpp"

#include <cmath>
#include <vector>

namespace adm {
namespace oracle {
namespace {

// Dense view over the logical lattice |k_i| <= K for convolution loops.
struct BandTable {
    int K;
    std::vector<Complex> c; // (2K+1)^2 entries

    explicit BandTable(int K_) : K(K_), c((2 * K_ + 1) * (2 * K_ + 1)) {}

    Complex& at(int kx, int ky) {
        return c[static_cast<std::size_t>(kx + K) * (2 * K + 1) + (ky + K)];
    }
    Complex at(int kx, int ky) const {
        return c[static_cast<std::size_t>(kx + K) * (2 * K + 1) + (ky + K)];
    }
    bool holds(int kx, int ky) const {
        return std::abs(kx) <= K && std::abs(ky) <= K;
    }
};

BandTable to_table(const SpectralScalar& f) {
    const TorusGrid& g = f.grid();
    const int K = g.dealias_cutoff();
    BandTable t(K);
    for (int kx = -K; kx <= K; ++kx)
        for (int ky = -K; ky <= K; ++ky) {
            if (kx == 0 && ky == 0) continue;
            t.at(kx, ky) = f.coeff(kx, ky);
        }
    return t;
}

SpectralScalar from_table(const BandTable& t, const TorusGrid& g) {
    SpectralScalar out(g);
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            if (!g.in_band(i, j)) continue;
            out.at(i, j) = t.at(g.kx_int(i), j);
        }
    canonicalize(out);
    return out;
}

BandTable convolve(const BandTable& a, const BandTable& b) {
    const int K = a.K;
    BandTable out(K);
    for (int kx = -K; kx <= K; ++kx) {
        for (int ky = -K; ky <= K; ++ky) {
            if (kx == 0 && ky == 0) continue;
            Complex acc(0.0, 0.0);
            for (int mx = -K; mx <= K; ++mx) {
                for (int my = -K; my <= K; ++my) {
                    const int nx = kx - mx;
                    const int ny = ky - my;
                    if (!out.holds(nx, ny)) continue;
                    acc += a.at(mx, my) * b.at(nx, ny);
                }
            }
            out.at(kx, ky) = acc;
        }
    }
    return out;
}

} // namespace

double dn_symbol(double alpha, int N, double ksq) {
    const double a = alpha * alpha * ksq;
    const double A = 1.0 + a;
    const double x = a / A;
    return A * (1.0 - std::pow(x, N + 1));
}

SpectralScalar direct_product(const SpectralScalar& a, const SpectralScalar& b) {
    assert(a.grid() == b.grid());
    const BandTable ta = to_table(a);
    const BandTable tb = to_table(b);
    return from_table(convolve(ta, tb), a.grid());
}

Nonlinearity direct_nonlinearity(const State& V, const ModelParams& p) {
    const TorusGrid& g = V.grid();
    const int K = g.dealias_cutoff();
    const double l1 = g.lambda1();
    const double ku = g.k_unit();

    // u = D_N G v, phi = D_N G theta, symbol evaluated in product form.
    BandTable u1 = to_table(V.v.x);
    BandTable u2 = to_table(V.v.y);
    BandTable phi = to_table(V.theta);
    for (int kx = -K; kx <= K; ++kx) {
        for (int ky = -K; ky <= K; ++ky) {
            if (kx == 0 && ky == 0) continue;
            const double ksq = l1 * (kx * kx + ky * ky);
            const double sym = dn_symbol(p.alpha, p.N, ksq) /
                               (1.0 + p.alpha * p.alpha * ksq);
            u1.at(kx, ky) *= sym;
            u2.at(kx, ky) *= sym;
            phi.at(kx, ky) *= sym;
        }
    }

    const BandTable p11 = convolve(u1, u1);
    const BandTable p12 = convolve(u1, u2);
    const BandTable p22 = convolve(u2, u2);
    const BandTable q1 = convolve(phi, u1);
    const BandTable q2 = convolve(phi, u2);

    BandTable r1x(K), r1y(K), r2(K);
    for (int kx = -K; kx <= K; ++kx) {
        for (int ky = -K; ky <= K; ++ky) {
            if (kx == 0 && ky == 0) continue;
            const Complex ikx(0.0, ku * kx);
            const Complex iky(0.0, ku * ky);
            Complex dx = ikx * p11.at(kx, ky) + iky * p12.at(kx, ky);
            Complex dy = ikx * p12.at(kx, ky) + iky * p22.at(kx, ky);
            // Leray projection, written out.
            const double fx = kx, fy = ky;
            const double ksq = fx * fx + fy * fy;
            const Complex dot = (fx * dx + fy * dy) / ksq;
            dx -= fx * dot;
            dy -= fy * dot;
            r1x.at(kx, ky) = dx;
            r1y.at(kx, ky) = dy;
            r2.at(kx, ky) = ikx * q1.at(kx, ky) + iky * q2.at(kx, ky);
        }
    }

    Nonlinearity out(g);
    out.r1.x = from_table(r1x, g);
    out.r1.y = from_table(r1y, g);
    out.r2 = from_table(r2, g);
    return out;
}

AbsorbingRadii radii_cosine(const TorusGrid& grid, double nu, double kappa,
                            double alpha, int N, double c4, double A,
                            int ksq_int) {
    const double l1 = grid.lambda1();
    const double lam = l1 * ksq_int;
    const double helm = 1.0 + alpha * alpha * lam;
    const double d = dn_symbol(alpha, N, lam);

    AbsorbingRadii out;
    const double gsum = 0.5 * A * A * helm * d; // ||A^{1/2} D^{1/2} g||^2
    out.r1sq = 2.0 * (gsum / lam) / (kappa * kappa * l1);
    out.r2sq = out.r1sq / (nu * nu * l1 * l1);
    const double rsq = out.r1sq > out.r2sq ? out.r1sq : out.r2sq;
    out.r = std::sqrt(rsq);
    out.s2sq = 2.0 * rsq / (nu * nu * l1);
    const double np1 = N + 1.0;
    out.beta = 2.0 / kappa * gsum +
               2.0 * std::pow(c4, 4) * np1 * np1 / (kappa * std::pow(alpha, 4)) *
                   rsq * rsq;
    out.s1sq = 2.0 * out.beta / (kappa * l1);
    out.s = std::sqrt(out.s1sq > out.s2sq ? out.s1sq : out.s2sq);
    return out;
}

} // namespace oracle
} // namespace adm
