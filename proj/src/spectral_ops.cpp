#include "adm/spectral_ops.hpp"

#include <cmath>

namespace adm {

SpectralScalar derivative(const SpectralScalar& f, int axis) {
    assert(axis == 0 || axis == 1);
    const TorusGrid& g = f.grid();
    const double ku = g.k_unit();
    SpectralScalar out(g);
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            const double k = ku * (axis == 0 ? g.kx_int(i) : j);
            const Complex c = f.at(i, j);
            out.at(i, j) = Complex(-k * c.imag(), k * c.real());
        }
    }
    return out;
}

SpectralScalar divergence(const SpectralVector& u) {
    return derivative(u.x, 0) + derivative(u.y, 1);
}

namespace {

inline double symbol_pow(double ksq, double s) {
    return s == 0.0 ? 1.0 : std::pow(ksq, s);
}

} // namespace

double sobolev_norm(const SpectralScalar& f, double s) {
    const TorusGrid& g = f.grid();
    double acc = 0.0;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            const double w = g.hermitian_weight(i, j);
            if (w == 0.0) continue;
            acc += w * symbol_pow(g.ksq(i, j), s) * std::norm(f.at(i, j));
        }
    }
    return std::sqrt(acc);
}

double sobolev_norm(const SpectralVector& f, double s) {
    const double nx = sobolev_norm(f.x, s);
    const double ny = sobolev_norm(f.y, s);
    return std::sqrt(nx * nx + ny * ny);
}

double inner_product(const SpectralScalar& a, const SpectralScalar& b, double s) {
    assert(a.grid() == b.grid());
    const TorusGrid& g = a.grid();
    double acc = 0.0;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            const double w = g.hermitian_weight(i, j);
            if (w == 0.0) continue;
            const Complex ca = a.at(i, j);
            const Complex cb = b.at(i, j);
            const double re = ca.real() * cb.real() + ca.imag() * cb.imag();
            acc += w * symbol_pow(g.ksq(i, j), s) * re;
        }
    }
    return acc;
}

double inner_product(const SpectralVector& a, const SpectralVector& b, double s) {
    return inner_product(a.x, b.x, s) + inner_product(a.y, b.y, s);
}

SpectralVector leray_project(const SpectralVector& u) {
    const TorusGrid& g = u.grid();
    SpectralVector out = u;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            const double kx = g.kx_int(i);
            const double ky = j;
            const double ksq = kx * kx + ky * ky;
            const Complex dot = kx * out.x.at(i, j) + ky * out.y.at(i, j);
            out.x.at(i, j) -= kx * dot / ksq;
            out.y.at(i, j) -= ky * dot / ksq;
        }
    }
    return out;
}

SpectralScalar truncate_modes(const SpectralScalar& f, double ksq_cutoff) {
    const TorusGrid& g = f.grid();
    SpectralScalar out = f;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (g.ksq(i, j) > ksq_cutoff) out.at(i, j) = Complex(0.0, 0.0);
    return out;
}

SpectralVector truncate_modes(const SpectralVector& f, double ksq_cutoff) {
    return SpectralVector(truncate_modes(f.x, ksq_cutoff),
                          truncate_modes(f.y, ksq_cutoff));
}

} // namespace adm
