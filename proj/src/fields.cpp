#include "adm/fields.hpp"

#include <cmath>

#include "adm/rng.hpp"
#include "adm/spectral_ops.hpp"
#include "adm/transform.hpp"

namespace adm {

SpectralScalar from_function(const TorusGrid& grid,
                             const std::function<double(double, double)>& f) {
    RealField samples(grid);
    for (int i = 0; i < grid.M(); ++i)
        for (int j = 0; j < grid.M(); ++j)
            samples.at(i, j) = f(grid.x(i), grid.x(j));
    SpectralScalar out = transform_forward(samples);
    return out;
}

SpectralScalar cosine_mode(const TorusGrid& grid, int kx, int ky, double amplitude) {
    SpectralScalar out(grid);
    out.set_coeff(kx, ky, Complex(0.5 * amplitude, 0.0));
    return out;
}

SpectralScalar sine_mode(const TorusGrid& grid, int kx, int ky, double amplitude) {
    SpectralScalar out(grid);
    out.set_coeff(kx, ky, Complex(0.0, -0.5 * amplitude));
    return out;
}

SpectralVector taylor_green(const TorusGrid& grid, int m, double amplitude) {
    const double ku = grid.k_unit();
    SpectralVector u(grid);
    u.x = from_function(grid, [=](double x1, double x2) {
        return amplitude * std::sin(m * ku * x1) * std::cos(m * ku * x2);
    });
    u.y = from_function(grid, [=](double x1, double x2) {
        return -amplitude * std::cos(m * ku * x1) * std::sin(m * ku * x2);
    });
    return u;
}

namespace {

SpectralScalar random_band_raw(const TorusGrid& g, Rng& rng, double slope,
                               double max_ksq) {
    SpectralScalar out(g);
    const int M = g.M();
    for (int i = 0; i < M; ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            if (j == 0 && i > M / 2) continue;  // mirror of an owned entry
            if (!g.in_band(i, j)) continue;
            const double ksq = g.ksq(i, j);
            if (ksq > max_ksq) continue;
            const double amp = std::pow(std::sqrt(ksq), slope);
            const Complex z(rng.next_gaussian(), rng.next_gaussian());
            out.at(i, j) = amp * z;
            if (j == 0) out.at(g.conj_row(i), 0) = std::conj(amp * z);
        }
    }
    return out;
}

} // namespace

SpectralScalar random_scalar(const TorusGrid& grid, uint64_t seed,
                             double slope, double max_ksq, double norm) {
    Rng rng(seed);
    SpectralScalar out = random_band_raw(grid, rng, slope, max_ksq);
    const double n0 = sobolev_norm(out, 0.0);
    if (n0 == 0.0)
        throw ConfigError("random field has no modes in the requested band");
    out *= norm / n0;
    return out;
}

SpectralVector random_solenoidal(const TorusGrid& grid, uint64_t seed,
                                 double slope, double max_ksq, double norm) {
    Rng rng(seed);
    SpectralVector u(grid);
    u.x = random_band_raw(grid, rng, slope, max_ksq);
    u.y = random_band_raw(grid, rng, slope, max_ksq);
    u = leray_project(u);
    const double n0 = sobolev_norm(u, 0.0);
    if (n0 == 0.0)
        throw ConfigError("random field has no modes in the requested band");
    u *= norm / n0;
    return u;
}

} // namespace adm
