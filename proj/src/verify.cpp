#include "adm/verify.hpp"

#include <algorithm>
#include <cmath>

#include "adm/diagnostics.hpp"
#include "adm/fields.hpp"
#include "adm/oracle.hpp"
#include "adm/spectral_ops.hpp"
#include "adm/transform.hpp"

namespace adm {
namespace {

double max_abs(const SpectralScalar& f) {
    double m = 0.0;
    const std::size_t n = f.grid().spectral_size();
    for (std::size_t i = 0; i < n; ++i) m = std::max(m, std::abs(f.data()[i]));
    return m;
}

double max_abs_diff(const SpectralScalar& a, const SpectralScalar& b) {
    double m = 0.0;
    const std::size_t n = a.grid().spectral_size();
    for (std::size_t i = 0; i < n; ++i)
        m = std::max(m, std::abs(a.data()[i] - b.data()[i]));
    return m;
}

double rel_diff(const SpectralScalar& a, const SpectralScalar& b) {
    const double scale = std::max({max_abs(a), max_abs(b), 1e-300});
    return max_abs_diff(a, b) / scale;
}

double rel_diff(const State& a, const State& b) {
    return std::max({rel_diff(a.v.x, b.v.x), rel_diff(a.v.y, b.v.y),
                     rel_diff(a.theta, b.theta)});
}

CheckResult make_check(std::string name, double observed, double tol,
                       std::string detail = {}) {
    CheckResult c;
    c.name = std::move(name);
    c.observed = observed;
    c.tolerance = tol;
    c.pass = observed <= tol;
    c.detail = std::move(detail);
    return c;
}

} // namespace

std::vector<CheckResult> verify_deconvolution(const TorusGrid& grid, double alpha,
                                              int n_max, uint64_t seed) {
    std::vector<CheckResult> out;

    double below_one = 0.0;       // max(1 - Dhat)
    double above_order = 0.0;     // max(Dhat - (N+1))
    double above_helmholtz = 0.0; // max(Dhat - Ahat)
    double vs_oracle = 0.0;
    double filtered_excess = 0.0; // max(Dhat/Ahat - 1)
    for (int N = 0; N <= n_max; ++N) {
        for (int i = 0; i < grid.rows(); ++i) {
            for (int j = 0; j < grid.cols(); ++j) {
                const double ksq = grid.ksq(i, j);
                const double A = 1.0 + alpha * alpha * ksq;
                const double d = deconvolution_value(alpha, N, ksq);
                below_one = std::max(below_one, 1.0 - d);
                above_order = std::max(above_order, d - (N + 1.0));
                above_helmholtz = std::max(above_helmholtz, d - A);
                vs_oracle = std::max(
                    vs_oracle,
                    std::abs(d - oracle::dn_symbol(alpha, N, ksq)) / (N + 1.0));
                filtered_excess = std::max(filtered_excess, d / A - 1.0);
            }
        }
    }
    out.push_back(make_check("dn_lower_bound", below_one, 0.0,
                             "max(1 - Dhat) over lattice and orders"));
    out.push_back(make_check("dn_upper_bound_order", above_order, 0.0,
                             "max(Dhat - (N+1))"));
    out.push_back(make_check("dn_upper_bound_helmholtz", above_helmholtz, 0.0,
                             "max(Dhat - (1 + alpha^2 |k|^2))"));
    out.push_back(make_check("dn_symbol_oracle", vs_oracle, 1e-12,
                             "clamped Horner vs product closed form"));
    out.push_back(make_check("filtered_symbol_bound", filtered_excess, 0.0,
                             "max(Dhat/Ahat - 1), smoothing never amplifies"));

    double high_freq = 0.0;
    for (int N = 0; N <= n_max; ++N) {
        const double ksq = 1e4 / (alpha * alpha);
        const double d = deconvolution_value(alpha, N, ksq);
        high_freq = std::max(high_freq, std::abs(d / (N + 1.0) - 1.0));
    }
    out.push_back(make_check("dn_high_frequency", high_freq, 1e-2,
                             "Dhat/(N+1) at alpha^2 |k|^2 = 1e4"));

    const double max_ksq = grid.max_band_ksq();
    const SpectralScalar u = random_scalar(grid, seed, -1.0, max_ksq, 1.0);
    const SpectralScalar v = random_scalar(grid, seed + 1, -1.0, max_ksq, 1.0);
    double adjoint = 0.0;
    double commute = 0.0;
    for (int N = 0; N <= n_max; ++N) {
        const MultiplierSpec dn = deconvolution_multiplier(alpha, N);
        adjoint = std::max(adjoint, std::abs(inner_product(apply(dn, u), v, 0.0) -
                                             inner_product(u, apply(dn, v), 0.0)));
        commute = std::max(commute,
                           rel_diff(apply(dn, derivative(u, 0)),
                                    derivative(apply(dn, u), 0)));
    }
    out.push_back(make_check("dn_self_adjoint", adjoint, 1e-12,
                             "|<Du,v> - <u,Dv>| on unit fields"));
    out.push_back(make_check("dn_commutes_derivative", commute, 1e-12,
                             "D d1 u vs d1 D u, relative"));
    return out;
}

std::vector<CheckResult> verify_model_identities(const ModelParams& p,
                                                 uint64_t seed) {
    std::vector<CheckResult> out;
    const TorusGrid& g = p.grid();
    const double max_ksq = g.max_band_ksq();

    // Parseval and round-trip.
    {
        const SpectralScalar f = random_scalar(g, seed, -1.0, max_ksq, 1.0);
        const RealField r = transform_inverse(f);
        double mean_sq = 0.0;
        for (std::size_t n = 0; n < r.size(); ++n)
            mean_sq += r.data()[n] * r.data()[n];
        mean_sq /= static_cast<double>(r.size());
        const double l2sq = std::pow(sobolev_norm(f, 0.0), 2);
        out.push_back(make_check("parseval", std::abs(mean_sq - l2sq), 1e-12,
                                 "coefficient energy vs sample mean square"));
        out.push_back(make_check("transform_roundtrip",
                                 rel_diff(transform_forward(r), f), 1e-12));
    }

    // Leray projection.
    {
        SpectralVector u(g);
        u.x = random_scalar(g, seed + 10, -1.0, max_ksq, 1.0);
        u.y = random_scalar(g, seed + 11, -1.0, max_ksq, 1.0);
        const SpectralVector pu = leray_project(u);
        const SpectralVector ppu = leray_project(pu);
        out.push_back(make_check("leray_idempotent",
                                 std::max(rel_diff(pu.x, ppu.x), rel_diff(pu.y, ppu.y)),
                                 1e-14));
        out.push_back(make_check("leray_divergence_free",
                                 sobolev_norm(divergence(pu), 0.0), 1e-12));
        const SpectralVector grad_part = u - pu;
        out.push_back(make_check("leray_orthogonal",
                                 std::abs(inner_product(grad_part, pu, 0.0)), 1e-12));
    }

    // Truncation and multiplier algebra.
    {
        const SpectralScalar f = random_scalar(g, seed + 20, -1.0, max_ksq, 1.0);
        const SpectralScalar t12 = truncate_modes(truncate_modes(f, 9.0), 4.0);
        const SpectralScalar tmin = truncate_modes(f, 4.0);
        out.push_back(make_check("truncation_composition", max_abs_diff(t12, tmin),
                                 0.0, "nested cutoffs equal the tighter one"));

        const MultiplierSpec half = p.dn(0.5);
        const SpectralScalar two_halves = apply(half, apply(half, f));
        out.push_back(make_check("multiplier_power_composition",
                                 rel_diff(two_halves, apply(p.dn(1.0), f)), 1e-12,
                                 "D^{1/2} D^{1/2} vs D"));
        const SpectralScalar inv_then = apply(p.dn(-1.0), apply(p.dn(1.0), f));
        out.push_back(make_check("multiplier_inverse", rel_diff(inv_then, f), 1e-12));

        const MultiplierSpec dg = compose(p.dn(), filter_multiplier(p.alpha));
        const MultiplierSpec gd = compose(filter_multiplier(p.alpha), p.dn());
        double reorder = 0.0;
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.cols(); ++j) {
                const double ksq = g.ksq(i, j);
                reorder = std::max(reorder, std::abs(multiplier_value(dg, ksq) -
                                                     multiplier_value(gd, ksq)));
            }
        out.push_back(make_check("multiplier_reorder_exact", reorder, 0.0,
                                 "composite symbol is order-independent"));
    }

    // Advective pairings that the energy estimates kill exactly.
    {
        State V(g);
        V.v = random_solenoidal(g, seed + 30, -1.0, max_ksq, 1.0);
        V.theta = random_scalar(g, seed + 31, -1.0, max_ksq, 1.0);
        const Nonlinearity nl = eval_nonlinearity(V, p);
        const MultiplierSpec dng = p.dn_filter();
        const SpectralVector u = apply(dng, V.v);
        const SpectralScalar phi = apply(dng, V.theta);

        const double nu_norm = sobolev_norm(u, 0.0);
        const double energy =
            std::abs(inner_product(nl.r1, u, 0.0)) /
            std::max(1e-300, sobolev_norm(nl.r1, 0.0) * nu_norm);
        out.push_back(make_check("advective_cancellation_energy", energy, 1e-10,
                                 "<P div(u x u), u> normalized"));

        const SpectralVector Au = apply(p.helmholtz(), u);
        const double enstrophy =
            std::abs(inner_product(nl.r1, Au, 0.0)) /
            std::max(1e-300, sobolev_norm(nl.r1, 0.0) * sobolev_norm(Au, 0.0));
        out.push_back(make_check("advective_cancellation_enstrophy", enstrophy,
                                 1e-10, "<P div(u x u), A u> normalized, 2D"));

        const double transport =
            std::abs(inner_product(nl.r2, phi, 0.0)) /
            std::max(1e-300, sobolev_norm(nl.r2, 0.0) * sobolev_norm(phi, 0.0));
        out.push_back(make_check("transport_cancellation", transport, 1e-10,
                                 "<div(phi u), phi> normalized"));

        // Filtered and unfiltered systems are the same dynamics.
        const RhsResult full = rhs_full(V, p);
        const FilteredRhsResult filt = rhs_filtered(filter_state(V, p), p);
        const FilteredState expected = filter_state(full.rate, p);
        const double consistency = std::max(
            {rel_diff(expected.w.x, filt.rate.w.x),
             rel_diff(expected.w.y, filt.rate.w.y),
             rel_diff(expected.rho, filt.rate.rho)});
        out.push_back(make_check("filtered_rhs_consistency", consistency, 1e-12,
                                 "G rhs_full vs rhs_filtered on G state"));

        // Diagnostics computed from either representation agree.
        const NormDiagnostics a = norm_diagnostics(V, p);
        const NormDiagnostics b = norm_diagnostics(filter_state(V, p), p);
        const double diag = std::max({std::abs(a.y - b.y), std::abs(a.z - b.z),
                                      std::abs(a.Y - b.Y), std::abs(a.Z - b.Z)}) /
                            std::max({a.y, a.Y, a.z, a.Z, 1e-300});
        out.push_back(make_check("diagnostics_consistency", diag, 1e-12));
    }

    // Cutoff behaviour of the prepared system.
    {
        State inside(g);
        inside.v = random_solenoidal(g, seed + 40, -1.0, max_ksq, 1.0);
        inside.theta = random_scalar(g, seed + 41, -1.0, max_ksq, 1.0);
        const double n_in = state_dn_norm(inside, p);
        inside *= 0.5 * p.rho_tilde / n_in;
        const RhsResult prep = prepared_rhs(inside, p);
        const RhsResult full = rhs_full(inside, p);
        out.push_back(make_check("prepared_plateau_exact",
                                 rel_diff(prep.rate, full.rate), 0.0,
                                 "chi = 1 ball reproduces the full system"));

        State outside = inside;
        outside *= 6.0; // dn norm 3 rho_tilde
        const RhsResult far = prepared_rhs(outside, p);
        double excess = 0.0;
        for (int i = 0; i < g.rows(); ++i)
            for (int j = 0; j < g.cols(); ++j) {
                if (i == 0 && j == 0) continue;
                const double ksq = g.ksq(i, j);
                excess = std::max(
                    {excess,
                     std::abs(far.rate.v.x.at(i, j) + p.nu * ksq * outside.v.x.at(i, j)),
                     std::abs(far.rate.v.y.at(i, j) + p.nu * ksq * outside.v.y.at(i, j)),
                     std::abs(far.rate.theta.at(i, j) +
                              p.kappa * ksq * outside.theta.at(i, j))});
            }
        out.push_back(make_check("prepared_outside_diffusion", excess, 0.0,
                                 "chi = 0 leaves pure diffusion"));

        double profile = 0.0;
        profile = std::max(profile, std::abs(cutoff_chi(0.5 * p.rho_tilde, p.rho_tilde) - 1.0));
        profile = std::max(profile, std::abs(cutoff_chi(1.5 * p.rho_tilde, p.rho_tilde) - 0.5));
        profile = std::max(profile, std::abs(cutoff_chi(3.0 * p.rho_tilde, p.rho_tilde)));
        out.push_back(make_check("cutoff_profile", profile, 1e-15,
                                 "plateau, midpoint, tail values"));
    }

    // FFT pipeline against the dense convolution oracle on small grids.
    {
        double worst = 0.0;
        for (int M : {8, 16}) {
            const TorusGrid small(g.L(), M);
            ModelParams ps(small);
            ps.nu = p.nu;
            ps.kappa = p.kappa;
            ps.alpha = p.alpha;
            ps.N = p.N;
            State V(small);
            V.v = random_solenoidal(small, seed + 50 + M, -1.0,
                                    small.max_band_ksq(), 1.0);
            V.theta = random_scalar(small, seed + 51 + M, -1.0,
                                    small.max_band_ksq(), 1.0);
            const Nonlinearity fast = eval_nonlinearity(V, ps);
            const Nonlinearity slow = oracle::direct_nonlinearity(V, ps);
            worst = std::max({worst, rel_diff(fast.r1.x, slow.r1.x),
                              rel_diff(fast.r1.y, slow.r1.y),
                              rel_diff(fast.r2, slow.r2)});

            const SpectralScalar prod = dealias_product(V.theta, V.theta);
            const SpectralScalar ref = oracle::direct_product(V.theta, V.theta);
            worst = std::max(worst, rel_diff(prod, ref));
        }
        out.push_back(make_check("nonlinearity_oracle", worst, 1e-11,
                                 "FFT path vs dense convolution, 8^2 and 16^2"));
    }

    // Seed stability.
    {
        const SpectralScalar f1 = random_scalar(g, seed + 60, -1.0, max_ksq, 1.0);
        const SpectralScalar f2 = random_scalar(g, seed + 60, -1.0, max_ksq, 1.0);
        out.push_back(make_check("random_determinism", max_abs_diff(f1, f2), 0.0));
    }

    return out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
    for (const CheckResult& c : checks)
        if (!c.pass) return false;
    return true;
}

} // namespace adm
