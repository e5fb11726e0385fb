#pragma once

#include "adm/field.hpp"
#include "adm/operators.hpp"

namespace adm {

enum class EtaReduction { min_coefficient, euclidean };

// Physical and regularization parameters of the deconvolved Boussinesq
// system. The forcing f acts on the unfiltered temperature equation; the
// filtered equation sees g = G_alpha f.
struct ModelParams {
    double nu = 1.0;
    double kappa = 1.0;
    double alpha = 1.0;
    int N = 0;
    double rho_tilde = 1.0;   // cutoff radius for the prepared system
    double gamma = 1.0;       // cone aperture
    double lipschitz_c = 1.0; // constant in the a-priori Lipschitz formula
    double c4 = 1.0;          // embedding constant in the higher-norm budget
    EtaReduction eta_reduction = EtaReduction::min_coefficient;
    SpectralScalar forcing_f;

    explicit ModelParams(const TorusGrid& grid) : forcing_f(grid) {}

    const TorusGrid& grid() const { return forcing_f.grid(); }
    void validate() const;

    double eta_min() const { return nu < kappa ? nu : kappa; }
    double eta_euclidean() const;
    double eta() const;

    SpectralScalar filtered_forcing() const; // g = G_alpha f
    MultiplierSpec dn_filter() const;        // D_N G_alpha
    MultiplierSpec dn(double power = 1.0) const;
    MultiplierSpec helmholtz(double power = 1.0) const;
};

// C^1 bump: 1 on [0, rho_tilde], cosine ramp on (rho_tilde, 2 rho_tilde),
// 0 beyond.
double cutoff_chi(double r, double rho_tilde);

// || D_N^{1/2} V || over all three components.
double state_dn_norm(const State& V, const ModelParams& p);

// Deconvolved advective terms, shared by every right-hand side:
//   r1 = P_sigma div(u (x) u),  r2 = div(phi u),  u = D_N G v, phi = D_N G theta.
// advect_max is the pointwise sup of |u|, the CFL velocity.
struct Nonlinearity {
    SpectralVector r1;
    SpectralScalar r2;
    double advect_max = 0.0;

    explicit Nonlinearity(const TorusGrid& grid) : r1(grid), r2(grid) {}
};

Nonlinearity eval_nonlinearity(const State& V, const ModelParams& p);

struct RhsResult {
    State rate;
    double advect_max = 0.0; // 0 when the advective terms were not evaluated
    double chi = 1.0;

    explicit RhsResult(const TorusGrid& grid) : rate(grid) {}
};

// d/dt (v, theta) = (nu Lap v - r1 + P_sigma(theta e2), kap Lap theta - r2 + f).
RhsResult rhs_full(const State& V, const ModelParams& p);

// Cutoff system: the dissipative part is untouched, everything else is
// scaled by chi(||D_N^{1/2} V||). Equals rhs_full while the state sits in
// the chi = 1 plateau; pure diffusion once chi = 0.
RhsResult prepared_rhs(const State& V, const ModelParams& p);

// Filtered variables (w, rho) = G_alpha (v, theta); equals G_alpha applied
// to rhs_full componentwise.
struct FilteredRhsResult {
    FilteredState rate;
    explicit FilteredRhsResult(const TorusGrid& grid) : rate(grid) {}
};

FilteredRhsResult rhs_filtered(const FilteredState& W, const ModelParams& p);

FilteredState filter_state(const State& V, const ModelParams& p);
State unfilter_state(const FilteredState& W, const ModelParams& p);

// A-priori Lipschitz budget of the truncated nonlinearity:
//   L = c * lambda1^{-1} * (N+1)^{3/2} * rho_tilde.
double lipschitz_constant(const ModelParams& p, const TorusGrid& grid);

} // namespace adm
