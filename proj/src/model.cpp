#include "adm/model.hpp"

#include <cmath>

#include "adm/spectral_ops.hpp"
#include "adm/transform.hpp"

namespace adm {

void ModelParams::validate() const {
    if (!(nu > 0.0) || !std::isfinite(nu))
        throw ConfigError("viscosity must be positive and finite", "params.nu");
    if (!(kappa > 0.0) || !std::isfinite(kappa))
        throw ConfigError("diffusivity must be positive and finite", "params.kappa");
    if (!(alpha > 0.0) || !std::isfinite(alpha))
        throw ConfigError("filter radius must be positive and finite", "params.alpha");
    if (N < 0)
        throw ConfigError("deconvolution order must be non-negative", "params.N");
    if (!(rho_tilde > 0.0) || !std::isfinite(rho_tilde))
        throw ConfigError("cutoff radius must be positive and finite", "params.rho_tilde");
    if (!(gamma > 0.0) || !std::isfinite(gamma))
        throw ConfigError("cone aperture must be positive and finite", "params.gamma");
    if (!(lipschitz_c > 0.0) || !std::isfinite(lipschitz_c))
        throw ConfigError("lipschitz constant must be positive and finite",
                          "params.lipschitz_c");
    if (!(c4 > 0.0) || !std::isfinite(c4))
        throw ConfigError("embedding constant must be positive and finite",
                          "params.c4");
}

double ModelParams::eta_euclidean() const {
    return std::sqrt(2.0 * nu * nu + kappa * kappa);
}

double ModelParams::eta() const {
    return eta_reduction == EtaReduction::min_coefficient ? eta_min()
                                                          : eta_euclidean();
}

SpectralScalar ModelParams::filtered_forcing() const {
    return apply(filter_multiplier(alpha), forcing_f);
}

MultiplierSpec ModelParams::dn_filter() const {
    return compose(deconvolution_multiplier(alpha, N), filter_multiplier(alpha));
}

MultiplierSpec ModelParams::dn(double power) const {
    return deconvolution_multiplier(alpha, N, power);
}

MultiplierSpec ModelParams::helmholtz(double power) const {
    return helmholtz_multiplier(alpha, power);
}

double cutoff_chi(double r, double rho_tilde) {
    const double s = r / rho_tilde;
    if (s <= 1.0) return 1.0;
    if (s >= 2.0) return 0.0;
    return 0.5 * (1.0 + std::cos(TorusGrid::pi() * (s - 1.0)));
}

double state_dn_norm(const State& V, const ModelParams& p) {
    const TorusGrid& g = V.grid();
    double acc = 0.0;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            const double w = g.hermitian_weight(i, j);
            if (w == 0.0) continue;
            const double d = deconvolution_value(p.alpha, p.N, g.ksq(i, j));
            const double e = std::norm(V.v.x.at(i, j)) + std::norm(V.v.y.at(i, j)) +
                             std::norm(V.theta.at(i, j));
            acc += w * d * e;
        }
    }
    return std::sqrt(acc);
}

Nonlinearity eval_nonlinearity(const State& V, const ModelParams& p) {
    const TorusGrid& g = V.grid();
    const MultiplierSpec dng = p.dn_filter();

    const SpectralScalar u1 = apply(dng, V.v.x);
    const SpectralScalar u2 = apply(dng, V.v.y);
    const SpectralScalar phi = apply(dng, V.theta);

    ProductBatch batch(g);
    const RealField U1 = batch.factor(u1);
    const RealField U2 = batch.factor(u2);
    const RealField PHI = batch.factor(phi);

    double umax_sq = 0.0;
    for (std::size_t n = 0; n < U1.size(); ++n) {
        const double m = U1.data()[n] * U1.data()[n] + U2.data()[n] * U2.data()[n];
        if (m > umax_sq) umax_sq = m;
    }

    const SpectralScalar p11 = batch.analyze(pointwise_product(U1, U1));
    const SpectralScalar p12 = batch.analyze(pointwise_product(U1, U2));
    const SpectralScalar p22 = batch.analyze(pointwise_product(U2, U2));
    const SpectralScalar q1 = batch.analyze(pointwise_product(PHI, U1));
    const SpectralScalar q2 = batch.analyze(pointwise_product(PHI, U2));

    Nonlinearity out(g);
    out.r1 = leray_project(SpectralVector(derivative(p11, 0) + derivative(p12, 1),
                                          derivative(p12, 0) + derivative(p22, 1)));
    out.r2 = derivative(q1, 0) + derivative(q2, 1);
    out.advect_max = std::sqrt(umax_sq);
    return out;
}

namespace {

SpectralVector buoyancy(const SpectralScalar& theta) {
    SpectralVector b(theta.grid());
    b.y = theta;
    return leray_project(b);
}

void add_diffusion(State& rate, const State& V, const ModelParams& p) {
    const TorusGrid& g = V.grid();
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            const double ksq = g.ksq(i, j);
            rate.v.x.at(i, j) -= p.nu * ksq * V.v.x.at(i, j);
            rate.v.y.at(i, j) -= p.nu * ksq * V.v.y.at(i, j);
            rate.theta.at(i, j) -= p.kappa * ksq * V.theta.at(i, j);
        }
    }
}

} // namespace

RhsResult rhs_full(const State& V, const ModelParams& p) {
    const TorusGrid& g = V.grid();
    Nonlinearity nl = eval_nonlinearity(V, p);

    RhsResult out(g);
    out.advect_max = nl.advect_max;
    out.rate.v = buoyancy(V.theta) - nl.r1;
    out.rate.theta = p.forcing_f - nl.r2;
    add_diffusion(out.rate, V, p);
    return out;
}

RhsResult prepared_rhs(const State& V, const ModelParams& p) {
    const TorusGrid& g = V.grid();
    const double chi = cutoff_chi(state_dn_norm(V, p), p.rho_tilde);

    RhsResult out(g);
    out.chi = chi;
    if (chi == 0.0) {
        add_diffusion(out.rate, V, p);
        return out;
    }
    if (chi == 1.0) {
        out = rhs_full(V, p);
        out.chi = 1.0;
        return out;
    }

    Nonlinearity nl = eval_nonlinearity(V, p);
    out.advect_max = nl.advect_max;
    out.rate.v = chi * (buoyancy(V.theta) - nl.r1);
    out.rate.theta = chi * (p.forcing_f - nl.r2);
    add_diffusion(out.rate, V, p);
    return out;
}

FilteredRhsResult rhs_filtered(const FilteredState& W, const ModelParams& p) {
    const TorusGrid& g = W.grid();
    const MultiplierSpec dn = p.dn();
    const MultiplierSpec filt = filter_multiplier(p.alpha);

    // The advective core matches the unfiltered system: D_N w = D_N G v.
    const SpectralScalar u1 = apply(dn, W.w.x);
    const SpectralScalar u2 = apply(dn, W.w.y);
    const SpectralScalar phi = apply(dn, W.rho);

    ProductBatch batch(g);
    const RealField U1 = batch.factor(u1);
    const RealField U2 = batch.factor(u2);
    const RealField PHI = batch.factor(phi);

    const SpectralScalar p11 = batch.analyze(pointwise_product(U1, U1));
    const SpectralScalar p12 = batch.analyze(pointwise_product(U1, U2));
    const SpectralScalar p22 = batch.analyze(pointwise_product(U2, U2));
    const SpectralScalar q1 = batch.analyze(pointwise_product(PHI, U1));
    const SpectralScalar q2 = batch.analyze(pointwise_product(PHI, U2));

    const SpectralVector r1 =
        leray_project(SpectralVector(derivative(p11, 0) + derivative(p12, 1),
                                     derivative(p12, 0) + derivative(p22, 1)));
    const SpectralScalar r2 = derivative(q1, 0) + derivative(q2, 1);

    FilteredRhsResult out(g);
    out.rate.w = buoyancy(W.rho) - apply(filt, r1);
    out.rate.rho = apply(filt, p.forcing_f) - apply(filt, r2);
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            const double ksq = g.ksq(i, j);
            out.rate.w.x.at(i, j) -= p.nu * ksq * W.w.x.at(i, j);
            out.rate.w.y.at(i, j) -= p.nu * ksq * W.w.y.at(i, j);
            out.rate.rho.at(i, j) -= p.kappa * ksq * W.rho.at(i, j);
        }
    }
    return out;
}

FilteredState filter_state(const State& V, const ModelParams& p) {
    const MultiplierSpec filt = filter_multiplier(p.alpha);
    FilteredState out(V.grid());
    out.w = apply(filt, V.v);
    out.rho = apply(filt, V.theta);
    return out;
}

State unfilter_state(const FilteredState& W, const ModelParams& p) {
    const MultiplierSpec helm = helmholtz_multiplier(p.alpha);
    State out(W.grid());
    out.v = apply(helm, W.w);
    out.theta = apply(helm, W.rho);
    return out;
}

double lipschitz_constant(const ModelParams& p, const TorusGrid& grid) {
    const double np1 = p.N + 1.0;
    return p.lipschitz_c / grid.lambda1() * np1 * std::sqrt(np1) * p.rho_tilde;
}

} // namespace adm
