#include "adm/diagnostics.hpp"

#include <cmath>
#include <limits>

namespace adm {
namespace {

double nan() { return std::numeric_limits<double>::quiet_NaN(); }

} // namespace

NormDiagnostics norm_diagnostics(const FilteredState& W, const ModelParams& p) {
    const TorusGrid& g = W.grid();
    NormDiagnostics out;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            const double wt = g.hermitian_weight(i, j);
            if (wt == 0.0) continue;
            const double ksq = g.ksq(i, j);
            const double A = 1.0 + p.alpha * p.alpha * ksq;
            const double d = deconvolution_value(p.alpha, p.N, ksq);
            const double rho_sq = std::norm(W.rho.at(i, j));
            const double w_sq =
                std::norm(W.w.x.at(i, j)) + std::norm(W.w.y.at(i, j));
            out.y += wt * A * d * rho_sq;
            out.z += wt * A * d * w_sq;
            out.Y += wt * A * A * d * rho_sq;
            out.Z += wt * A * A * d * w_sq;
        }
    }
    return out;
}

NormDiagnostics norm_diagnostics(const State& V, const ModelParams& p) {
    const TorusGrid& g = V.grid();
    NormDiagnostics out;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            const double wt = g.hermitian_weight(i, j);
            if (wt == 0.0) continue;
            const double ksq = g.ksq(i, j);
            const double A = 1.0 + p.alpha * p.alpha * ksq;
            const double d = deconvolution_value(p.alpha, p.N, ksq);
            const double th_sq = std::norm(V.theta.at(i, j));
            const double v_sq =
                std::norm(V.v.x.at(i, j)) + std::norm(V.v.y.at(i, j));
            out.y += wt * d / A * th_sq;
            out.z += wt * d / A * v_sq;
            out.Y += wt * d * th_sq;
            out.Z += wt * d * v_sq;
        }
    }
    return out;
}

double radius_r1sq(const ModelParams& p) {
    const TorusGrid& g = p.grid();
    const SpectralScalar gfield = p.filtered_forcing();
    double acc = 0.0;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            const double wt = g.hermitian_weight(i, j);
            if (wt == 0.0) continue;
            const double ksq = g.ksq(i, j);
            const double A = 1.0 + p.alpha * p.alpha * ksq;
            const double d = deconvolution_value(p.alpha, p.N, ksq);
            acc += wt * A * d * std::norm(gfield.at(i, j)) / ksq;
        }
    }
    return 2.0 * acc / (p.kappa * p.kappa * g.lambda1());
}

double radius_r2sq(const ModelParams& p) {
    const double l1 = p.grid().lambda1();
    return radius_r1sq(p) / (p.nu * p.nu * l1 * l1);
}

AbsorbingRadii absorbing_radii(const ModelParams& p) {
    const TorusGrid& g = p.grid();
    const double l1 = g.lambda1();

    AbsorbingRadii out;
    out.r1sq = radius_r1sq(p);
    out.r2sq = out.r1sq / (p.nu * p.nu * l1 * l1);
    const double rsq = std::max(out.r1sq, out.r2sq);
    out.r = std::sqrt(rsq);
    out.s2sq = 2.0 * rsq / (p.nu * p.nu * l1);

    // beta = (2/kappa) ||A^{1/2} D^{1/2} g||^2
    //      + (2 c4^4 (N+1)^2 / (kappa alpha^4)) r^4.
    const SpectralScalar gfield = p.filtered_forcing();
    double gnorm = 0.0;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            const double wt = g.hermitian_weight(i, j);
            if (wt == 0.0) continue;
            const double ksq = g.ksq(i, j);
            const double A = 1.0 + p.alpha * p.alpha * ksq;
            const double d = deconvolution_value(p.alpha, p.N, ksq);
            gnorm += wt * A * d * std::norm(gfield.at(i, j));
        }
    }
    const double c4sq = p.c4 * p.c4;
    const double np1 = p.N + 1.0;
    const double a4 = std::pow(p.alpha, 4);
    out.beta = 2.0 / p.kappa * gnorm +
               2.0 * c4sq * c4sq * np1 * np1 / (p.kappa * a4) * rsq * rsq;
    out.s1sq = 2.0 * out.beta / (p.kappa * l1);
    out.s = std::sqrt(std::max(out.s1sq, out.s2sq));
    return out;
}

double bound_R1sq(double t, double y0, const ModelParams& p) {
    const double half = 0.5 * radius_r1sq(p);
    return half + (y0 - half) * std::exp(-p.kappa * p.grid().lambda1() * t);
}

double bound_R2sq(double t, double y0, double z0, const ModelParams& p) {
    const double l1 = p.grid().lambda1();
    const double r1sq = radius_r1sq(p);
    const double r2sq_half = 0.5 * r1sq / (p.nu * p.nu * l1 * l1);
    const double b = y0 - 0.5 * r1sq;
    const double env = std::exp(-p.nu * l1 * t);

    double transfer;
    if (p.nu == p.kappa) {
        transfer = b * t * env / (p.nu * l1);
    } else {
        // e^{-kappa l1 t} - e^{-nu l1 t}; the expm1 form avoids cancellation
        // near nu = kappa, the direct form avoids overflow far from it.
        const double gap = (p.nu - p.kappa) * l1 * t;
        const double diff = std::abs(gap) < 1.0
                                ? env * std::expm1(gap)
                                : std::exp(-p.kappa * l1 * t) - env;
        transfer = b * diff / (p.nu * (p.nu - p.kappa) * l1 * l1);
    }
    return r2sq_half + (z0 - r2sq_half) * env + transfer;
}

std::optional<double> detect_entry_time(const std::vector<double>& times,
                                        const std::vector<double>& values,
                                        double radius) {
    if (times.empty() || times.size() != values.size())
        throw std::invalid_argument("entry detection needs matching non-empty series");
    std::ptrdiff_t last_out = -1;
    for (std::ptrdiff_t i = 0; i < static_cast<std::ptrdiff_t>(values.size()); ++i)
        if (values[i] > radius) last_out = i;
    if (last_out < 0) return times.front();
    if (last_out + 1 == static_cast<std::ptrdiff_t>(values.size())) return std::nullopt;
    return times[last_out + 1];
}

DiagnosticsRow make_row(double t, const State& V, const ModelParams& p,
                        double y0, double z0) {
    const NormDiagnostics nd = norm_diagnostics(V, p);
    DiagnosticsRow row;
    row.t = t;
    row.y = nd.y;
    row.z = nd.z;
    row.Y = nd.Y;
    row.Z = nd.Z;
    row.R1sq = bound_R1sq(t, y0, p);
    row.R2sq = bound_R2sq(t, y0, z0, p);
    row.dn_state_norm = state_dn_norm(V, p);
    row.chi_value = cutoff_chi(row.dn_state_norm, p.rho_tilde);
    row.p_norm = nan();
    row.q_norm = nan();
    row.cone_margin = nan();
    return row;
}

} // namespace adm
