#pragma once

#include <optional>
#include <vector>

#include "adm/model.hpp"

namespace adm {

// Lyapunov-type norms of the filtered state:
//   y = ||A^{1/2} D_N^{1/2} rho||^2,  Y = ||A D_N^{1/2} rho||^2,
//   z, Z the velocity analogues.
struct NormDiagnostics {
    double y = 0.0;
    double z = 0.0;
    double Y = 0.0;
    double Z = 0.0;
};

NormDiagnostics norm_diagnostics(const FilteredState& W, const ModelParams& p);
// Same quantities evaluated directly from the unfiltered state via the
// combined symbols D/A and D; agrees with the filtered route to roundoff.
NormDiagnostics norm_diagnostics(const State& V, const ModelParams& p);

// Forcing-determined absorbing radii. t_r and t_s are left empty here and
// detected from a trajectory by the runner.
struct AbsorbingRadii {
    double r1sq = 0.0;
    double r2sq = 0.0;
    double s1sq = 0.0;
    double s2sq = 0.0;
    double beta = 0.0;
    double r = 0.0;
    double s = 0.0;
    std::optional<double> t_r;
    std::optional<double> t_s;
};

// r1^2 = (2 / kappa^2 lambda1) sum |k|^{-2} (1+alpha^2|k|^2) Dhat_N |g_k|^2
// with g the filtered forcing.
double radius_r1sq(const ModelParams& p);
double radius_r2sq(const ModelParams& p); // r1^2 / (nu^2 lambda1^2)

AbsorbingRadii absorbing_radii(const ModelParams& p);

// Gronwall envelopes seeded by the initial norms.
double bound_R1sq(double t, double y0, const ModelParams& p);
double bound_R2sq(double t, double y0, double z0, const ModelParams& p);

// First sample time after which value <= radius holds for every subsequent
// sample; empty when the last sample still exceeds the radius.
std::optional<double> detect_entry_time(const std::vector<double>& times,
                                        const std::vector<double>& values,
                                        double radius);

// One record of the monitored quantities; quiet NaN marks fields that the
// producing experiment does not fill (rendered as empty CSV cells).
struct DiagnosticsRow {
    double t = 0.0;
    double y = 0.0;
    double z = 0.0;
    double Y = 0.0;
    double Z = 0.0;
    double R1sq = 0.0;
    double R2sq = 0.0;
    double chi_value = 0.0;
    double dn_state_norm = 0.0;
    double p_norm = 0.0;
    double q_norm = 0.0;
    double cone_margin = 0.0;
};

// Row with envelope values seeded at (y0, z0); cone fields are NaN.
DiagnosticsRow make_row(double t, const State& V, const ModelParams& p,
                        double y0, double z0);

} // namespace adm
