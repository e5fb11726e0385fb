#pragma once

#include <optional>
#include <vector>

#include "adm/integrator.hpp"
#include "adm/model.hpp"

namespace adm {

struct EigenvalueEntry {
    double lambda = 0.0;  // physical |k|^2
    int multiplicity = 0; // lattice points sharing it
};

// Distinct Laplacian eigenvalues carried by the dealiased band, ascending,
// up to lambda_max.
std::vector<EigenvalueEntry> enumerate_eigenvalues(const TorusGrid& grid,
                                                   double lambda_max);

// Spectral cone between consecutive eigenvalues lambda_n < lambda_{n+1}.
struct ConeSpec {
    double lambda_n = 0.0;
    double lambda_np1 = 0.0;
    int modes_per_family = 0; // lattice points with 0 < |k|^2 <= lambda_n
    int mode_count = 0;       // three field components
    double gamma = 1.0;
};

// First consecutive pair whose gap strictly exceeds
// L_lip (gamma+1)^2 / (eta gamma); throws when the band holds none.
ConeSpec find_min_gap_cutoff(const TorusGrid& grid, double L_lip, double gamma,
                             double eta);

// beta_n = lambda_{n+1} eta - L_lip (1/gamma + 1); squeezing is meaningful
// when this is positive.
double beta_n(const ConeSpec& cone, double L_lip, double eta);

// Spectral projections onto modes with |k|^2 <= lambda_n and the remainder;
// exact complements of one another.
State project_low(const State& V, double lambda_n);
State project_high(const State& V, double lambda_n);

struct ConeObservation {
    double p_norm = 0.0;
    double q_norm = 0.0;
    double margin = 0.0; // gamma * p_norm - q_norm
};

ConeObservation cone_test(const State& a, const State& b, const ModelParams& p,
                          const ConeSpec& cone);

// Random state with prescribed ||D_N^{1/2} V||.
State random_state_dn(const TorusGrid& grid, const ModelParams& p, uint64_t seed,
                      double slope, double max_ksq, double dn_norm);

// Empirical Lipschitz ratio of the advective terms over the cutoff ball:
// max ||F(V1)-F(V2)|| / ||D_N^{1/2}(V1-V2)|| over sampled pairs, mixing
// independent draws and nearby perturbations.
struct CalibrationResult {
    double max_ratio = 0.0;
    int samples = 0;
};

CalibrationResult calibrate_lipschitz(const ModelParams& p, int n_samples,
                                      uint64_t seed);

struct PairExperimentOptions {
    double t_end = 1.0;
    double dt = 1e-3;
    long sample_stride = 5;
    Scheme scheme = Scheme::if_rk2;
    double beta_n = 0.0;             // decay rate the envelope is tested against
    double invariance_tol = 1e-8;    // absolute slack on post-entry margins
    double decay_tol = 1e-2;         // relative slack on the decay envelope
};

// Co-evolves two prepared-system trajectories and tests the cone property:
// once the difference enters the cone it stays (invariance), and while
// outside, ||q|| sits under the exponential envelope restarted per excursion.
struct PairExperimentResult {
    std::vector<double> times;
    std::vector<double> p_norms;
    std::vector<double> q_norms;
    std::vector<double> margins;
    bool invariance_ok = false;
    bool decay_ok = false;
    std::optional<double> entry_time;
    std::optional<double> fitted_exponent;
    double min_margin_after_entry = 0.0;
    double beta_n_used = 0.0;
};

PairExperimentResult run_pair_experiment(const State& a0, const State& b0,
                                         const ModelParams& p, const ConeSpec& cone,
                                         const PairExperimentOptions& opt);

} // namespace adm
