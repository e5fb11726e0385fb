#pragma once

#include <string>
#include <vector>

#include "adm/model.hpp"

namespace adm {

struct CheckResult {
    std::string name;
    bool pass = false;
    double observed = 0.0;  // worst value seen, check-specific meaning
    double tolerance = 0.0;
    std::string detail;
};

// Structural properties of the deconvolution family on the given grid:
// symbol bounds (exact), self-adjointness, commutation with derivatives,
// filtered-symbol bound rho_N <= 1 (exact), and the high-frequency limit
// Dhat_N -> N+1. Orders 0..n_max are covered.
std::vector<CheckResult> verify_deconvolution(const TorusGrid& grid, double alpha,
                                              int n_max, uint64_t seed);

// Numerical realization of the identities the a-priori estimates rest on:
// Parseval, transform round-trip, Leray orthogonality, truncation and
// multiplier algebra, vanishing of the advective pairings, equivalence of
// the filtered and unfiltered right-hand sides, cutoff plateau behaviour,
// and agreement of the FFT nonlinearity with the dense-convolution oracle.
std::vector<CheckResult> verify_model_identities(const ModelParams& p,
                                                 uint64_t seed);

bool all_pass(const std::vector<CheckResult>& checks);

} // namespace adm
