#pragma once

#include <vector>

#include "adm/field.hpp"

namespace adm {

// Diagonal (Fourier multiplier) operators, composable with real powers.
enum class MultiplierKind {
    helmholtz,      // 1 + alpha^2 |k|^2
    deconvolution,  // van Cittert symbol of order N
    lambda,         // |k| (power carries the Sobolev exponent)
};

struct MultiplierFactor {
    MultiplierKind kind;
    double alpha = 0.0;
    int N = 0;
    double power = 1.0;
};

struct MultiplierSpec {
    std::vector<MultiplierFactor> factors;
};

MultiplierSpec helmholtz_multiplier(double alpha, double power = 1.0);
// Inverse Helmholtz smoother (1 + alpha^2 |k|^2)^{-power}.
MultiplierSpec filter_multiplier(double alpha, double power = 1.0);
MultiplierSpec deconvolution_multiplier(double alpha, int N, double power = 1.0);
MultiplierSpec lambda_multiplier(double s);

MultiplierSpec compose(MultiplierSpec a, const MultiplierSpec& b);

// Symbol of the van Cittert deconvolution of order N at physical |k|^2.
// Clamped so that 1 <= value <= min(N+1, 1+alpha^2|k|^2) holds exactly in
// floating point, not just in exact arithmetic; the clamps only ever act
// within a few ulps of the true value.
double deconvolution_value(double alpha, int N, double ksq);

double multiplier_value(const MultiplierSpec& spec, double ksq);

// Applies the multiplier mode by mode. The k = 0 entry is left untouched
// (fields are zero-mean), which keeps negative lambda powers finite.
SpectralScalar apply(const MultiplierSpec& spec, const SpectralScalar& f);
SpectralVector apply(const MultiplierSpec& spec, const SpectralVector& f);
State apply(const MultiplierSpec& spec, const State& s);

} // namespace adm
