#pragma once

#include "adm/diagnostics.hpp"
#include "adm/model.hpp"

namespace adm {

// Slow reference implementations, kept deliberately independent of the FFT
// pipeline: dense convolutions over the logical lattice and closed-form
// symbol/radii expressions. Unit tests pin the fast paths against these.
namespace oracle {

// Deconvolution symbol in product form (1+a)(1 - (a/(1+a))^{N+1}); same
// mathematical object as the clamped Horner evaluator, different arithmetic.
double dn_symbol(double alpha, int N, double ksq);

// Direct convolution of band-truncated inputs, restricted to the band.
SpectralScalar direct_product(const SpectralScalar& a, const SpectralScalar& b);

// Advective terms assembled mode by mode with explicit loops.
Nonlinearity direct_nonlinearity(const State& V, const ModelParams& p);

// Radii for a single-cosine filtered forcing g = A cos(k.x), |k|^2 integer
// ksq_int, in closed form.
AbsorbingRadii radii_cosine(const TorusGrid& grid, double nu, double kappa,
                            double alpha, int N, double c4, double A,
                            int ksq_int);

} // namespace oracle
} // namespace adm
