#pragma once

#include "adm/field.hpp"

namespace adm {

// Coefficient-space partial derivative; axis 0 is the first coordinate.
SpectralScalar derivative(const SpectralScalar& f, int axis);

SpectralScalar divergence(const SpectralVector& u);

// || Lambda^s f || with Lambda = (-Laplacian)^{1/2}; the k = 0 mode is
// skipped (fields are zero-mean), which keeps negative s well defined.
double sobolev_norm(const SpectralScalar& f, double s);
double sobolev_norm(const SpectralVector& f, double s);

// < Lambda^s a, Lambda^s b >, real by Hermitian symmetry.
double inner_product(const SpectralScalar& a, const SpectralScalar& b, double s);
double inner_product(const SpectralVector& a, const SpectralVector& b, double s);

// Orthogonal projection onto divergence-free fields, mode by mode.
SpectralVector leray_project(const SpectralVector& u);

// Keeps modes with physical |k|^2 <= ksq_cutoff.
SpectralScalar truncate_modes(const SpectralScalar& f, double ksq_cutoff);
SpectralVector truncate_modes(const SpectralVector& f, double ksq_cutoff);

} // namespace adm
