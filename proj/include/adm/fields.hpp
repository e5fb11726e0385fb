#pragma once

#include <functional>

#include "adm/field.hpp"

namespace adm {

// Samples f(x1,x2) on the grid and transforms; any mean is stripped.
SpectralScalar from_function(const TorusGrid& grid,
                             const std::function<double(double, double)>& f);

// amplitude * cos(kx x1 + ky x2): amplitude/2 at +-k.
SpectralScalar cosine_mode(const TorusGrid& grid, int kx, int ky, double amplitude);
SpectralScalar sine_mode(const TorusGrid& grid, int kx, int ky, double amplitude);

// Classical Taylor-Green cell at integer wavenumber m, divergence-free.
SpectralVector taylor_green(const TorusGrid& grid, int m, double amplitude);

// Seed-stable random fields, spectrum ~ |k|^slope over band modes with
// 0 < |k|^2 <= max_ksq, normalized to ||f||_0 = norm. Draw order is fixed
// by the storage layout, so equal seeds give equal fields.
SpectralScalar random_scalar(const TorusGrid& grid, uint64_t seed,
                             double slope, double max_ksq, double norm);
// As above, then Leray-projected before normalization.
SpectralVector random_solenoidal(const TorusGrid& grid, uint64_t seed,
                                 double slope, double max_ksq, double norm);

} // namespace adm
