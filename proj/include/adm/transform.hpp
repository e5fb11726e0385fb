#pragma once

#include "adm/field.hpp"
#include "adm/grid.hpp"

namespace adm {

// Coefficient convention: hat(v)_k = (1/M^2) * sum_x v(x) e^{-i k.x}, so a
// field cos(k.x) carries 1/2 at +-k. Forward strips the sample mean (counted
// when significant) and canonicalizes.
SpectralScalar transform_forward(const RealField& samples);

// Unnormalized synthesis sum_k hat(v)_k e^{+i k.x}; exact inverse of forward.
RealField transform_inverse(const SpectralScalar& f);

// Zeroes every mode outside the 2/3 band max(|kx|,|ky|) <= floor(M/3).
void apply_dealias_mask(SpectralScalar& f);
void apply_dealias_mask(SpectralVector& f);

// Quadratic products of band-limited fields, exact on the retained band.
// Works on the native grid when 3*floor(M/3) < M; when 3 | M the corner pair
// (-K,-K)+(-K,-K) would alias onto (+K,+K), so factors are re-expanded on an
// M+2 grid instead. Factors are band-truncated before multiplication.
class ProductBatch {
public:
    explicit ProductBatch(const TorusGrid& grid);

    const TorusGrid& work_grid() const { return work_; }

    // Band-truncates f and synthesizes it on the work grid.
    RealField factor(const SpectralScalar& f) const;

    // Analyzes a pointwise product back onto the original grid's band.
    SpectralScalar analyze(const RealField& product) const;

private:
    TorusGrid grid_;
    TorusGrid work_;
};

RealField pointwise_product(const RealField& a, const RealField& b);

// One-shot convenience built on ProductBatch.
SpectralScalar dealias_product(const SpectralScalar& a, const SpectralScalar& b);

} // namespace adm
