#include "adm/transform.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <vector>

namespace adm {
namespace {

struct PlanPair {
    fftw_plan r2c;
    fftw_plan c2r;
};

// FFTW planning is not thread-safe; execution through the array-execute API
// is. Plans use FFTW_ESTIMATE so the chosen algorithm, and therefore the
// rounding, is reproducible run to run.
PlanPair plans_for(int M) {
    static std::mutex mu;
    static std::map<int, PlanPair> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(M);
    if (it != cache.end()) return it->second;

    std::vector<double> real(static_cast<std::size_t>(M) * M);
    std::vector<Complex> spec(static_cast<std::size_t>(M) * (M / 2 + 1));
    PlanPair p;
    p.r2c = fftw_plan_dft_r2c_2d(M, M, real.data(),
                                 reinterpret_cast<fftw_complex*>(spec.data()),
                                 FFTW_ESTIMATE | FFTW_UNALIGNED);
    p.c2r = fftw_plan_dft_c2r_2d(M, M,
                                 reinterpret_cast<fftw_complex*>(spec.data()),
                                 real.data(), FFTW_ESTIMATE | FFTW_UNALIGNED);
    cache.emplace(M, p);
    return p;
}

// count_mean=false is the product path: a quadratic product legitimately has
// a mean, which analysis discards without touching the warning counter.
SpectralScalar forward_impl(const RealField& samples, bool count_mean) {
    const TorusGrid& g = samples.grid();
    const int M = g.M();
    PlanPair p = plans_for(M);

    std::vector<double> in(samples.data(), samples.data() + g.real_size());
    SpectralScalar out(g);
    fftw_execute_dft_r2c(p.r2c, in.data(),
                         reinterpret_cast<fftw_complex*>(out.data()));

    const double norm = 1.0 / (static_cast<double>(M) * M);
    for (std::size_t n = 0; n < g.spectral_size(); ++n) out.data()[n] *= norm;
    if (!count_mean) out.at(0, 0) = Complex(0.0, 0.0);
    canonicalize(out);
    return out;
}

} // namespace

SpectralScalar transform_forward(const RealField& samples) {
    return forward_impl(samples, true);
}

RealField transform_inverse(const SpectralScalar& f) {
    const TorusGrid& g = f.grid();
    PlanPair p = plans_for(g.M());

    // Multidimensional c2r destroys its input; work on a copy.
    std::vector<Complex> scratch(f.data(), f.data() + g.spectral_size());
    RealField out(g);
    fftw_execute_dft_c2r(p.c2r, reinterpret_cast<fftw_complex*>(scratch.data()),
                         out.data());
    return out;
}

void apply_dealias_mask(SpectralScalar& f) {
    const TorusGrid& g = f.grid();
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            if (!g.in_band(i, j)) f.at(i, j) = Complex(0.0, 0.0);
}

void apply_dealias_mask(SpectralVector& f) {
    apply_dealias_mask(f.x);
    apply_dealias_mask(f.y);
}

ProductBatch::ProductBatch(const TorusGrid& grid)
    : grid_(grid),
      work_(grid.L(), grid.M() % 3 == 0 ? grid.M() + 2 : grid.M()) {}

RealField ProductBatch::factor(const SpectralScalar& f) const {
    if (work_ == grid_) {
        SpectralScalar masked = f;
        apply_dealias_mask(masked);
        return transform_inverse(masked);
    }
    SpectralScalar embedded(work_);
    const int Mw = work_.M();
    for (int i = 0; i < grid_.rows(); ++i) {
        for (int j = 0; j < grid_.cols(); ++j) {
            if (!grid_.in_band(i, j)) continue;
            const int kx = grid_.kx_int(i);
            const int iw = kx >= 0 ? kx : kx + Mw;
            embedded.at(iw, j) = f.at(i, j);
        }
    }
    return transform_inverse(embedded);
}

SpectralScalar ProductBatch::analyze(const RealField& product) const {
    SpectralScalar wide = forward_impl(product, false);
    if (work_ == grid_) {
        apply_dealias_mask(wide);
        return wide;
    }
    SpectralScalar out(grid_);
    const int Mw = work_.M();
    for (int i = 0; i < grid_.rows(); ++i) {
        for (int j = 0; j < grid_.cols(); ++j) {
            if (!grid_.in_band(i, j)) continue;
            const int kx = grid_.kx_int(i);
            const int iw = kx >= 0 ? kx : kx + Mw;
            out.at(i, j) = wide.at(iw, j);
        }
    }
    return out;
}

RealField pointwise_product(const RealField& a, const RealField& b) {
    assert(a.grid() == b.grid());
    RealField out(a.grid());
    const double* pa = a.data();
    const double* pb = b.data();
    double* po = out.data();
    for (std::size_t n = 0; n < out.size(); ++n) po[n] = pa[n] * pb[n];
    return out;
}

SpectralScalar dealias_product(const SpectralScalar& a, const SpectralScalar& b) {
    assert(a.grid() == b.grid());
    ProductBatch batch(a.grid());
    RealField ra = batch.factor(a);
    RealField rb = batch.factor(b);
    return batch.analyze(pointwise_product(ra, rb));
}

} // namespace adm
