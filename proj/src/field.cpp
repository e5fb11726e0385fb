#include "adm/field.hpp"

#include <algorithm>
#include <cmath>

namespace adm {

std::atomic<std::uint64_t>& mean_strip_count() {
    static std::atomic<std::uint64_t> count{0};
    return count;
}

SpectralScalar& SpectralScalar::operator+=(const SpectralScalar& o) {
    assert(grid_ == o.grid_);
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] += o.c_[n];
    return *this;
}

SpectralScalar& SpectralScalar::operator-=(const SpectralScalar& o) {
    assert(grid_ == o.grid_);
    for (std::size_t n = 0; n < c_.size(); ++n) c_[n] -= o.c_[n];
    return *this;
}

SpectralScalar& SpectralScalar::operator*=(double s) {
    for (auto& v : c_) v *= s;
    return *this;
}

SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b) { a += b; return a; }
SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b) { a -= b; return a; }
SpectralScalar operator*(double s, SpectralScalar a) { a *= s; return a; }

SpectralVector operator+(SpectralVector a, const SpectralVector& b) { a += b; return a; }
SpectralVector operator-(SpectralVector a, const SpectralVector& b) { a -= b; return a; }
SpectralVector operator*(double s, SpectralVector a) { a *= s; return a; }

State operator+(State a, const State& b) { a += b; return a; }
State operator-(State a, const State& b) { a -= b; return a; }
State operator*(double s, State a) { a *= s; return a; }

void canonicalize(SpectralScalar& f) {
    const TorusGrid& g = f.grid();
    const int M = g.M();

    double scale = 0.0;
    for (int i = 0; i < M; ++i)
        for (int j = 0; j < g.cols(); ++j)
            scale = std::max(scale, std::abs(f.at(i, j)));

    const Complex mean = f.at(0, 0);
    if (std::abs(mean) > 1e-13 * std::max(1.0, scale))
        mean_strip_count().fetch_add(1, std::memory_order_relaxed);
    f.at(0, 0) = Complex(0.0, 0.0);

    for (int j = 0; j < g.cols(); ++j) f.at(M / 2, j) = Complex(0.0, 0.0);
    for (int i = 0; i < M; ++i) f.at(i, M / 2) = Complex(0.0, 0.0);

    // ky = 0 column: average each +-kx pair onto the exact conjugate pair.
    for (int i = 1; i < M / 2; ++i) {
        const Complex a = f.at(i, 0);
        const Complex b = f.at(g.conj_row(i), 0);
        const Complex sym = 0.5 * (a + std::conj(b));
        f.at(i, 0) = sym;
        f.at(g.conj_row(i), 0) = std::conj(sym);
    }
}

void canonicalize(SpectralVector& f) {
    canonicalize(f.x);
    canonicalize(f.y);
}

void canonicalize(State& s) {
    canonicalize(s.v);
    canonicalize(s.theta);
}

} // namespace adm
