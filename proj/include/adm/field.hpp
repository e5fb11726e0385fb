#pragma once

#include <atomic>
#include <cassert>
#include <complex>
#include <cstdint>
#include <vector>

#include "adm/grid.hpp"

namespace adm {

using Complex = std::complex<double>;

// Incremented whenever canonicalization strips a mean that was not already
// negligible relative to the field scale. Tests reset it; long runs watch it.
std::atomic<std::uint64_t>& mean_strip_count();

class RealField {
public:
    explicit RealField(const TorusGrid& grid)
        : grid_(grid), values_(grid.real_size(), 0.0) {}

    const TorusGrid& grid() const { return grid_; }
    double& at(int i, int j) { return values_[static_cast<std::size_t>(i) * grid_.M() + j]; }
    double at(int i, int j) const { return values_[static_cast<std::size_t>(i) * grid_.M() + j]; }
    double* data() { return values_.data(); }
    const double* data() const { return values_.data(); }
    std::size_t size() const { return values_.size(); }

private:
    TorusGrid grid_;
    std::vector<double> values_;
};

// Zero-mean scalar field in canonical half-spectrum storage. Entries with a
// second component ky = j > 0 implicitly carry the conjugate mode at -k.
class SpectralScalar {
public:
    explicit SpectralScalar(const TorusGrid& grid)
        : grid_(grid), c_(grid.spectral_size(), Complex(0.0, 0.0)) {}

    const TorusGrid& grid() const { return grid_; }

    Complex& at(int i, int j) { return c_[static_cast<std::size_t>(i) * grid_.cols() + j]; }
    Complex at(int i, int j) const { return c_[static_cast<std::size_t>(i) * grid_.cols() + j]; }
    Complex* data() { return c_.data(); }
    const Complex* data() const { return c_.data(); }

    // Logical accessor over the full lattice, |kx|,|ky| <= M/2-1.
    Complex coeff(int kx, int ky) const {
        assert(std::abs(kx) < grid_.M() / 2 && std::abs(ky) < grid_.M() / 2);
        if (ky < 0 || (ky == 0 && kx < 0))
            return std::conj(coeff(-kx, -ky));
        const int i = kx >= 0 ? kx : kx + grid_.M();
        return at(i, ky);
    }

    // Sets the mode at k and its conjugate partner at -k consistently.
    void set_coeff(int kx, int ky, Complex value) {
        assert(std::abs(kx) < grid_.M() / 2 && std::abs(ky) < grid_.M() / 2);
        assert(kx != 0 || ky != 0);
        if (ky < 0 || (ky == 0 && kx < 0)) {
            set_coeff(-kx, -ky, std::conj(value));
            return;
        }
        const int i = kx >= 0 ? kx : kx + grid_.M();
        at(i, ky) = value;
        if (ky == 0) at(grid_.conj_row(i), 0) = std::conj(value);
    }

    SpectralScalar& operator+=(const SpectralScalar& o);
    SpectralScalar& operator-=(const SpectralScalar& o);
    SpectralScalar& operator*=(double s);

private:
    TorusGrid grid_;
    std::vector<Complex> c_;
};

SpectralScalar operator+(SpectralScalar a, const SpectralScalar& b);
SpectralScalar operator-(SpectralScalar a, const SpectralScalar& b);
SpectralScalar operator*(double s, SpectralScalar a);

struct SpectralVector {
    SpectralScalar x;
    SpectralScalar y;

    explicit SpectralVector(const TorusGrid& grid) : x(grid), y(grid) {}
    SpectralVector(SpectralScalar x_, SpectralScalar y_)
        : x(std::move(x_)), y(std::move(y_)) {}

    const TorusGrid& grid() const { return x.grid(); }

    SpectralVector& operator+=(const SpectralVector& o) { x += o.x; y += o.y; return *this; }
    SpectralVector& operator-=(const SpectralVector& o) { x -= o.x; y -= o.y; return *this; }
    SpectralVector& operator*=(double s) { x *= s; y *= s; return *this; }
};

SpectralVector operator+(SpectralVector a, const SpectralVector& b);
SpectralVector operator-(SpectralVector a, const SpectralVector& b);
SpectralVector operator*(double s, SpectralVector a);

// Unfiltered unknowns (velocity, temperature).
struct State {
    SpectralVector v;
    SpectralScalar theta;

    explicit State(const TorusGrid& grid) : v(grid), theta(grid) {}
    State(SpectralVector v_, SpectralScalar theta_)
        : v(std::move(v_)), theta(std::move(theta_)) {}

    const TorusGrid& grid() const { return theta.grid(); }

    State& operator+=(const State& o) { v += o.v; theta += o.theta; return *this; }
    State& operator-=(const State& o) { v -= o.v; theta -= o.theta; return *this; }
    State& operator*=(double s) { v *= s; theta *= s; return *this; }
};

State operator+(State a, const State& b);
State operator-(State a, const State& b);
State operator*(double s, State a);

// Helmholtz-filtered unknowns; same storage, distinct role.
struct FilteredState {
    SpectralVector w;
    SpectralScalar rho;

    explicit FilteredState(const TorusGrid& grid) : w(grid), rho(grid) {}
    FilteredState(SpectralVector w_, SpectralScalar rho_)
        : w(std::move(w_)), rho(std::move(rho_)) {}

    const TorusGrid& grid() const { return rho.grid(); }
};

// Restores the storage invariants in place: zero mean (warning-counted when
// the stripped mean is significant), zero Nyquist entries, conjugate-even
// ky = 0 column.
void canonicalize(SpectralScalar& f);
void canonicalize(SpectralVector& f);
void canonicalize(State& s);

} // namespace adm
