#pragma once

#include <cmath>
#include <cstddef>

#include "adm/errors.hpp"

namespace adm {

// Uniform grid on the periodic square [0,L)^2, M samples per axis.
//
// Spectral storage is the real-to-complex half lattice: M rows (full first
// axis) by M/2+1 columns (non-negative second component). Row i carries
// integer wavenumber kx = i for i <= M/2 and i-M beyond; column j carries
// ky = j. The Nyquist row/column i==M/2, j==M/2 is kept identically zero so
// the represented lattice |k_i| <= M/2-1 is closed under k -> -k.
class TorusGrid {
public:
    TorusGrid(double L, int M) : L_(L), M_(M) {
        if (!(L > 0.0) || !std::isfinite(L))
            throw ConfigError("grid.L must be positive and finite", "grid.L");
        if (M < 4 || M % 2 != 0)
            throw ConfigError("grid.M must be even and at least 4", "grid.M");
    }

    double L() const { return L_; }
    int M() const { return M_; }
    double k_unit() const { return 2.0 * pi() / L_; }
    double lambda1() const { double k = k_unit(); return k * k; }

    int rows() const { return M_; }
    int cols() const { return M_ / 2 + 1; }
    std::size_t spectral_size() const { return static_cast<std::size_t>(rows()) * cols(); }
    std::size_t real_size() const { return static_cast<std::size_t>(M_) * M_; }

    int kx_int(int i) const { return i <= M_ / 2 ? i : i - M_; }
    static int ky_int(int j) { return j; }
    int ksq_int(int i, int j) const {
        const int kx = kx_int(i);
        return kx * kx + j * j;
    }
    double ksq(int i, int j) const { return lambda1() * ksq_int(i, j); }

    bool is_nyquist(int i, int j) const { return i == M_ / 2 || j == M_ / 2; }
    int conj_row(int i) const { return i == 0 ? 0 : M_ - i; }

    // Full-lattice multiplicity of a stored entry: the ky>0 half stands in
    // for its unstored conjugate as well.
    double hermitian_weight(int i, int j) const {
        if (is_nyquist(i, j)) return 0.0;
        return j == 0 ? 1.0 : 2.0;
    }

    // 2/3-rule dealiasing band: max(|kx|,|ky|) <= K.
    int dealias_cutoff() const { return M_ / 3; }
    bool in_band(int i, int j) const {
        if (is_nyquist(i, j)) return false;
        const int K = dealias_cutoff();
        return std::abs(kx_int(i)) <= K && j <= K;
    }
    double max_band_ksq() const {
        const int K = dealias_cutoff();
        return lambda1() * 2.0 * K * K;
    }

    double x(int idx) const { return L_ * idx / M_; }

    bool operator==(const TorusGrid& o) const { return L_ == o.L_ && M_ == o.M_; }
    bool operator!=(const TorusGrid& o) const { return !(*this == o); }

    static double pi() { return 3.14159265358979323846; }

private:
    double L_;
    int M_;
};

inline TorusGrid make_grid(double L, int M) { return TorusGrid(L, M); }

} // namespace adm
