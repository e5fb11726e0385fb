#include <doctest.h>

#include <cmath>

#include "adm/field.hpp"
#include "adm/grid.hpp"

using namespace adm;

TEST_CASE("grid wavenumber bookkeeping") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 8);
    CHECK(g.lambda1() == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(g.rows() == 8);
    CHECK(g.cols() == 5);

    CHECK(g.kx_int(0) == 0);
    CHECK(g.kx_int(3) == 3);
    CHECK(g.kx_int(4) == 4);  // Nyquist row, stored but structurally zero
    CHECK(g.kx_int(5) == -3);
    CHECK(g.kx_int(7) == -1);
    CHECK(g.conj_row(0) == 0);
    CHECK(g.conj_row(3) == 5);

    CHECK(g.ksq_int(7, 2) == 5);
    CHECK(g.ksq(7, 2) == doctest::Approx(5.0));

    CHECK(g.is_nyquist(4, 0));
    CHECK(g.is_nyquist(1, 4));
    CHECK(!g.is_nyquist(1, 3));

    CHECK(g.hermitian_weight(4, 1) == 0.0);
    CHECK(g.hermitian_weight(2, 0) == 1.0);
    CHECK(g.hermitian_weight(2, 3) == 2.0);

    CHECK(g.dealias_cutoff() == 2);
    CHECK(g.in_band(2, 1));
    CHECK(!g.in_band(3, 0));
    CHECK(g.max_band_ksq() == doctest::Approx(8.0));
}

TEST_CASE("grid scaling with the box size") {
    const TorusGrid g(TorusGrid::pi(), 16);
    CHECK(g.k_unit() == doctest::Approx(2.0).epsilon(1e-15));
    CHECK(g.lambda1() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(g.ksq(1, 0) == doctest::Approx(4.0));
    CHECK(g.x(4) == doctest::Approx(TorusGrid::pi() / 4.0));
}

TEST_CASE("grid rejects bad extents") {
    CHECK_THROWS_AS(TorusGrid(0.0, 8), ConfigError);
    CHECK_THROWS_AS(TorusGrid(-1.0, 8), ConfigError);
    CHECK_THROWS_AS(TorusGrid(1.0, 7), ConfigError);
    CHECK_THROWS_AS(TorusGrid(1.0, 2), ConfigError);
    try {
        TorusGrid(1.0, 7);
    } catch (const ConfigError& e) {
        CHECK(e.key() == "grid.M");
    }
}

TEST_CASE("logical coefficient accessors maintain conjugate symmetry") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 8);
    SpectralScalar f(g);

    const Complex z(0.5, -0.25);
    f.set_coeff(2, -1, z);
    CHECK(f.coeff(2, -1) == z);
    CHECK(f.coeff(-2, 1) == std::conj(z));
    CHECK(f.at(6, 1) == std::conj(z));  // stored at -k since ky < 0 is unstored

    f.set_coeff(3, 0, z);
    CHECK(f.at(3, 0) == z);
    CHECK(f.at(5, 0) == std::conj(z));  // ky = 0 conjugate partner kept in sync
    CHECK(f.coeff(-3, 0) == std::conj(z));
}

TEST_CASE("field arithmetic is componentwise") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 8);
    SpectralScalar a(g), b(g);
    a.set_coeff(1, 0, Complex(1.0, 0.0));
    b.set_coeff(1, 0, Complex(0.0, 2.0));
    const SpectralScalar c = 2.0 * (a + b) - a;
    CHECK(c.coeff(1, 0) == Complex(1.0, 4.0));

    State s(g), t(g);
    s.theta.set_coeff(1, 1, Complex(3.0, 0.0));
    t.theta.set_coeff(1, 1, Complex(1.0, 0.0));
    const State d = s - t;
    CHECK(d.theta.coeff(1, 1) == Complex(2.0, 0.0));
}

TEST_CASE("canonicalize restores storage invariants") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 8);
    SpectralScalar f(g);
    f.at(0, 0) = Complex(0.7, 0.0);            // significant mean
    f.at(4, 1) = Complex(1.0, 1.0);            // Nyquist row
    f.at(1, 4) = Complex(1.0, 1.0);            // Nyquist column
    f.at(2, 0) = Complex(1.0, 1.0);            // broken ky = 0 pair
    f.at(6, 0) = Complex(0.0, 0.0);

    const auto before = mean_strip_count().load();
    canonicalize(f);
    CHECK(mean_strip_count().load() == before + 1);

    CHECK(f.at(0, 0) == Complex(0.0, 0.0));
    CHECK(f.at(4, 1) == Complex(0.0, 0.0));
    CHECK(f.at(1, 4) == Complex(0.0, 0.0));
    // broken pair averaged onto an exact conjugate pair
    CHECK(f.at(2, 0) == Complex(0.5, 0.5));
    CHECK(f.at(6, 0) == Complex(0.5, -0.5));
}

TEST_CASE("insignificant mean is stripped without counting") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 8);
    SpectralScalar f(g);
    f.set_coeff(1, 0, Complex(1.0, 0.0));
    f.at(0, 0) = Complex(1e-15, 0.0);
    const auto before = mean_strip_count().load();
    canonicalize(f);
    CHECK(mean_strip_count().load() == before);
    CHECK(f.at(0, 0) == Complex(0.0, 0.0));
}
