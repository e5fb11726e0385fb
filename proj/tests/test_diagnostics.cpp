#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "adm/diagnostics.hpp"
#include "adm/fields.hpp"
#include "adm/oracle.hpp"

using namespace adm;

TEST_CASE("monitored norms of a single filtered cosine") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);  // alpha = 1, N = 0
    FilteredState W(g);
    W.rho = cosine_mode(g, 1, 0, 1.0);
    const NormDiagnostics nd = norm_diagnostics(W, p);
    // weight 2, A = 2, D = 1, |rho|^2 = 1/4 per mode
    CHECK(nd.y == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(nd.Y == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(nd.z == 0.0);
    CHECK(nd.Z == 0.0);
}

TEST_CASE("filtered and unfiltered norm routes agree") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 32);
    ModelParams p(g);
    p.alpha = 0.8;
    p.N = 3;
    State V(g);
    V.theta = random_scalar(g, 5, -1.0, g.max_band_ksq(), 2.0);
    V.v = random_solenoidal(g, 6, -1.0, g.max_band_ksq(), 1.0);

    FilteredState W(g);
    const MultiplierSpec filt = filter_multiplier(p.alpha);
    W.rho = apply(filt, V.theta);
    W.w = apply(filt, V.v);

    const NormDiagnostics a = norm_diagnostics(V, p);
    const NormDiagnostics b = norm_diagnostics(W, p);
    CHECK(a.y == doctest::Approx(b.y).epsilon(1e-12));
    CHECK(a.z == doctest::Approx(b.z).epsilon(1e-12));
    CHECK(a.Y == doctest::Approx(b.Y).epsilon(1e-12));
    CHECK(a.Z == doctest::Approx(b.Z).epsilon(1e-12));
}

TEST_CASE("absorbing radii for the unit cosine forcing") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 32);
    ModelParams p(g);  // nu = kappa = alpha = 1, N = 0, c4 = 1
    p.forcing_f = cosine_mode(g, 1, 0, 2.0);  // filtered forcing cos(x1)

    CHECK(radius_r1sq(p) == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(radius_r2sq(p) == doctest::Approx(2.0).epsilon(1e-13));

    const AbsorbingRadii r = absorbing_radii(p);
    CHECK(r.r1sq == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.r2sq == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r.r == doctest::Approx(std::sqrt(2.0)).epsilon(1e-13));
    CHECK(r.beta == doctest::Approx(10.0).epsilon(1e-13));
    CHECK(r.s1sq == doctest::Approx(20.0).epsilon(1e-13));
    CHECK(r.s2sq == doctest::Approx(4.0).epsilon(1e-13));
    CHECK(r.s == doctest::Approx(std::sqrt(20.0)).epsilon(1e-13));
    CHECK(!r.t_r.has_value());
    CHECK(!r.t_s.has_value());
}

TEST_CASE("radii agree with the closed-form single-mode reference") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 32);
    for (const double kappa : {1.0, 0.5}) {
        for (const int N : {0, 2}) {
            ModelParams p(g);
            p.nu = 1.0;
            p.kappa = kappa;
            p.alpha = 1.0;
            p.N = N;
            p.c4 = 1.3;
            // forcing with filtered amplitude 3 at mode (1,1)
            const double A = 1.0 + 1.0 * 2.0;
            p.forcing_f = cosine_mode(g, 1, 1, 3.0 * A);

            const AbsorbingRadii fast = absorbing_radii(p);
            const AbsorbingRadii slow =
                oracle::radii_cosine(g, p.nu, p.kappa, p.alpha, p.N, p.c4, 3.0, 2);
            CHECK(fast.r1sq == doctest::Approx(slow.r1sq).epsilon(1e-12));
            CHECK(fast.r2sq == doctest::Approx(slow.r2sq).epsilon(1e-12));
            CHECK(fast.beta == doctest::Approx(slow.beta).epsilon(1e-12));
            CHECK(fast.s1sq == doctest::Approx(slow.s1sq).epsilon(1e-12));
            CHECK(fast.s2sq == doctest::Approx(slow.s2sq).epsilon(1e-12));
        }
    }
}

TEST_CASE("radii scaling in the forcing amplitude") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    CHECK(radius_r1sq(p) == 0.0);  // zero forcing
    p.forcing_f = cosine_mode(g, 1, 0, 2.0);
    const double base = radius_r1sq(p);
    p.forcing_f = cosine_mode(g, 1, 0, 4.0);
    CHECK(radius_r1sq(p) == doctest::Approx(4.0 * base).epsilon(1e-13));
}

TEST_CASE("temperature envelope: endpoints and fixed point") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    p.kappa = 0.7;
    p.forcing_f = cosine_mode(g, 1, 0, 2.0);
    const double half = 0.5 * radius_r1sq(p);

    CHECK(bound_R1sq(0.0, 3.0, p) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(bound_R1sq(1.0, half, p) == doctest::Approx(half).epsilon(1e-14));
    // kappa lambda1 t = 42: the transient is annihilated
    CHECK(bound_R1sq(60.0, 3.0, p) == doctest::Approx(half).epsilon(1e-12));
    // one decay step by hand
    const double t = 0.25;
    const double expect = half + (3.0 - half) * std::exp(-0.7 * t);
    CHECK(bound_R1sq(t, 3.0, p) == doctest::Approx(expect).epsilon(1e-14));
}

TEST_CASE("velocity envelope: endpoints, transfer term, coefficient continuity") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    p.forcing_f = cosine_mode(g, 1, 0, 2.0);

    CHECK(bound_R2sq(0.0, 5.0, 3.0, p) == doctest::Approx(3.0).epsilon(1e-13));

    // equal coefficients: explicit t e^{-t} transfer
    const double r1sq = radius_r1sq(p);
    const double b = 5.0 - 0.5 * r1sq;
    const double t = 0.8;
    const double expect = 0.5 * r1sq + (3.0 - 0.5 * r1sq) * std::exp(-t) +
                          b * t * std::exp(-t);
    CHECK(bound_R2sq(t, 5.0, 3.0, p) == doctest::Approx(expect).epsilon(1e-13));

    // the two-coefficient form approaches the confluent one
    ModelParams q(g);
    q.forcing_f = p.forcing_f;
    q.kappa = 1.0 + 1e-9;
    CHECK(bound_R2sq(t, 5.0, 3.0, q) ==
          doctest::Approx(bound_R2sq(t, 5.0, 3.0, p)).epsilon(1e-7));

    // far apart: direct difference form, still finite and ordered
    ModelParams w(g);
    w.forcing_f = p.forcing_f;
    w.kappa = 9.0;
    const double far = bound_R2sq(2.0, 5.0, 3.0, w);
    CHECK(std::isfinite(far));
    CHECK(far > 0.0);
}

TEST_CASE("entry detection") {
    const std::vector<double> times = {0.0, 1.0, 2.0, 3.0, 4.0};

    // strictly decreasing, crossing between samples 1 and 2
    CHECK(detect_entry_time(times, {9.0, 5.0, 2.0, 1.0, 0.5}, 3.0).value() == 2.0);
    // never above: first sample
    CHECK(detect_entry_time(times, {1.0, 1.0, 1.0, 1.0, 1.0}, 3.0).value() == 0.0);
    // above at the end: no entry
    CHECK(!detect_entry_time(times, {1.0, 1.0, 1.0, 1.0, 9.0}, 3.0).has_value());
    // re-excursion: entry counts from the last crossing
    CHECK(detect_entry_time(times, {9.0, 1.0, 9.0, 1.0, 1.0}, 3.0).value() == 3.0);
    // boundary value counts as inside (strict comparison)
    CHECK(detect_entry_time(times, {9.0, 3.0, 3.0, 3.0, 3.0}, 3.0).value() == 1.0);

    CHECK_THROWS_AS(detect_entry_time({}, {}, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(detect_entry_time(times, {1.0, 2.0}, 1.0), std::invalid_argument);
}

TEST_CASE("diagnostics row fills envelopes and marks cone fields empty") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    p.forcing_f = cosine_mode(g, 1, 0, 2.0);
    State V(g);
    V.theta = cosine_mode(g, 1, 0, 1.0);

    const NormDiagnostics nd = norm_diagnostics(V, p);
    const DiagnosticsRow row = make_row(0.5, V, p, nd.y, nd.z);
    CHECK(row.t == 0.5);
    CHECK(row.y == doctest::Approx(nd.y).epsilon(1e-15));
    CHECK(row.R1sq == doctest::Approx(bound_R1sq(0.5, nd.y, p)).epsilon(1e-15));
    CHECK(row.R2sq == doctest::Approx(bound_R2sq(0.5, nd.y, nd.z, p)).epsilon(1e-15));
    CHECK(row.dn_state_norm == doctest::Approx(state_dn_norm(V, p)).epsilon(1e-15));
    CHECK(row.chi_value == cutoff_chi(row.dn_state_norm, p.rho_tilde));
    CHECK(std::isnan(row.p_norm));
    CHECK(std::isnan(row.q_norm));
    CHECK(std::isnan(row.cone_margin));
}
