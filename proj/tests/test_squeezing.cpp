#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "adm/fields.hpp"
#include "adm/spectral_ops.hpp"
#include "adm/squeezing.hpp"

using namespace adm;

namespace {

const EigenvalueEntry* find_lambda(const std::vector<EigenvalueEntry>& sp,
                                   double lambda) {
    for (const auto& e : sp)
        if (e.lambda == lambda) return &e;
    return nullptr;
}

} // namespace

TEST_CASE("band spectrum: head, multiplicities, gaps") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 32);  // K = 10
    const auto sp = enumerate_eigenvalues(g, g.max_band_ksq());
    REQUIRE(sp.size() > 10);

    CHECK(sp[0].lambda == 1.0);
    CHECK(sp[0].multiplicity == 4);
    CHECK(sp[1].lambda == 2.0);
    CHECK(sp[1].multiplicity == 4);
    CHECK(sp[2].lambda == 4.0);
    CHECK(sp[3].lambda == 5.0);
    CHECK(sp[3].multiplicity == 8);
    CHECK(sp[4].lambda == 8.0);
    CHECK(sp[5].lambda == 9.0);
    CHECK(sp[6].lambda == 10.0);
    CHECK(sp[6].multiplicity == 8);

    // numbers with no representation as a sum of two squares never appear
    for (const double missing : {3.0, 6.0, 7.0, 11.0, 12.0})
        CHECK(find_lambda(sp, missing) == nullptr);

    // representable, but only by lattice points beyond the band corner
    for (const double truncated : {185.0, 193.0, 196.0})
        CHECK(find_lambda(sp, truncated) == nullptr);

    CHECK(sp.back().lambda == 200.0);  // (10,10) corner
    CHECK(sp.back().multiplicity == 4);

    // multiplicity counts all signed lattice points: 25 = (5,0),(3,4) family
    CHECK(find_lambda(sp, 25.0)->multiplicity == 12);
}

TEST_CASE("spectrum respects the requested ceiling and the box scaling") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 32);
    const auto sp = enumerate_eigenvalues(g, 10.0);
    CHECK(sp.back().lambda == 10.0);

    const TorusGrid h(TorusGrid::pi(), 32);  // lambda1 = 4
    const auto sph = enumerate_eigenvalues(h, 40.0);
    CHECK(sph[0].lambda == 4.0);
    CHECK(sph[1].lambda == 8.0);
    CHECK(sph.back().lambda == 40.0);
}

TEST_CASE("minimal gap search lands on the documented cutoffs") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 32);

    // threshold 2.5: first gap above it is 5 -> 8
    const ConeSpec a = find_min_gap_cutoff(g, 0.625, 1.0, 1.0);
    CHECK(a.lambda_n == 5.0);
    CHECK(a.lambda_np1 == 8.0);
    CHECK(a.modes_per_family == 20);
    CHECK(a.mode_count == 60);

    // threshold 4: first gap above it is 20 -> 25
    const ConeSpec b = find_min_gap_cutoff(g, 1.0, 1.0, 1.0);
    CHECK(b.lambda_n == 20.0);
    CHECK(b.lambda_np1 == 25.0);
    CHECK(b.modes_per_family == 68);
    CHECK(b.mode_count == 204);
    CHECK(b.gamma == 1.0);

    // threshold 0: the very first gap qualifies
    const ConeSpec c = find_min_gap_cutoff(g, 0.0, 1.0, 1.0);
    CHECK(c.lambda_n == 1.0);
    CHECK(c.lambda_np1 == 2.0);
    CHECK(c.modes_per_family == 4);

    // threshold 18 lands in the wide opening under the band corner
    const ConeSpec d = find_min_gap_cutoff(g, 4.5, 1.0, 1.0);
    CHECK(d.lambda_n == 181.0);
    CHECK(d.lambda_np1 == 200.0);

    // beyond the widest in-band gap: no admissible cutoff
    CHECK_THROWS_AS(find_min_gap_cutoff(g, 5.0, 1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(find_min_gap_cutoff(g, 1.0, -1.0, 1.0), ConfigError);
    CHECK_THROWS_AS(find_min_gap_cutoff(g, 1.0, 1.0, 0.0), ConfigError);
}

TEST_CASE("squeezing rate bookkeeping") {
    ConeSpec cone;
    cone.lambda_np1 = 8.0;
    cone.gamma = 1.0;
    CHECK(beta_n(cone, 1.0, 1.0) == doctest::Approx(6.0));
    CHECK(beta_n(cone, 0.0, 1.0) == doctest::Approx(8.0));
    cone.gamma = 2.0;
    CHECK(beta_n(cone, 1.0, 0.5) == doctest::Approx(4.0 - 1.5));
}

TEST_CASE("spectral projections are exact complements") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    State V(g);
    V.v = random_solenoidal(g, 55, -1.0, g.max_band_ksq(), 1.0);
    V.theta = random_scalar(g, 56, -1.0, g.max_band_ksq(), 1.0);

    const double lambda_n = 5.0;
    const State P = project_low(V, lambda_n);
    const State Q = project_high(V, lambda_n);

    double dev = 0.0;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            dev = std::max(dev, std::abs(P.theta.at(i, j) + Q.theta.at(i, j) -
                                         V.theta.at(i, j)));
            dev = std::max(dev, std::abs(P.v.x.at(i, j) + Q.v.x.at(i, j) -
                                         V.v.x.at(i, j)));
            const double ksq = g.ksq(i, j);
            if (ksq <= lambda_n) {
                dev = std::max(dev, std::abs(Q.theta.at(i, j)));
            } else {
                dev = std::max(dev, std::abs(P.theta.at(i, j)));
            }
        }
    }
    CHECK(dev == 0.0);

    State s(g);
    s.theta = sine_mode(g, 3, 0, 1.0);  // |k|^2 = 9 > 5
    CHECK(sobolev_norm(project_low(s, 5.0).theta, 0.0) == 0.0);
    CHECK(sobolev_norm(project_high(s, 5.0).theta, 0.0) ==
          doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(sobolev_norm(project_high(s, 9.0).theta, 0.0) == 0.0);
}

TEST_CASE("cone membership of pure-band perturbations") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);  // N = 0: the weighted norm is plain L2
    ConeSpec cone;
    cone.lambda_n = 5.0;
    cone.lambda_np1 = 8.0;
    cone.gamma = 1.0;

    State a(g), b(g);
    a.theta = cosine_mode(g, 1, 0, 1.0);
    ConeObservation low = cone_test(a, b, p, cone);
    CHECK(low.p_norm == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));
    CHECK(low.q_norm == 0.0);
    CHECK(low.margin == doctest::Approx(std::sqrt(0.5)).epsilon(1e-14));

    State c(g);
    c.theta = sine_mode(g, 3, 0, 1.0);
    ConeObservation high = cone_test(c, b, p, cone);
    CHECK(high.p_norm == 0.0);
    CHECK(high.margin == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-14));

    // aperture scales the positive part
    cone.gamma = 2.0;
    ConeObservation wide = cone_test(a, b, p, cone);
    CHECK(wide.margin == doctest::Approx(2.0 * std::sqrt(0.5)).epsilon(1e-14));
}

TEST_CASE("random states hit the prescribed weighted norm reproducibly") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 32);
    ModelParams p(g);
    p.N = 2;
    const State a = random_state_dn(g, p, 1234, -1.0, g.max_band_ksq(), 0.37);
    CHECK(state_dn_norm(a, p) == doctest::Approx(0.37).epsilon(1e-12));
    const State b = random_state_dn(g, p, 1234, -1.0, g.max_band_ksq(), 0.37);
    double dev = 0.0;
    for (int i = 0; i < g.rows(); ++i)
        for (int j = 0; j < g.cols(); ++j)
            dev = std::max(dev, std::abs(a.theta.at(i, j) - b.theta.at(i, j)));
    CHECK(dev == 0.0);
}

TEST_CASE("calibration is deterministic and positive") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    p.rho_tilde = 0.5;
    const CalibrationResult a = calibrate_lipschitz(p, 20, 99);
    const CalibrationResult b = calibrate_lipschitz(p, 20, 99);
    CHECK(a.max_ratio == b.max_ratio);
    CHECK(a.max_ratio > 0.0);
    CHECK(a.samples == 20);
    CHECK_THROWS_AS(calibrate_lipschitz(p, 0, 99), ConfigError);
}

TEST_CASE("pair experiment: trivial and one-sided starts") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    p.rho_tilde = 1.0;
    ConeSpec cone;
    cone.lambda_n = 5.0;
    cone.lambda_np1 = 8.0;
    cone.gamma = 1.0;

    PairExperimentOptions opt;
    opt.t_end = 0.2;
    opt.dt = 1e-3;
    opt.sample_stride = 5;
    opt.beta_n = 1.0;  // deliberately weak envelope

    const State base = random_state_dn(g, p, 42, -2.0, 16.0, 0.3);

    SUBCASE("identical trajectories stay on the cone boundary") {
        const PairExperimentResult res = run_pair_experiment(base, base, p, cone, opt);
        CHECK(res.times.size() == 41);
        CHECK(res.invariance_ok);
        CHECK(res.decay_ok);
        REQUIRE(res.entry_time.has_value());
        CHECK(res.entry_time.value() == 0.0);
        for (const double m : res.margins) CHECK(m == 0.0);
    }

    SUBCASE("low-mode separation starts and stays inside") {
        State bprime = base;
        bprime.theta += cosine_mode(g, 1, 0, 1e-3);
        const PairExperimentResult res = run_pair_experiment(base, bprime, p, cone, opt);
        CHECK(res.invariance_ok);
        CHECK(res.decay_ok);
        REQUIRE(res.entry_time.has_value());
        CHECK(res.entry_time.value() == 0.0);
        CHECK(res.margins.front() > 0.0);
        CHECK(res.min_margin_after_entry > -1e-8);
    }

    SUBCASE("high-mode separation decays under a weak envelope") {
        State bprime = base;
        bprime.theta += sine_mode(g, 3, 1, 1e-3);  // |k|^2 = 10 > lambda_n
        const PairExperimentResult res = run_pair_experiment(base, bprime, p, cone, opt);
        CHECK(res.decay_ok);
        CHECK(res.margins.front() < 0.0);
        // the difference is dominated by diffusive decay at rate >= 10
        REQUIRE(res.fitted_exponent.has_value());
        CHECK(res.fitted_exponent.value() > 5.0);
        CHECK(res.beta_n_used == 1.0);
    }

    SUBCASE("option validation") {
        PairExperimentOptions bad = opt;
        bad.dt = 0.0;
        CHECK_THROWS_AS(run_pair_experiment(base, base, p, cone, bad), ConfigError);
    }
}
