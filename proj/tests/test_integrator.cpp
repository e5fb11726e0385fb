#include <doctest.h>

#include <cmath>
#include <vector>

#include "adm/diagnostics.hpp"
#include "adm/fields.hpp"
#include "adm/integrator.hpp"
#include "adm/spectral_ops.hpp"

using namespace adm;

namespace {

State low_mode_state(const TorusGrid& g, double scale) {
    State V(g);
    V.v = random_solenoidal(g, 31, -1.0, 8.0, scale);
    V.theta = random_scalar(g, 32, -1.0, 8.0, scale);
    return V;
}

} // namespace

TEST_CASE("cutoff-dead states follow the diffusion semigroup exactly") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    p.nu = 1.0;
    p.kappa = 0.7;
    p.rho_tilde = 1e-4;  // any visible state sits far beyond the ramp
    const State V0 = low_mode_state(g, 1.0);

    const double dt = 1e-2;
    const int steps = 10;
    for (const Scheme scheme : {Scheme::if_rk2, Scheme::if_euler}) {
        State V = V0;
        for (int n = 0; n < steps; ++n)
            V = scheme == Scheme::if_rk2
                    ? step_if_rk2(V, dt, p, SystemKind::prepared, n * dt)
                    : step_if_euler(V, dt, p, SystemKind::prepared, n * dt);
        double dev = 0.0;
        for (int i = 0; i < g.rows(); ++i) {
            for (int j = 0; j < g.cols(); ++j) {
                const double ksq = g.ksq(i, j);
                const Complex ev = std::exp(-p.nu * ksq * dt * steps) * V0.v.x.at(i, j);
                const Complex et = std::exp(-p.kappa * ksq * dt * steps) * V0.theta.at(i, j);
                dev = std::max(dev, std::abs(V.v.x.at(i, j) - ev));
                dev = std::max(dev, std::abs(V.theta.at(i, j) - et));
            }
        }
        CHECK(dev < 1e-13);
    }
}

TEST_CASE("simulate validates its knobs with config key names") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    const State V0 = low_mode_state(g, 0.1);
    SimulateOptions opt;

    opt.dt = 0.0;
    CHECK_THROWS_AS(simulate(V0, p, opt), ConfigError);
    try {
        simulate(V0, p, opt);
    } catch (const ConfigError& e) {
        CHECK(e.key() == "time.dt");
    }
    opt.dt = 1e-3;
    opt.t_end = -1.0;
    CHECK_THROWS_AS(simulate(V0, p, opt), ConfigError);
    opt.t_end = 0.1;
    opt.sample_stride = 0;
    CHECK_THROWS_AS(simulate(V0, p, opt), ConfigError);
}

TEST_CASE("observer fires on the initial, strided and final steps") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    const State V0 = low_mode_state(g, 0.1);
    SimulateOptions opt;
    opt.dt = 1e-3;
    opt.t_end = 10e-3;
    opt.sample_stride = 3;

    std::vector<long> steps;
    std::vector<double> times;
    const SimulationResult res = simulate(V0, p, opt, [&](long n, double t, const State&) {
        steps.push_back(n);
        times.push_back(t);
    });
    CHECK(res.steps == 10);
    CHECK(steps == std::vector<long>{0, 3, 6, 9, 10});
    CHECK(times.back() == doctest::Approx(0.01).epsilon(1e-12));
    CHECK(res.t_end == doctest::Approx(0.01).epsilon(1e-12));
}

TEST_CASE("step count is robust to roundoff in t_end / dt") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    const State V0 = low_mode_state(g, 0.1);
    SimulateOptions opt;
    opt.dt = 0.1;
    opt.t_end = 0.3;  // 0.3/0.1 is not exact in binary
    opt.sample_stride = 1;
    const SimulationResult res = simulate(V0, p, opt);
    CHECK(res.steps == 3);
}

TEST_CASE("unforced runs never grow the temperature functional") {
    // With g = 0 the transport pairing vanishes exactly, so y is monotone
    // regardless of the buoyancy exchange feeding the velocity.
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    const State V0 = low_mode_state(g, 0.5);
    SimulateOptions opt;
    opt.dt = 1e-3;
    opt.t_end = 0.2;
    opt.sample_stride = 10;

    std::vector<double> ys;
    simulate(V0, p, opt, [&](long, double, const State& V) {
        ys.push_back(norm_diagnostics(V, p).y);
    });
    REQUIRE(ys.size() > 2);
    CHECK(ys.front() > 0.0);
    for (std::size_t i = 1; i < ys.size(); ++i)
        CHECK(ys[i] <= ys[i - 1] * (1.0 + 1e-12));
}

TEST_CASE("advective speed limit raises a typed error with the admissible step") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 32);
    ModelParams p(g);
    State V0(g);
    V0.v = taylor_green(g, 1, 50.0);
    SimulateOptions opt;
    opt.dt = 0.5;
    opt.t_end = 1.0;
    CHECK_THROWS_AS(simulate(V0, p, opt), CflError);
    try {
        simulate(V0, p, opt);
    } catch (const CflError& e) {
        CHECK(e.dt_limit() > 0.0);
        CHECK(e.dt_limit() < 0.5);
        CHECK(e.time() >= 0.0);
    }
}

TEST_CASE("initial data is band-limited and projected before stepping") {
    const TorusGrid g(2.0 * TorusGrid::pi(), 16);
    ModelParams p(g);
    State V0(g);
    V0.v.x = cosine_mode(g, 6, 0, 1.0);  // outside the K = 5 band
    V0.v.y = cosine_mode(g, 1, 0, 1.0);  // compressible on its own
    V0.v.x += derivative(cosine_mode(g, 2, 2, 1.0), 0);  // gradient part
    V0.v.y += derivative(cosine_mode(g, 2, 2, 1.0), 1);
    SimulateOptions opt;
    opt.dt = 1e-3;
    opt.t_end = 1e-3;
    bool checked = false;
    simulate(V0, p, opt, [&](long n, double, const State& V) {
        if (n != 0) return;
        checked = true;
        CHECK(std::abs(V.v.x.coeff(6, 0)) == 0.0);
        CHECK(sobolev_norm(divergence(V.v), 0.0) < 1e-13);
    });
    CHECK(checked);
}
