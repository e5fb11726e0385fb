#include "adm/integrator.hpp"

#include <cmath>
#include <vector>

#include "adm/spectral_ops.hpp"
#include "adm/transform.hpp"

namespace adm {
namespace {

struct ExpFactors {
    std::vector<double> v;
    std::vector<double> th;
};

ExpFactors make_factors(const TorusGrid& g, const ModelParams& p, double dt) {
    ExpFactors f;
    f.v.resize(g.spectral_size());
    f.th.resize(g.spectral_size());
    std::size_t n = 0;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j, ++n) {
            const double ksq = g.ksq(i, j);
            f.v[n] = std::exp(-p.nu * ksq * dt);
            f.th[n] = std::exp(-p.kappa * ksq * dt);
        }
    }
    return f;
}

void scale_by(State& s, const ExpFactors& f) {
    Complex* vx = s.v.x.data();
    Complex* vy = s.v.y.data();
    Complex* th = s.theta.data();
    for (std::size_t n = 0; n < f.v.size(); ++n) {
        vx[n] *= f.v[n];
        vy[n] *= f.v[n];
        th[n] *= f.th[n];
    }
}

RhsResult eval_rhs(SystemKind kind, const State& V, const ModelParams& p) {
    return kind == SystemKind::full ? rhs_full(V, p) : prepared_rhs(V, p);
}

// The exponential factor handles diffusion, so the stage rate passed to the
// scheme must exclude it: rate_nl = rhs - diffusion = rhs + eta |k|^2 V.
State nonstiff_part(const State& V, const RhsResult& r, const ModelParams& p) {
    const TorusGrid& g = V.grid();
    State out = r.rate;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (i == 0 && j == 0) continue;
            const double ksq = g.ksq(i, j);
            out.v.x.at(i, j) += p.nu * ksq * V.v.x.at(i, j);
            out.v.y.at(i, j) += p.nu * ksq * V.v.y.at(i, j);
            out.theta.at(i, j) += p.kappa * ksq * V.theta.at(i, j);
        }
    }
    return out;
}

void check_cfl(const TorusGrid& g, double dt, double advect_max, double safety,
               double t) {
    if (advect_max <= 0.0) return;
    const double kmax = g.k_unit() * g.dealias_cutoff() * std::sqrt(2.0);
    const double dt_limit = safety / (kmax * advect_max);
    if (dt > dt_limit)
        throw CflError("advective CFL violated: dt exceeds limit", t, dt_limit);
}

void finalize(State& V) {
    V.v = leray_project(V.v);
    canonicalize(V);
}

State step_euler_impl(const State& V, double dt, const ModelParams& p,
                      SystemKind kind, const ExpFactors& f, double t,
                      double safety) {
    RhsResult r = eval_rhs(kind, V, p);
    check_cfl(V.grid(), dt, r.advect_max, safety, t);
    State out = V + dt * nonstiff_part(V, r, p);
    scale_by(out, f);
    finalize(out);
    return out;
}

State step_rk2_impl(const State& V, double dt, const ModelParams& p,
                    SystemKind kind, const ExpFactors& f, double t,
                    double safety) {
    RhsResult r1 = eval_rhs(kind, V, p);
    check_cfl(V.grid(), dt, r1.advect_max, safety, t);
    const State n1 = nonstiff_part(V, r1, p);

    State pred = V + dt * n1;
    scale_by(pred, f);

    RhsResult r2 = eval_rhs(kind, pred, p);
    const State n2 = nonstiff_part(pred, r2, p);

    State base = V + (0.5 * dt) * n1;
    scale_by(base, f);
    State out = base + (0.5 * dt) * n2;
    finalize(out);
    return out;
}

bool state_is_finite(const State& V) {
    const std::size_t n = V.grid().spectral_size();
    const Complex* arrays[3] = {V.v.x.data(), V.v.y.data(), V.theta.data()};
    for (const Complex* a : arrays)
        for (std::size_t m = 0; m < n; ++m)
            if (!std::isfinite(a[m].real()) || !std::isfinite(a[m].imag()))
                return false;
    return true;
}

} // namespace

State step_if_euler(const State& V, double dt, const ModelParams& p,
                    SystemKind system, double t, double cfl_safety) {
    const ExpFactors f = make_factors(V.grid(), p, dt);
    return step_euler_impl(V, dt, p, system, f, t, cfl_safety);
}

State step_if_rk2(const State& V, double dt, const ModelParams& p,
                  SystemKind system, double t, double cfl_safety) {
    const ExpFactors f = make_factors(V.grid(), p, dt);
    return step_rk2_impl(V, dt, p, system, f, t, cfl_safety);
}

SimulationResult simulate(const State& V0, const ModelParams& p,
                          const SimulateOptions& opt, const Observer& observe) {
    if (!(opt.dt > 0.0) || !std::isfinite(opt.dt))
        throw ConfigError("time step must be positive and finite", "time.dt");
    if (!(opt.t_end >= 0.0) || !std::isfinite(opt.t_end))
        throw ConfigError("end time must be non-negative and finite", "time.t_end");
    if (opt.sample_stride < 1)
        throw ConfigError("sample stride must be at least 1", "output.stride");

    const TorusGrid& g = V0.grid();
    State V = V0;
    apply_dealias_mask(V.v);
    apply_dealias_mask(V.theta);
    V.v = leray_project(V.v);
    canonicalize(V);

    long steps = static_cast<long>(std::floor(opt.t_end / opt.dt + 1e-9));
    double tail = opt.t_end - steps * opt.dt;
    if (tail < 1e-9 * opt.dt) tail = 0.0;

    const ExpFactors f = make_factors(g, p, opt.dt);
    if (observe) observe(0, 0.0, V);

    for (long n = 0; n < steps; ++n) {
        const double t = n * opt.dt;
        V = opt.scheme == Scheme::if_rk2
                ? step_rk2_impl(V, opt.dt, p, opt.system, f, t, opt.cfl_safety)
                : step_euler_impl(V, opt.dt, p, opt.system, f, t, opt.cfl_safety);
        if (!state_is_finite(V))
            throw NumericalError("state became non-finite", (n + 1) * opt.dt);
        const bool last = n + 1 == steps && tail == 0.0;
        if ((n + 1) % opt.sample_stride == 0 || last)
            if (observe) observe(n + 1, (n + 1) * opt.dt, V);
    }

    if (tail > 0.0) {
        const ExpFactors ftail = make_factors(g, p, tail);
        const double t = steps * opt.dt;
        V = opt.scheme == Scheme::if_rk2
                ? step_rk2_impl(V, tail, p, opt.system, ftail, t, opt.cfl_safety)
                : step_euler_impl(V, tail, p, opt.system, ftail, t, opt.cfl_safety);
        if (!state_is_finite(V))
            throw NumericalError("state became non-finite", opt.t_end);
        ++steps;
        if (observe) observe(steps, opt.t_end, V);
    }

    SimulationResult res{std::move(V), steps, opt.t_end};
    return res;
}

} // namespace adm
