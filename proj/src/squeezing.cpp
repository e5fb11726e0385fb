#include "adm/squeezing.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "adm/fields.hpp"
#include "adm/rng.hpp"
#include "adm/spectral_ops.hpp"
#include "adm/transform.hpp"

namespace adm {

std::vector<EigenvalueEntry> enumerate_eigenvalues(const TorusGrid& grid,
                                                   double lambda_max) {
    const int K = grid.dealias_cutoff();
    const double l1 = grid.lambda1();
    std::map<int, int> counts; // integer |k|^2 -> multiplicity
    for (int kx = -K; kx <= K; ++kx) {
        for (int ky = -K; ky <= K; ++ky) {
            if (kx == 0 && ky == 0) continue;
            const int ksq = kx * kx + ky * ky;
            if (l1 * ksq > lambda_max) continue;
            ++counts[ksq];
        }
    }
    std::vector<EigenvalueEntry> out;
    out.reserve(counts.size());
    for (const auto& [ksq, mult] : counts)
        out.push_back({l1 * ksq, mult});
    return out;
}

ConeSpec find_min_gap_cutoff(const TorusGrid& grid, double L_lip, double gamma,
                             double eta) {
    if (!(gamma > 0.0) || !(eta > 0.0) || !(L_lip >= 0.0))
        throw ConfigError("gap search needs gamma > 0, eta > 0, L >= 0");
    const double threshold = L_lip * (gamma + 1.0) * (gamma + 1.0) / (eta * gamma);

    const auto spectrum = enumerate_eigenvalues(grid, grid.max_band_ksq());
    for (std::size_t n = 0; n + 1 < spectrum.size(); ++n) {
        const double gap = spectrum[n + 1].lambda - spectrum[n].lambda;
        if (gap > threshold) {
            ConeSpec cone;
            cone.lambda_n = spectrum[n].lambda;
            cone.lambda_np1 = spectrum[n + 1].lambda;
            cone.gamma = gamma;
            for (std::size_t m = 0; m <= n; ++m)
                cone.modes_per_family += spectrum[m].multiplicity;
            cone.mode_count = 3 * cone.modes_per_family;
            return cone;
        }
    }
    throw ConfigError("no spectral gap in the dealiased band exceeds the "
                      "squeezing threshold");
}

double beta_n(const ConeSpec& cone, double L_lip, double eta) {
    return cone.lambda_np1 * eta - L_lip * (1.0 / cone.gamma + 1.0);
}

State project_low(const State& V, double lambda_n) {
    return State(truncate_modes(V.v, lambda_n), truncate_modes(V.theta, lambda_n));
}

State project_high(const State& V, double lambda_n) {
    const TorusGrid& g = V.grid();
    State out = V;
    for (int i = 0; i < g.rows(); ++i) {
        for (int j = 0; j < g.cols(); ++j) {
            if (g.ksq(i, j) <= lambda_n) {
                out.v.x.at(i, j) = Complex(0.0, 0.0);
                out.v.y.at(i, j) = Complex(0.0, 0.0);
                out.theta.at(i, j) = Complex(0.0, 0.0);
            }
        }
    }
    return out;
}

ConeObservation cone_test(const State& a, const State& b, const ModelParams& p,
                          const ConeSpec& cone) {
    const State delta = a - b;
    ConeObservation obs;
    obs.p_norm = state_dn_norm(project_low(delta, cone.lambda_n), p);
    obs.q_norm = state_dn_norm(project_high(delta, cone.lambda_n), p);
    obs.margin = cone.gamma * obs.p_norm - obs.q_norm;
    return obs;
}

State random_state_dn(const TorusGrid& grid, const ModelParams& p, uint64_t seed,
                      double slope, double max_ksq, double dn_norm) {
    State V(grid);
    V.v = random_solenoidal(grid, seed, slope, max_ksq, 1.0);
    V.theta = random_scalar(grid, seed + 0x9e3779b9ull, slope, max_ksq, 1.0);
    const double n = state_dn_norm(V, p);
    V *= dn_norm / n;
    return V;
}

namespace {

double nonlinearity_l2(const Nonlinearity& a, const Nonlinearity& b) {
    const SpectralVector dv = a.r1 - b.r1;
    const SpectralScalar ds = a.r2 - b.r2;
    const double nv = sobolev_norm(dv, 0.0);
    const double ns = sobolev_norm(ds, 0.0);
    return std::sqrt(nv * nv + ns * ns);
}

} // namespace

CalibrationResult calibrate_lipschitz(const ModelParams& p, int n_samples,
                                      uint64_t seed) {
    if (n_samples < 1)
        throw ConfigError("calibration needs at least one sample");
    const TorusGrid& g = p.grid();
    const double max_ksq = g.max_band_ksq();

    Rng rng(seed);
    CalibrationResult out;
    out.samples = n_samples;
    for (int s = 0; s < n_samples; ++s) {
        const double n1 = (0.2 + 0.8 * rng.next_unit()) * p.rho_tilde;
        const uint64_t s1 = rng.next_u64();
        const uint64_t s2 = rng.next_u64();
        State V1 = random_state_dn(g, p, s1, -1.0, max_ksq, n1);
        State V2(g);
        if (s % 2 == 0) {
            const double n2 = (0.2 + 0.8 * rng.next_unit()) * p.rho_tilde;
            V2 = random_state_dn(g, p, s2, -1.0, max_ksq, n2);
        } else {
            V2 = V1 + random_state_dn(g, p, s2, -1.0, max_ksq, 1e-3 * n1);
        }
        const Nonlinearity f1 = eval_nonlinearity(V1, p);
        const Nonlinearity f2 = eval_nonlinearity(V2, p);
        const double den = state_dn_norm(V1 - V2, p);
        if (den == 0.0) continue;
        const double ratio = nonlinearity_l2(f1, f2) / den;
        if (ratio > out.max_ratio) out.max_ratio = ratio;
    }
    return out;
}

PairExperimentResult run_pair_experiment(const State& a0, const State& b0,
                                         const ModelParams& p, const ConeSpec& cone,
                                         const PairExperimentOptions& opt) {
    if (!(opt.dt > 0.0) || !(opt.t_end > 0.0) || opt.sample_stride < 1)
        throw ConfigError("pair experiment needs positive dt, t_end and stride");

    State a = a0;
    State b = b0;
    for (State* s : {&a, &b}) {
        apply_dealias_mask(s->v);
        apply_dealias_mask(s->theta);
        s->v = leray_project(s->v);
        canonicalize(*s);
    }

    PairExperimentResult res;
    res.beta_n_used = opt.beta_n;

    const long steps = std::lround(opt.t_end / opt.dt);
    auto sample = [&](long n) {
        const double t = n * opt.dt;
        const ConeObservation obs = cone_test(a, b, p, cone);
        res.times.push_back(t);
        res.p_norms.push_back(obs.p_norm);
        res.q_norms.push_back(obs.q_norm);
        res.margins.push_back(obs.margin);
    };

    sample(0);
    for (long n = 0; n < steps; ++n) {
        const double t = n * opt.dt;
        if (opt.scheme == Scheme::if_rk2) {
            a = step_if_rk2(a, opt.dt, p, SystemKind::prepared, t);
            b = step_if_rk2(b, opt.dt, p, SystemKind::prepared, t);
        } else {
            a = step_if_euler(a, opt.dt, p, SystemKind::prepared, t);
            b = step_if_euler(b, opt.dt, p, SystemKind::prepared, t);
        }
        if ((n + 1) % opt.sample_stride == 0 || n + 1 == steps) sample(n + 1);
    }

    // Entry and invariance: once the margin first turns non-negative it may
    // not drop below -tol at any later sample.
    const std::size_t count = res.margins.size();
    std::size_t entry = count;
    for (std::size_t i = 0; i < count; ++i) {
        if (res.margins[i] >= 0.0) {
            entry = i;
            break;
        }
    }
    res.invariance_ok = true;
    res.min_margin_after_entry = 0.0;
    if (entry < count) {
        res.entry_time = res.times[entry];
        double mmin = res.margins[entry];
        for (std::size_t i = entry; i < count; ++i) {
            mmin = std::min(mmin, res.margins[i]);
            if (res.margins[i] < -opt.invariance_tol) res.invariance_ok = false;
        }
        res.min_margin_after_entry = mmin;
    }

    // Decay: every maximal outside excursion must sit under its own
    // exponential envelope.
    res.decay_ok = true;
    std::size_t i = 0;
    bool fitted = false;
    while (i < count) {
        if (res.margins[i] >= 0.0) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < count && res.margins[j] < 0.0) ++j;
        const double t0 = res.times[i];
        const double q0 = res.q_norms[i];
        for (std::size_t m = i; m < j; ++m) {
            const double envelope =
                q0 * std::exp(-opt.beta_n * (res.times[m] - t0)) * (1.0 + opt.decay_tol);
            if (res.q_norms[m] > envelope) res.decay_ok = false;
        }
        if (!fitted && j - i >= 3) {
            // Least-squares slope of log q on the first long excursion.
            bool positive = true;
            for (std::size_t m = i; m < j; ++m) positive = positive && res.q_norms[m] > 0.0;
            if (positive) {
                double st = 0, sl = 0, stt = 0, stl = 0;
                const double n = static_cast<double>(j - i);
                for (std::size_t m = i; m < j; ++m) {
                    const double t = res.times[m];
                    const double l = std::log(res.q_norms[m]);
                    st += t;
                    sl += l;
                    stt += t * t;
                    stl += t * l;
                }
                const double denom = n * stt - st * st;
                if (denom > 0.0) {
                    res.fitted_exponent = -(n * stl - st * sl) / denom;
                    fitted = true;
                }
            }
        }
        i = j;
    }
    return res;
}

} // namespace adm
