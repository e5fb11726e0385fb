#include "adm/runner.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <limits>
#include <map>
#include <mutex>
#include <thread>
#include <vector>

#include <json.hpp>

#include "adm/diagnostics.hpp"
#include "adm/io.hpp"
#include "adm/squeezing.hpp"
#include "adm/verify.hpp"
#include "adm/version.hpp"

namespace adm {
namespace {

using nlohmann::json;
namespace fs = std::filesystem;

std::string path_join(const std::string& dir, const std::string& name) {
    return (fs::path(dir) / name).string();
}

std::string fmt17(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_json(const std::string& path, const json& j) {
    write_text_file(path, j.dump(2) + "\n");
}

json config_json(const RunConfig& cfg) {
    json j = json::object();
    for (const auto& [k, v] : cfg.resolved) j[k] = v;
    return j;
}

json optional_json(const std::optional<double>& v) {
    return v ? json(*v) : json();
}

json radii_json(const AbsorbingRadii& r) {
    json j;
    j["r1sq"] = r.r1sq;
    j["r2sq"] = r.r2sq;
    j["s1sq"] = r.s1sq;
    j["s2sq"] = r.s2sq;
    j["beta"] = r.beta;
    j["r"] = r.r;
    j["s"] = r.s;
    j["t_r"] = optional_json(r.t_r);
    j["t_s"] = optional_json(r.t_s);
    return j;
}

json cone_json(const ConeSpec& c) {
    json j;
    j["lambda_n"] = c.lambda_n;
    j["lambda_np1"] = c.lambda_np1;
    j["gap"] = c.lambda_np1 - c.lambda_n;
    j["modes_per_family"] = c.modes_per_family;
    j["mode_count"] = c.mode_count;
    j["gamma"] = c.gamma;
    return j;
}

json report_base(const RunConfig& cfg) {
    json j;
    j["adm_version"] = kVersion;
    j["experiment"] = cfg.experiment;
    j["config"] = config_json(cfg);
    return j;
}

int run_simulate(const RunConfig& cfg, const std::string& dir) {
    AbsorbingRadii radii = absorbing_radii(cfg.params);

    std::vector<DiagnosticsRow> rows;
    double y0 = 0.0, z0 = 0.0;
    long samples = 0;
    long last_snapshot_step = -1;
    const Observer observe = [&](long step, double t, const State& V) {
        if (rows.empty()) {
            const NormDiagnostics nd = norm_diagnostics(V, cfg.params);
            y0 = nd.y;
            z0 = nd.z;
        }
        rows.push_back(make_row(t, V, cfg.params, y0, z0));
        if (cfg.snapshot_stride > 0 && samples % cfg.snapshot_stride == 0) {
            char name[40];
            std::snprintf(name, sizeof(name), "snapshot_%08ld.bin", step);
            write_snapshot(path_join(dir, name), V);
            last_snapshot_step = step;
        }
        ++samples;
    };

    const SimulationResult res = simulate(cfg.initial, cfg.params, cfg.sim, observe);
    if (cfg.snapshot_stride > 0 && last_snapshot_step != res.steps) {
        char name[40];
        std::snprintf(name, sizeof(name), "snapshot_%08ld.bin", res.steps);
        write_snapshot(path_join(dir, name), res.final_state);
    }
    write_diagnostics_csv(path_join(dir, "diagnostics.csv"), rows, cfg.resolved);

    // Entry times: t_r from the first-level norms against (r1^2, r2^2),
    // t_s from the second-level norms on the t >= t_r tail.
    if (!rows.empty()) {
        std::vector<double> times(rows.size()), excess(rows.size());
        for (size_t i = 0; i < rows.size(); ++i) {
            times[i] = rows[i].t;
            excess[i] = std::max(rows[i].y - radii.r1sq, rows[i].z - radii.r2sq);
        }
        radii.t_r = detect_entry_time(times, excess, 0.0);
        if (radii.t_r) {
            std::vector<double> t2, e2;
            for (size_t i = 0; i < rows.size(); ++i) {
                if (rows[i].t < *radii.t_r) continue;
                t2.push_back(rows[i].t);
                e2.push_back(std::max(rows[i].Y - radii.s1sq, rows[i].Z - radii.s2sq));
            }
            if (!t2.empty()) radii.t_s = detect_entry_time(t2, e2, 0.0);
        }
    }

    json j = report_base(cfg);
    j["grid"] = {{"L", cfg.grid.L()}, {"M", cfg.grid.M()}};
    j["steps"] = res.steps;
    j["t_end"] = res.t_end;
    j["samples"] = rows.size();
    j["initial"] = {{"y", y0}, {"z", z0}};
    if (!rows.empty()) {
        const DiagnosticsRow& last = rows.back();
        j["final"] = {{"y", last.y}, {"z", last.z}, {"Y", last.Y}, {"Z", last.Z}};
    }
    j["radii"] = radii_json(radii);
    j["mean_strip_warnings"] = mean_strip_count().load();
    write_json(path_join(dir, "summary.json"), j);
    return 0;
}

struct LipschitzChoice {
    double used = 0.0;
    json report;
};

LipschitzChoice choose_lipschitz(const ModelParams& p, const TorusGrid& grid,
                                 int calibrate_samples, uint64_t seed,
                                 double extra) {
    LipschitzChoice c;
    const double formula = lipschitz_constant(p, grid);
    c.report["formula"] = formula;
    if (calibrate_samples > 0) {
        const CalibrationResult cal = calibrate_lipschitz(p, calibrate_samples, seed);
        c.used = cal.max_ratio + extra;
        c.report["calibrated"] = cal.max_ratio;
        c.report["calibration_samples"] = cal.samples;
        c.report["extra"] = extra;
        const double scale =
            std::pow(p.N + 1.0, 1.5) * p.rho_tilde / grid.lambda1();
        if (scale > 0.0) c.report["implied_c"] = cal.max_ratio / scale;
        c.report["source"] = "calibrated";
    } else {
        c.used = formula;
        c.report["source"] = "formula";
    }
    c.report["used"] = c.used;
    return c;
}

int run_gap(const RunConfig& cfg, const std::string& dir) {
    const ModelParams& p = cfg.params;
    const LipschitzChoice lip =
        choose_lipschitz(p, cfg.grid, cfg.gap.calibrate_samples, cfg.gap.seed, 0.0);

    const char* used_name =
        p.eta_reduction == EtaReduction::min_coefficient ? "min_coefficient"
                                                         : "euclidean";
    const ConeSpec cone = find_min_gap_cutoff(cfg.grid, lip.used, p.gamma, p.eta());
    const double bn = beta_n(cone, lip.used, p.eta());

    json reductions = json::object();
    const std::pair<const char*, double> etas[] = {
        {"min_coefficient", p.eta_min()}, {"euclidean", p.eta_euclidean()}};
    for (const auto& [name, eta] : etas) {
        json r;
        r["eta"] = eta;
        r["threshold"] = lip.used * (p.gamma + 1.0) * (p.gamma + 1.0) / (eta * p.gamma);
        try {
            const ConeSpec c = find_min_gap_cutoff(cfg.grid, lip.used, p.gamma, eta);
            r["cone"] = cone_json(c);
            r["beta_n"] = beta_n(c, lip.used, eta);
        } catch (const ConfigError& e) {
            r["cone"] = json();
            r["error"] = e.what();
        }
        reductions[name] = r;
    }

    std::vector<EigenvalueEntry> spectrum =
        enumerate_eigenvalues(cfg.grid, cone.lambda_np1);
    if (spectrum.size() > 32) spectrum.resize(32);
    json spec_json = json::array();
    for (const EigenvalueEntry& e : spectrum)
        spec_json.push_back({{"lambda", e.lambda}, {"multiplicity", e.multiplicity}});

    json j = report_base(cfg);
    j["lipschitz"] = lip.report;
    j["eta"] = {{"min_coefficient", p.eta_min()},
                {"euclidean", p.eta_euclidean()},
                {"used", p.eta()},
                {"reduction", used_name}};
    j["cone"] = cone_json(cone);
    j["beta_n"] = bn;
    j["reductions"] = reductions;
    j["radii"] = radii_json(absorbing_radii(p));
    j["spectrum"] = spec_json;
    j["pass"] = bn > 0.0;
    write_json(path_join(dir, "gap_report.json"), j);
    return bn > 0.0 ? 0 : 1;
}

// Seeded pair construction: a random base state inside the chi = 1 plateau
// plus a small split perturbation; `outside` starts the difference strictly
// high-mode, i.e. outside the cone.
PairExperimentResult run_one_pair(const RunConfig& cfg, const ConeSpec& cone,
                                  const PairExperimentOptions& popt, int index,
                                  bool outside) {
    const ModelParams& p = cfg.params;
    const TorusGrid& g = cfg.grid;
    const SqueezeOptions& so = cfg.squeeze;
    const uint64_t seed = so.seed + 1000ull * static_cast<uint64_t>(index + 1);
    const double base_norm = so.base_norm_factor * p.rho_tilde;
    const double max_ksq =
        std::min(4.0 * cone.lambda_np1, g.max_band_ksq());

    const State a0 = random_state_dn(g, p, seed, -2.0, max_ksq, base_norm);
    const double delta_norm = so.perturbation * base_norm;

    State dhigh = project_high(random_state_dn(g, p, seed + 2, -1.0, max_ksq, 1.0),
                               cone.lambda_n);
    const double nh = state_dn_norm(dhigh, p);
    State delta(g);
    if (outside) {
        if (nh > 0.0) delta = (delta_norm / nh) * dhigh;
    } else {
        State dlow = project_low(random_state_dn(g, p, seed + 1, -1.0, max_ksq, 1.0),
                                 cone.lambda_n);
        const double nl = state_dn_norm(dlow, p);
        if (nl > 0.0) delta += (delta_norm / nl) * dlow;
        if (nh > 0.0) delta += (0.3 * cone.gamma * delta_norm / nh) * dhigh;
    }
    const State b0 = a0 + delta;
    return run_pair_experiment(a0, b0, p, cone, popt);
}

int run_squeeze(const RunConfig& cfg, const std::string& dir) {
    const ModelParams& p = cfg.params;
    const SqueezeOptions& so = cfg.squeeze;
    const LipschitzChoice lip = choose_lipschitz(
        p, cfg.grid, so.calibrate_samples, so.seed, so.lipschitz_extra);

    const double eta = p.eta();
    const ConeSpec cone = find_min_gap_cutoff(cfg.grid, lip.used, p.gamma, eta);
    const double bn = beta_n(cone, lip.used, eta);

    const int n_pairs = std::max(1, so.pairs);
    int n_outside = static_cast<int>(std::lround(so.outside_fraction * n_pairs));
    n_outside = std::clamp(n_outside, 0, n_pairs);

    PairExperimentOptions popt;
    popt.t_end = cfg.sim.t_end;
    popt.dt = cfg.sim.dt;
    popt.sample_stride = cfg.sim.sample_stride;
    popt.scheme = cfg.sim.scheme;
    popt.beta_n = bn;

    std::vector<PairExperimentResult> results(n_pairs);
    std::vector<char> starts_outside(n_pairs, 0);
    for (int i = n_pairs - n_outside; i < n_pairs; ++i) starts_outside[i] = 1;

    std::atomic<int> next{0};
    std::atomic<bool> failed{false};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto work = [&]() {
        for (;;) {
            const int i = next.fetch_add(1);
            if (i >= n_pairs || failed.load()) return;
            try {
                results[i] = run_one_pair(cfg, cone, popt, i, starts_outside[i] != 0);
            } catch (...) {
                std::lock_guard<std::mutex> lock(error_mutex);
                if (!first_error) first_error = std::current_exception();
                failed.store(true);
                return;
            }
        }
    };
    const int workers = std::clamp(worker_count(), 1, n_pairs);
    if (workers <= 1) {
        work();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(workers);
        for (int w = 0; w < workers; ++w) pool.emplace_back(work);
        for (std::thread& t : pool) t.join();
    }
    if (first_error) std::rethrow_exception(first_error);

    const double nan = std::numeric_limits<double>::quiet_NaN();
    bool all_invariance = true, all_decay = true;
    json pair_json = json::array();
    for (int i = 0; i < n_pairs; ++i) {
        const PairExperimentResult& r = results[i];
        all_invariance = all_invariance && r.invariance_ok;
        all_decay = all_decay && r.decay_ok;

        std::vector<DiagnosticsRow> rows(r.times.size());
        for (size_t s = 0; s < r.times.size(); ++s) {
            DiagnosticsRow& row = rows[s];
            row.t = r.times[s];
            row.y = row.z = row.Y = row.Z = nan;
            row.R1sq = row.R2sq = row.chi_value = row.dn_state_norm = nan;
            row.p_norm = r.p_norms[s];
            row.q_norm = r.q_norms[s];
            row.cone_margin = r.margins[s];
        }
        std::map<std::string, std::string> meta = cfg.resolved;
        meta["pair.index"] = std::to_string(i);
        meta["pair.start"] = starts_outside[i] ? "outside" : "inside";
        meta["pair.beta_n"] = fmt17(r.beta_n_used);
        char name[40];
        std::snprintf(name, sizeof(name), "squeeze_pair_%03d.csv", i);
        write_diagnostics_csv(path_join(dir, name), rows, meta);

        json pj;
        pj["index"] = i;
        pj["start"] = starts_outside[i] ? "outside" : "inside";
        pj["invariance_ok"] = r.invariance_ok;
        pj["decay_ok"] = r.decay_ok;
        pj["entry_time"] = optional_json(r.entry_time);
        pj["fitted_exponent"] = optional_json(r.fitted_exponent);
        pj["min_margin_after_entry"] = r.min_margin_after_entry;
        pj["samples"] = r.times.size();
        pair_json.push_back(pj);
    }

    const bool pass = all_invariance && all_decay && bn > 0.0;
    json j = report_base(cfg);
    j["lipschitz"] = lip.report;
    j["eta"] = {{"used", eta}};
    j["cone"] = cone_json(cone);
    j["beta_n"] = bn;
    j["pairs"] = pair_json;
    j["verdict"] = {{"all_invariance", all_invariance},
                    {"all_decay", all_decay},
                    {"beta_n_positive", bn > 0.0},
                    {"pass", pass}};
    write_json(path_join(dir, "squeeze_report.json"), j);
    return pass ? 0 : 1;
}

int run_verify(const RunConfig& cfg, const std::string& dir) {
    std::vector<CheckResult> checks = verify_deconvolution(
        cfg.grid, cfg.params.alpha, cfg.verify.n_max, cfg.verify.seed);
    const std::vector<CheckResult> model =
        verify_model_identities(cfg.params, cfg.verify.seed + 1);
    checks.insert(checks.end(), model.begin(), model.end());

    json arr = json::array();
    for (const CheckResult& c : checks) {
        json cj;
        cj["name"] = c.name;
        cj["pass"] = c.pass;
        cj["observed"] = c.observed;
        cj["tolerance"] = c.tolerance;
        if (!c.detail.empty()) cj["detail"] = c.detail;
        arr.push_back(cj);
    }
    const bool ok = all_pass(checks);
    json j = report_base(cfg);
    j["checks"] = arr;
    j["count"] = checks.size();
    j["pass"] = ok;
    write_json(path_join(dir, "verify_report.json"), j);
    return ok ? 0 : 1;
}

} // namespace

int worker_count() {
    if (const char* env = std::getenv("ADM_THREADS")) {
        char* end = nullptr;
        const long v = std::strtol(env, &end, 10);
        if (end == env || *end != '\0' || v < 1)
            throw ConfigError("ADM_THREADS must be a positive integer, got '" +
                                  std::string(env) + "'",
                              "ADM_THREADS");
        return static_cast<int>(std::min(v, 256L));
    }
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

int run_config(const RunConfig& cfg, const std::string& out_dir) {
    std::error_code ec;
    fs::create_directories(out_dir, ec);
    if (ec)
        throw ConfigError("cannot create output directory '" + out_dir +
                          "': " + ec.message());
    cfg.params.validate();
    worker_count(); // reject malformed ADM_THREADS before any work
    if (cfg.experiment == "simulate") return run_simulate(cfg, out_dir);
    if (cfg.experiment == "gap") return run_gap(cfg, out_dir);
    if (cfg.experiment == "squeeze") return run_squeeze(cfg, out_dir);
    if (cfg.experiment == "verify-ops") return run_verify(cfg, out_dir);
    throw ConfigError("unknown experiment '" + cfg.experiment + "'", "experiment");
}

} // namespace adm
