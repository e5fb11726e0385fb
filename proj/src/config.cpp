#include "adm/config.hpp"

#include <cctype>
#include <cerrno>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "adm/fields.hpp"

namespace adm {
namespace {

std::string trim(const std::string& s) {
    std::size_t a = 0;
    std::size_t b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return s.substr(a, b - a);
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

// Flat key = value schema with '#' comments. Every lookup records the
// effective value; leftover keys are schema violations.
class KvReader {
public:
    explicit KvReader(const std::string& text) {
        std::istringstream in(text);
        std::string line;
        int lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            const std::size_t hash = line.find('#');
            if (hash != std::string::npos) line = line.substr(0, hash);
            line = trim(line);
            if (line.empty()) continue;
            const std::size_t eq = line.find('=');
            if (eq == std::string::npos)
                throw ConfigError("line " + std::to_string(lineno) +
                                  ": expected key = value");
            const std::string key = trim(line.substr(0, eq));
            const std::string value = trim(line.substr(eq + 1));
            if (key.empty())
                throw ConfigError("line " + std::to_string(lineno) + ": empty key");
            auto it = entries_.find(key);
            if (it != entries_.end())
                throw ConfigError("duplicate key '" + key + "' (lines " +
                                      std::to_string(it->second.line) + " and " +
                                      std::to_string(lineno) + ")",
                                  key);
            entries_[key] = {value, lineno, false};
        }
    }

    bool has(const std::string& key) const { return entries_.count(key) != 0; }

    std::string get_string(const std::string& key, const std::string& def) {
        const std::string v = raw(key, def);
        resolved_[key] = v;
        return v;
    }

    std::string require_string(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError("missing required key '" + key + "'", key);
        it->second.used = true;
        resolved_[key] = it->second.value;
        return it->second.value;
    }

    double get_double(const std::string& key, double def) {
        double v = def;
        auto it = entries_.find(key);
        if (it != entries_.end()) {
            it->second.used = true;
            v = parse_double(key, it->second);
        }
        resolved_[key] = format_double(v);
        return v;
    }

    long get_long(const std::string& key, long def) {
        long v = def;
        auto it = entries_.find(key);
        if (it != entries_.end()) {
            it->second.used = true;
            v = parse_long(key, it->second);
        }
        resolved_[key] = std::to_string(v);
        return v;
    }

    long require_long(const std::string& key) {
        auto it = entries_.find(key);
        if (it == entries_.end())
            throw ConfigError("missing required key '" + key + "'", key);
        it->second.used = true;
        const long v = parse_long(key, it->second);
        resolved_[key] = std::to_string(v);
        return v;
    }

    uint64_t get_seed(const std::string& key, uint64_t def) {
        uint64_t v = def;
        auto it = entries_.find(key);
        if (it != entries_.end()) {
            it->second.used = true;
            errno = 0;
            char* end = nullptr;
            v = std::strtoull(it->second.value.c_str(), &end, 10);
            if (errno != 0 || end == it->second.value.c_str() || *end != '\0')
                throw parse_error(key, it->second, "an unsigned integer");
        }
        resolved_[key] = std::to_string(v);
        return v;
    }

    // One of the listed literals.
    std::string get_choice(const std::string& key, const std::string& def,
                           const std::set<std::string>& allowed) {
        const std::string v = get_string(key, def);
        if (!allowed.count(v)) {
            std::string list;
            for (const std::string& a : allowed) {
                if (!list.empty()) list += ", ";
                list += a;
            }
            throw ConfigError("key '" + key + "': '" + v + "' is not one of {" +
                                  list + "}",
                              key);
        }
        return v;
    }

    void finish() const {
        for (const auto& [key, e] : entries_)
            if (!e.used)
                throw ConfigError("unknown key '" + key + "' (line " +
                                      std::to_string(e.line) + ")",
                                  key);
    }

    const std::map<std::string, std::string>& resolved() const { return resolved_; }

private:
    struct Entry {
        std::string value;
        int line = 0;
        bool used = false;
    };

    ConfigError parse_error(const std::string& key, const Entry& e,
                            const std::string& expected) const {
        return ConfigError("key '" + key + "' (line " + std::to_string(e.line) +
                               "): '" + e.value + "' is not " + expected,
                           key);
    }

    double parse_double(const std::string& key, const Entry& e) const {
        errno = 0;
        char* end = nullptr;
        const double v = std::strtod(e.value.c_str(), &end);
        if (errno != 0 || end == e.value.c_str() || *end != '\0')
            throw parse_error(key, e, "a number");
        return v;
    }

    long parse_long(const std::string& key, const Entry& e) const {
        errno = 0;
        char* end = nullptr;
        const long v = std::strtol(e.value.c_str(), &end, 10);
        if (errno != 0 || end == e.value.c_str() || *end != '\0')
            throw parse_error(key, e, "an integer");
        return v;
    }

    std::string raw(const std::string& key, const std::string& def) {
        auto it = entries_.find(key);
        if (it == entries_.end()) return def;
        it->second.used = true;
        return it->second.value;
    }

    std::map<std::string, Entry> entries_;
    std::map<std::string, std::string> resolved_;
};

SpectralScalar build_scalar(KvReader& kv, const TorusGrid& grid,
                            const std::string& prefix, uint64_t default_seed) {
    const std::string kind = kv.get_choice(
        prefix + ".kind", "zero", {"zero", "cosine", "sine", "random"});
    const double amplitude = kv.get_double(prefix + ".amplitude", 1.0);
    const long kx = kv.get_long(prefix + ".kx", 1);
    const long ky = kv.get_long(prefix + ".ky", 0);
    const uint64_t seed = kv.get_seed(prefix + ".seed", default_seed);
    const double slope = kv.get_double(prefix + ".slope", -1.0);
    const double max_ksq = kv.get_double(prefix + ".max_ksq", grid.max_band_ksq());
    const double norm = kv.get_double(prefix + ".norm", 1.0);

    const int half = grid.M() / 2;
    if (kind == "cosine" || kind == "sine") {
        if (std::abs(kx) >= half || std::abs(ky) >= half || (kx == 0 && ky == 0))
            throw ConfigError("key '" + prefix + ".kx/.ky': mode outside the grid",
                              prefix + ".kx");
    }
    if (kind == "zero") return SpectralScalar(grid);
    if (kind == "cosine")
        return cosine_mode(grid, static_cast<int>(kx), static_cast<int>(ky), amplitude);
    if (kind == "sine")
        return sine_mode(grid, static_cast<int>(kx), static_cast<int>(ky), amplitude);
    return random_scalar(grid, seed, slope, max_ksq, norm);
}

SpectralVector build_velocity(KvReader& kv, const TorusGrid& grid) {
    const std::string kind = kv.get_choice("ic.v.kind", "zero",
                                           {"zero", "taylor_green", "random"});
    const double amplitude = kv.get_double("ic.v.amplitude", 1.0);
    const long m = kv.get_long("ic.v.m", 1);
    const uint64_t seed = kv.get_seed("ic.v.seed", 201);
    const double slope = kv.get_double("ic.v.slope", -1.0);
    const double max_ksq = kv.get_double("ic.v.max_ksq", grid.max_band_ksq());
    const double norm = kv.get_double("ic.v.norm", 1.0);

    if (kind == "zero") return SpectralVector(grid);
    if (kind == "taylor_green") {
        if (m < 1 || m >= grid.M() / 2)
            throw ConfigError("key 'ic.v.m': cell wavenumber outside the grid",
                              "ic.v.m");
        return taylor_green(grid, static_cast<int>(m), amplitude);
    }
    return random_solenoidal(grid, seed, slope, max_ksq, norm);
}

} // namespace

RunConfig parse_config_text(const std::string& text) {
    KvReader kv(text);

    const double L = kv.get_double("grid.L", 2.0 * TorusGrid::pi());
    const long M = kv.require_long("grid.M");
    if (M < 4 || M > 4096)
        throw ConfigError("grid.M must be in [4, 4096]", "grid.M");
    const TorusGrid grid(L, static_cast<int>(M));

    RunConfig cfg(grid);

    cfg.params.nu = kv.get_double("params.nu", 1.0);
    cfg.params.kappa = kv.get_double("params.kappa", 1.0);
    cfg.params.alpha = kv.get_double("params.alpha", 1.0);
    cfg.params.N = static_cast<int>(kv.get_long("params.N", 0));
    cfg.params.rho_tilde = kv.get_double("params.rho_tilde", 1.0);
    cfg.params.gamma = kv.get_double("params.gamma", 1.0);
    cfg.params.lipschitz_c = kv.get_double("params.lipschitz_c", 1.0);
    cfg.params.c4 = kv.get_double("params.c4", 1.0);
    cfg.params.eta_reduction =
        kv.get_choice("params.eta_reduction", "min", {"min", "euclidean"}) == "min"
            ? EtaReduction::min_coefficient
            : EtaReduction::euclidean;
    cfg.params.forcing_f = build_scalar(kv, grid, "forcing", 101);
    cfg.params.validate();

    cfg.initial.v = build_velocity(kv, grid);
    cfg.initial.theta = build_scalar(kv, grid, "ic.theta", 202);

    cfg.sim.t_end = kv.get_double("time.t_end", 1.0);
    cfg.sim.dt = kv.get_double("time.dt", 1e-3);
    cfg.sim.scheme = kv.get_choice("time.scheme", "if_rk2", {"if_rk2", "if_euler"}) ==
                             "if_rk2"
                         ? Scheme::if_rk2
                         : Scheme::if_euler;
    cfg.sim.cfl_safety = kv.get_double("time.cfl_safety", 0.5);
    cfg.sim.sample_stride = kv.get_long("output.stride", 1);
    cfg.snapshot_stride = kv.get_long("output.snapshot_stride", 0);

    if (!kv.has("experiment"))
        throw ConfigError("missing required key 'experiment'", "experiment");
    cfg.experiment = kv.get_choice("experiment", "simulate",
                                   {"simulate", "gap", "squeeze", "verify-ops"});
    cfg.sim.system = kv.get_choice("simulate.system", "full", {"full", "prepared"}) ==
                             "full"
                         ? SystemKind::full
                         : SystemKind::prepared;

    cfg.gap.calibrate_samples =
        static_cast<int>(kv.get_long("gap.calibrate_samples", 0));
    cfg.gap.seed = kv.get_seed("gap.seed", 2001);

    cfg.squeeze.pairs = static_cast<int>(kv.get_long("squeeze.pairs", 4));
    cfg.squeeze.seed = kv.get_seed("squeeze.seed", 3001);
    cfg.squeeze.calibrate_samples =
        static_cast<int>(kv.get_long("squeeze.calibrate_samples", 0));
    cfg.squeeze.lipschitz_extra = kv.get_double("squeeze.lipschitz_extra", 1.0);
    cfg.squeeze.base_norm_factor = kv.get_double("squeeze.base_norm_factor", 0.3);
    cfg.squeeze.perturbation = kv.get_double("squeeze.perturbation", 1e-2);
    cfg.squeeze.outside_fraction = kv.get_double("squeeze.outside_fraction", 0.3);

    cfg.verify.n_max = static_cast<int>(kv.get_long("verify.n_max", 8));
    cfg.verify.seed = kv.get_seed("verify.seed", 1001);

    if (!(cfg.sim.dt > 0.0))
        throw ConfigError("time.dt must be positive", "time.dt");
    if (!(cfg.sim.t_end >= 0.0))
        throw ConfigError("time.t_end must be non-negative", "time.t_end");
    if (cfg.sim.sample_stride < 1)
        throw ConfigError("output.stride must be at least 1", "output.stride");
    if (cfg.snapshot_stride < 0)
        throw ConfigError("output.snapshot_stride must be non-negative",
                          "output.snapshot_stride");
    if (cfg.squeeze.pairs < 1)
        throw ConfigError("squeeze.pairs must be at least 1", "squeeze.pairs");
    if (cfg.verify.n_max < 0)
        throw ConfigError("verify.n_max must be non-negative", "verify.n_max");

    kv.finish();
    cfg.resolved = kv.resolved();
    return cfg;
}

RunConfig parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ConfigError("cannot open config file '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config_text(buf.str());
}

} // namespace adm
