#pragma once

#include <map>
#include <string>

#include "adm/integrator.hpp"
#include "adm/model.hpp"

namespace adm {

struct GapOptions {
    int calibrate_samples = 0; // 0: use the a-priori Lipschitz formula
    uint64_t seed = 2001;
};

struct SqueezeOptions {
    int pairs = 4;
    uint64_t seed = 3001;
    int calibrate_samples = 0;
    double lipschitz_extra = 1.0;    // additive margin for the linear couplings
    double base_norm_factor = 0.3;   // base state dn-norm over rho_tilde
    double perturbation = 1e-2;      // pair separation over base dn-norm
    double outside_fraction = 0.3;   // pairs starting outside the cone
};

struct VerifyOptions {
    int n_max = 8;
    uint64_t seed = 1001;
};

// Fully resolved run description. `resolved` echoes every key of the flat
// key = value schema, defaults included, and is reproduced in all outputs.
struct RunConfig {
    TorusGrid grid;
    ModelParams params;
    State initial;
    std::string experiment;
    SimulateOptions sim;
    long snapshot_stride = 0;
    GapOptions gap;
    SqueezeOptions squeeze;
    VerifyOptions verify;
    std::map<std::string, std::string> resolved;

    explicit RunConfig(const TorusGrid& g) : grid(g), params(g), initial(g) {}
};

RunConfig parse_config_text(const std::string& text);
RunConfig parse_config_file(const std::string& path);

} // namespace adm
