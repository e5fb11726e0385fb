#pragma once

#include <string>

#include "adm/config.hpp"

namespace adm {

// Executes the configured experiment and writes its artifacts into out_dir
// (created if absent). Returns 0 on success, 1 when the experiment reaches a
// failing verdict; configuration and numerical problems surface as the usual
// exceptions.
int run_config(const RunConfig& cfg, const std::string& out_dir);

// Worker cap for ensemble experiments: ADM_THREADS when set (must be a
// positive integer), hardware concurrency otherwise.
int worker_count();

} // namespace adm
