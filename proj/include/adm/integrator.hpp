#pragma once

#include <functional>

#include "adm/model.hpp"

namespace adm {

enum class Scheme { if_euler, if_rk2 };
enum class SystemKind { full, prepared };

// One integrating-factor step: the diffusion semigroup is applied exactly
// per mode, the remaining terms are advanced by Euler or Heun. With the
// nonlinearity identically zero a step reproduces e^{dt nu Lap} exactly.
State step_if_euler(const State& V, double dt, const ModelParams& p,
                    SystemKind system = SystemKind::full, double t = 0.0,
                    double cfl_safety = 0.5);
State step_if_rk2(const State& V, double dt, const ModelParams& p,
                  SystemKind system = SystemKind::full, double t = 0.0,
                  double cfl_safety = 0.5);

struct SimulateOptions {
    double t_end = 1.0;
    double dt = 1e-3;
    long sample_stride = 1;
    Scheme scheme = Scheme::if_rk2;
    SystemKind system = SystemKind::full;
    double cfl_safety = 0.5;
};

struct SimulationResult {
    State final_state;
    long steps = 0;
    double t_end = 0.0;
};

// Observer fires on the initial state, every sample_stride-th step, and the
// final step. Initial data is band-limited, projected and canonicalized
// before the first step; a non-finite state aborts with NumericalError.
using Observer = std::function<void(long step, double t, const State& V)>;

SimulationResult simulate(const State& V0, const ModelParams& p,
                          const SimulateOptions& opt, const Observer& observe = {});

} // namespace adm
