#pragma once

// Derivative-free coordinate search with golden-section line searches and
// seeded random restarts.

#include <cstdint>
#include <functional>
#include <vector>

namespace tritangle {

enum class ParamKind {
  /// Unconstrained nonnegative weight; callers normalize.
  kMagnitude,
  /// Angle, searched over a full period around the current value.
  kPhase,
};

struct OptimizerConfig {
  int restarts = 32;
  int max_sweeps = 200;
  double tol = 1e-9;
  int line_iterations = 40;
  std::uint64_t seed = 0;
  int threads = 1;
};

struct OptimResult {
  double value = 0.0;
  std::vector<double> point;
  int best_restart = -1;
  long evaluations = 0;
  /// Sweeps used by the winning restart.
  int sweeps = 0;
  int restarts = 0;
};

using Objective = std::function<double(const std::vector<double>&)>;

/// Maximizes `f`. Restart 0 starts from all magnitudes 1 and phases 0; the
/// others draw magnitudes |N(0,1)| and uniform phases from the stream
/// (seed, restart). Ties keep the lowest restart index.
OptimResult maximize(const Objective& f, const std::vector<ParamKind>& kinds,
                     const OptimizerConfig& cfg);

}  // namespace tritangle
