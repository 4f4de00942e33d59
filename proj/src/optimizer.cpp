#include "tritangle/optimizer.hpp"

#include "tritangle/parallel.hpp"
#include "tritangle/random.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace tritangle {

namespace {

struct RestartOutcome {
  double value = 0.0;
  std::vector<double> point;
  long evaluations = 0;
  int sweeps = 0;
};

RestartOutcome run_restart(const Objective& f, const std::vector<ParamKind>& kinds,
                           const OptimizerConfig& cfg, int restart) {
  const std::size_t n = kinds.size();
  std::vector<double> x(n);
  if (restart == 0) {
    for (std::size_t i = 0; i < n; ++i) x[i] = kinds[i] == ParamKind::kMagnitude ? 1.0 : 0.0;
  } else {
    Rng rng = make_rng(cfg.seed, static_cast<std::uint64_t>(restart));
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
    for (std::size_t i = 0; i < n; ++i) {
      x[i] = kinds[i] == ParamKind::kMagnitude ? std::abs(normal(rng)) : angle(rng);
    }
  }
  RestartOutcome out;
  double best = f(x);
  ++out.evaluations;
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  for (int sweep = 0; sweep < cfg.max_sweeps; ++sweep) {
    const double start = best;
    for (std::size_t i = 0; i < n; ++i) {
      double lo, hi;
      if (kinds[i] == ParamKind::kPhase) {
        lo = x[i] - std::numbers::pi;
        hi = x[i] + std::numbers::pi;
      } else {
        double top = 0.0;
        for (std::size_t k = 0; k < n; ++k) {
          if (kinds[k] == ParamKind::kMagnitude) top = std::max(top, x[k]);
        }
        lo = 0.0;
        hi = std::max(2.0 * top, 1e-3);
      }
      std::vector<double> trial = x;
      auto eval = [&](double t) {
        trial[i] = t;
        ++out.evaluations;
        return f(trial);
      };
      double c = hi - invphi * (hi - lo);
      double d = lo + invphi * (hi - lo);
      double fc = eval(c), fd = eval(d);
      for (int it = 0; it < cfg.line_iterations; ++it) {
        if (fc >= fd) {
          hi = d;
          d = c;
          fd = fc;
          c = hi - invphi * (hi - lo);
          fc = eval(c);
        } else {
          lo = c;
          c = d;
          fc = fd;
          d = lo + invphi * (hi - lo);
          fd = eval(d);
        }
      }
      const double cand = fc >= fd ? c : d;
      const double fcand = std::max(fc, fd);
      if (fcand > best) {
        best = fcand;
        x[i] = cand;
      }
    }
    out.sweeps = sweep + 1;
    if (best - start < cfg.tol) break;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (kinds[i] == ParamKind::kPhase) x[i] = std::remainder(x[i], 2.0 * std::numbers::pi);
  }
  out.value = best;
  out.point = std::move(x);
  return out;
}

}  // namespace

OptimResult maximize(const Objective& f, const std::vector<ParamKind>& kinds,
                     const OptimizerConfig& cfg) {
  const int restarts = std::max(cfg.restarts, 1);
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  parallel_for(outcomes.size(), cfg.threads, [&](std::size_t r) {
    outcomes[r] = run_restart(f, kinds, cfg, static_cast<int>(r));
  });
  OptimResult res;
  res.restarts = restarts;
  for (std::size_t r = 0; r < outcomes.size(); ++r) {
    res.evaluations += outcomes[r].evaluations;
    if (res.best_restart < 0 || outcomes[r].value > res.value) {
      res.value = outcomes[r].value;
      res.point = outcomes[r].point;
      res.best_restart = static_cast<int>(r);
      res.sweeps = outcomes[r].sweeps;
    }
  }
  return res;
}

}  // namespace tritangle
