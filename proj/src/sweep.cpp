#include "tritangle/sweep.hpp"

#include "tritangle/error.hpp"
#include "tritangle/factory.hpp"
#include "tritangle/io.hpp"
#include "tritangle/parallel.hpp"

#include <algorithm>
#include <string>

namespace tritangle {

std::vector<SweepRow> sweep_ghzw(const SweepConfig& cfg) {
  if (!(cfg.from > 1.0 / 3.0 && cfg.from < cfg.to && cfg.to <= 1.0) || cfg.steps < 2) {
    throw Error(ErrorCode::kBadRange, "need 1/3 < from < to <= 1 and steps >= 2, got from=" +
                                          format_double(cfg.from) + " to=" + format_double(cfg.to) +
                                          " steps=" + std::to_string(cfg.steps));
  }
  std::vector<SweepRow> rows(static_cast<std::size_t>(cfg.steps));
  TauOptions tau = cfg.tau;
  tau.threads = 1;
  parallel_for(rows.size(), cfg.threads, [&](std::size_t i) {
    SweepRow& row = rows[i];
    row.x = i + 1 == rows.size()
                ? cfg.to
                : cfg.from + (cfg.to - cfg.from) * static_cast<double>(i) / (cfg.steps - 1);
    const MixedState rho = make_ghzw_mix(row.x);
    const Spectrum spec = spectral_decompose(rho, cfg.cutoff);
    row.rank = spec.rank();
    row.mu1 = spec.eigenvalues[0];
    try {
      const TauMatrix t = build_tau(spec, tau);
      row.fa = f_a(t);
      row.degenerate_leading = t.degenerate_leading();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kDominantTangleZero) throw;
    }
  });
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "x,F_a,rank,mu1\n";
  for (const auto& r : rows) {
    out += format_double(r.x) + "," + (r.fa ? format_double(*r.fa) : std::string("undefined")) +
           "," + std::to_string(r.rank) + "," + format_double(r.mu1) + "\n";
  }
  return out;
}

std::string sweep_plotdata(const std::vector<SweepRow>& rows) {
  std::string out;
  for (const auto& r : rows) {
    if (r.fa) out += format_double(r.x) + " " + format_double(*r.fa) + "\n";
  }
  return out;
}

std::optional<double> sweep_threshold(const std::vector<SweepRow>& rows, double plateau_tol) {
  std::size_t i = 0;
  while (i < rows.size() && !(rows[i].fa && *rows[i].fa > plateau_tol)) ++i;
  if (i == 0 || i >= rows.size()) return std::nullopt;
  const double x0 = rows[i - 1].x;
  const double x1 = rows[i].x;
  const double f1 = *rows[i].fa;
  if (i + 1 < rows.size() && rows[i + 1].fa && *rows[i + 1].fa > f1) {
    const double slope = (*rows[i + 1].fa - f1) / (rows[i + 1].x - x1);
    return std::clamp(x1 - f1 / slope, x0, x1);
  }
  return x1;
}

}  // namespace tritangle
