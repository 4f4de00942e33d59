#pragma once

// F_a along the GHZ/W mixture rho(x), written as CSV "x,F_a,rank,mu1".

#include "tritangle/quasi_pure.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tritangle {

struct SweepRow {
  double x = 0.0;
  std::optional<double> fa;  // empty when the approximation is inapplicable
  int rank = 0;
  double mu1 = 0.0;
  bool degenerate_leading = false;
};

struct SweepConfig {
  double from = 0.34;
  double to = 1.0;
  int steps = 100;
  double cutoff = kDefaultRankCutoff;
  double tol = kValidationTol;
  int threads = 1;
  TauOptions tau;
};

/// Throws BadRange unless 1/3 < from < to <= 1 and steps >= 2.
std::vector<SweepRow> sweep_ghzw(const SweepConfig& cfg);

std::string sweep_csv(const std::vector<SweepRow>& rows);
/// "x F_a" per line, inapplicable rows skipped.
std::string sweep_plotdata(const std::vector<SweepRow>& rows);

/// Start of the positive tail: the first row with F_a > plateau_tol, moved
/// back to the zero of the line through it and the next row (clamped to the
/// preceding grid interval). Empty if there is no plateau or no tail.
std::optional<double> sweep_threshold(const std::vector<SweepRow>& rows, double plateau_tol);

}  // namespace tritangle
