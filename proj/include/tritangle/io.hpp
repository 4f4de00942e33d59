#pragma once

// JSON state files:
//   {"format": "pure" | "density", "dims": [n1, n2, n3],
//    "entries": [[re, im], ...], "label": "...", "seed": 7}
// Entries are row-major; numbers are written with 17 significant digits.

#include "tritangle/factory.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

namespace tritangle {

struct StateFile {
  AnyState state;
  std::string label;
  std::optional<std::uint64_t> seed;

  bool is_pure() const { return std::holds_alternative<PureState>(state); }
  const Dims& dims() const;
};

/// Throws ParseError for malformed JSON or schema violations and the state
/// validation errors for bad contents.
StateFile parse_state_json(std::string_view text, double tol = kValidationTol);
StateFile read_state_file(const std::string& path, double tol = kValidationTol);

std::string state_to_json(const AnyState& state, const std::string& label = {},
                          std::optional<std::uint64_t> seed = std::nullopt);
void write_state_file(const std::string& path, const AnyState& state, const std::string& label = {},
                      std::optional<std::uint64_t> seed = std::nullopt);

/// Shortest form that still carries 17 significant digits.
std::string format_double(double v);

}  // namespace tritangle
