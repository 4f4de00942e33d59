#include "tritangle/io.hpp"

#include "tritangle/error.hpp"

#include <json.hpp>

#include <charconv>
#include <fstream>
#include <sstream>

namespace tritangle {

using nlohmann::json;

const Dims& StateFile::dims() const {
  return std::visit([](const auto& s) -> const Dims& { return s.dims(); }, state);
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

namespace {

[[noreturn]] void parse_fail(const std::string& what) { throw Error(ErrorCode::kParseError, what); }

Complex read_entry(const json& e, std::size_t i) {
  if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number()) {
    parse_fail("entry " + std::to_string(i) + " is not a [re, im] pair");
  }
  return {e[0].get<double>(), e[1].get<double>()};
}

}  // namespace

StateFile parse_state_json(std::string_view text, double tol) {
  json doc;
  try {
    doc = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    parse_fail(e.what());
  }
  if (!doc.is_object()) parse_fail("top level must be an object");
  if (!doc.contains("format") || !doc["format"].is_string()) parse_fail("missing \"format\"");
  const std::string format = doc["format"].get<std::string>();
  if (format != "pure" && format != "density") parse_fail("unknown format \"" + format + "\"");
  if (!doc.contains("dims") || !doc["dims"].is_array() || doc["dims"].size() != 3) {
    parse_fail("\"dims\" must be an array of three integers");
  }
  Dims dims{};
  for (std::size_t p = 0; p < 3; ++p) {
    const json& v = doc["dims"][p];
    if (!v.is_number_integer()) parse_fail("\"dims\" must be an array of three integers");
    dims[p] = v.get<int>();
  }
  validate_dims(dims);
  if (!doc.contains("entries") || !doc["entries"].is_array()) parse_fail("missing \"entries\"");
  const json& entries = doc["entries"];
  const std::size_t d = total_dimension(dims);
  const std::size_t expected = format == "pure" ? d : d * d;
  if (entries.size() != expected) {
    throw Error(ErrorCode::kLengthMismatch, "expected " + std::to_string(expected) +
                                                " entries, got " + std::to_string(entries.size()));
  }
  auto build = [&]() -> AnyState {
    if (format == "pure") {
      CVector a(static_cast<Eigen::Index>(d));
      for (std::size_t i = 0; i < d; ++i) a[static_cast<Eigen::Index>(i)] = read_entry(entries[i], i);
      return PureState::validate(dims, std::move(a), tol);
    }
    CMatrix m(static_cast<Eigen::Index>(d), static_cast<Eigen::Index>(d));
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) {
        m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            read_entry(entries[i * d + j], i * d + j);
      }
    return MixedState::validate(dims, m, tol);
  };
  StateFile out{build(), {}, std::nullopt};
  if (doc.contains("label")) {
    if (!doc["label"].is_string()) parse_fail("\"label\" must be a string");
    out.label = doc["label"].get<std::string>();
  }
  if (doc.contains("seed")) {
    if (!doc["seed"].is_number_unsigned()) parse_fail("\"seed\" must be a nonnegative integer");
    out.seed = doc["seed"].get<std::uint64_t>();
  }
  return out;
}

StateFile read_state_file(const std::string& path, double tol) {
  std::ifstream in(path, std::ios::binary);
  if (!in) parse_fail("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_state_json(ss.str(), tol);
}

namespace {

void append_entry(std::string& out, Complex v) {
  out += '[';
  out += format_double(v.real());
  out += ',';
  out += format_double(v.imag());
  out += ']';
}

}  // namespace

std::string state_to_json(const AnyState& state, const std::string& label,
                          std::optional<std::uint64_t> seed) {
  const bool pure = std::holds_alternative<PureState>(state);
  const Dims& dims = std::visit([](const auto& s) -> const Dims& { return s.dims(); }, state);
  std::string out = "{\n  \"format\": ";
  out += pure ? "\"pure\"" : "\"density\"";
  out += ",\n  \"dims\": [" + std::to_string(dims[0]) + ", " + std::to_string(dims[1]) + ", " +
         std::to_string(dims[2]) + "]";
  if (!label.empty()) out += ",\n  \"label\": " + json(label).dump();
  if (seed) out += ",\n  \"seed\": " + std::to_string(*seed);
  out += ",\n  \"entries\": [";
  if (pure) {
    const CVector& a = std::get<PureState>(state).amplitudes();
    for (Eigen::Index i = 0; i < a.size(); ++i) {
      out += i == 0 ? "\n    " : ",\n    ";
      append_entry(out, a[i]);
    }
  } else {
    const CMatrix& m = std::get<MixedState>(state).matrix();
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      out += i == 0 ? "\n    " : ",\n    ";
      for (Eigen::Index j = 0; j < m.cols(); ++j) {
        if (j > 0) out += ", ";
        append_entry(out, m(i, j));
      }
    }
  }
  out += "\n  ]\n}\n";
  return out;
}

void write_state_file(const std::string& path, const AnyState& state, const std::string& label,
                      std::optional<std::uint64_t> seed) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kParseError, "cannot write " + path);
  out << state_to_json(state, label, seed);
}

}  // namespace tritangle
