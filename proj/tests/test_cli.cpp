#include "test_util.hpp"

#include "cli.hpp"
#include "tritangle/factory.hpp"
#include "tritangle/io.hpp"
#include "tritangle/sweep.hpp"
#include "tritangle/tangle.hpp"

#include <doctest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <unistd.h>

using namespace tritangle;
namespace fs = std::filesystem;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "tritangle");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

fs::path scratch() {
  static const fs::path dir = [] {
    fs::path p = fs::temp_directory_path() / ("tritangle_test_" + std::to_string(::getpid()));
    fs::create_directories(p);
    return p;
  }();
  return dir;
}

std::string file(const std::string& name) { return (scratch() / name).string(); }

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// value of "key: value" in a text report
std::string field(const std::string& report, const std::string& key) {
  std::istringstream in(report);
  std::string line;
  while (std::getline(in, line)) {
    if (line.rfind(key + ": ", 0) == 0) return line.substr(key.size() + 2);
  }
  return "";
}

double num(const std::string& report, const std::string& key) { return std::stod(field(report, key)); }

}  // namespace

TEST_CASE("state json round trip") {
  const std::vector<AnyState> states = {make_ghz(3), make_w(), make_random_pure({2, 3, 3}, 4),
                                        make_ghzw_mix(0.4), make_random_density({2, 2, 3}, 3, 5)};
  for (const AnyState& s : states) {
    const std::string text = state_to_json(s, "lbl", 9);
    const StateFile f = parse_state_json(text);
    CHECK(f.label == "lbl");
    CHECK(f.seed == std::optional<std::uint64_t>(9));
    if (std::holds_alternative<PureState>(s)) {
      REQUIRE(f.is_pure());
      CHECK(std::get<PureState>(f.state).amplitudes() == std::get<PureState>(s).amplitudes());
    } else {
      REQUIRE_FALSE(f.is_pure());
      CHECK(std::get<MixedState>(f.state).matrix() == std::get<MixedState>(s).matrix());
    }
    CHECK(state_to_json(f.state, "lbl", 9) == text);
  }
  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(0.5) == "0.5");
}

TEST_CASE("state json errors") {
  CHECK_CODE(parse_state_json("{"), ErrorCode::kParseError);
  CHECK_CODE(parse_state_json(R"({"format":"pure","dims":[2,2,2]})"), ErrorCode::kParseError);
  CHECK_CODE(parse_state_json(R"({"format":"mixed","dims":[2,2,2],"entries":[]})"), ErrorCode::kParseError);
  CHECK_CODE(parse_state_json(R"({"format":"pure","dims":[2,2,2],"entries":[[1,0]]})"), ErrorCode::kLengthMismatch);
  CHECK_CODE(parse_state_json(R"({"format":"pure","dims":[1,2,2],"entries":[[1,0],[0,0],[0,0],[0,0]]})"),
             ErrorCode::kDimensionTooSmall);
  CHECK_CODE(parse_state_json(R"({"format":"pure","dims":[2,2],"entries":[]})"), ErrorCode::kParseError);
  CHECK_CODE(parse_state_json(R"({"format":"pure","dims":[2,2,2],"entries":[[1,"a"],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0]]})"), ErrorCode::kParseError);
  CHECK_CODE(read_state_file(file("missing.json")), ErrorCode::kParseError);
}

TEST_CASE("sweep") {
  SweepConfig cfg;
  cfg.steps = 12;
  const auto rows = sweep_ghzw(cfg);
  REQUIRE(rows.size() == 12);
  CHECK(rows.front().x == 0.34);
  CHECK(rows.back().x == 1.0);
  for (std::size_t i = 1; i < rows.size(); ++i) CHECK(rows[i].x > rows[i - 1].x);
  CHECK(*rows.back().fa == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(rows.back().rank == 1);
  CHECK(rows.front().rank == 3);
  const std::string csv = sweep_csv(rows);
  CHECK(csv.rfind("x,F_a,rank,mu1\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 13);
  CHECK(csv.find('\r') == std::string::npos);
  const auto thr = sweep_threshold(rows, 1e-12);
  REQUIRE(thr.has_value());
  CHECK(*thr == doctest::Approx(0.5).epsilon(1e-9));

  SweepConfig threaded = cfg;
  threaded.threads = 3;
  CHECK(sweep_csv(sweep_ghzw(threaded)) == csv);

  cfg.from = 0.3;
  CHECK_CODE(sweep_ghzw(cfg), ErrorCode::kBadRange);
  cfg.from = 0.5;
  cfg.steps = 1;
  CHECK_CODE(sweep_ghzw(cfg), ErrorCode::kBadRange);
}

TEST_CASE("threshold helper") {
  std::vector<SweepRow> rows(4);
  const double xs[4] = {0.1, 0.2, 0.3, 0.4}, fs[4] = {0.0, 0.0, 0.05, 0.15};
  for (int i = 0; i < 4; ++i) {
    rows[static_cast<std::size_t>(i)].x = xs[i];
    rows[static_cast<std::size_t>(i)].fa = fs[i];
  }
  // line through (0.3, 0.05) and (0.4, 0.15) hits zero at 0.25
  CHECK(*sweep_threshold(rows, 1e-12) == doctest::Approx(0.25));
  rows[0].fa = 0.01;
  CHECK_FALSE(sweep_threshold(rows, 1e-12).has_value());
}

TEST_CASE("cli pure") {
  REQUIRE(run({"make", "--family", "ghz", "--d", "2", "--out", file("ghz2.json")}).code == 0);
  Run r = run({"pure", file("ghz2.json")});
  CHECK(r.code == 0);
  CHECK(num(r.out, "F") == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(field(r.out, "cubes") == "1");

  REQUIRE(run({"make", "--family", "w", "--out", file("w.json")}).code == 0);
  CHECK(num(run({"pure", file("w.json")}).out, "F") == 0.0);

  REQUIRE(run({"--seed", "3", "make", "--family", "random-pure", "--dims", "2,2,3", "--out", file("r223.json")})
              .code == 0);
  r = run({"pure", file("r223.json"), "--cubes"});
  CHECK(field(r.out, "cubes") == "3");
  CHECK(!field(r.out, "f").empty());

  r = run({"--format", "json", "pure", file("ghz2.json")});
  const auto j = nlohmann::json::parse(r.out);
  CHECK(j["F"].get<double>() == doctest::Approx(0.5));

  std::ofstream(file("bad.json")) << "{nope";
  r = run({"pure", file("bad.json")});
  CHECK(r.code == cli::kInputError);
  CHECK(!r.err.empty());
  CHECK(run({"pure", file("nothere.json")}).code == cli::kInputError);
}

TEST_CASE("cli quasipure") {
  REQUIRE(run({"make", "--family", "ghzw", "--x", "1.0", "--out", file("x1.json")}).code == 0);
  Run r = run({"quasipure", file("x1.json")});
  CHECK(r.code == 0);
  CHECK(num(r.out, "F_a") == doctest::Approx(0.5).epsilon(1e-10));

  const PureState w = make_w();
  write_state_file(file("pw.json"), projector(w));
  r = run({"quasipure", file("pw.json")});
  CHECK(r.code == cli::kInapplicable);
  CHECK(field(r.out, "status") == "inapplicable");

  write_state_file(file("mm.json"), MixedState::validate({2, 2, 2}, CMatrix::Identity(8, 8) / 8.0));
  r = run({"quasipure", file("mm.json"), "--rotations", "4"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "leading_multiplicity") == "8");
  CHECK(r.err.find("warning") != std::string::npos);

  CHECK(run({"quasipure", file("ghz2.json")}).code == cli::kInputError);
}

TEST_CASE("cli bound") {
  const PureState zero = product_of(CVector::Unit(2, 0), CVector::Unit(2, 0), CVector::Unit(2, 0));
  write_state_file(file("p000.json"), projector(zero));
  for (const char* m : {"zz", "z", "maxc"}) {
    const Run r = run({"bound", file("p000.json"), "--method", m, "--restarts", "2"});
    CHECK(r.code == 0);
    CHECK(num(r.out, "bound") == 0.0);
  }
  write_state_file(file("pghz.json"), projector(make_ghz(2)));
  Run r = run({"bound", file("pghz.json"), "--method", "maxc"});
  CHECK(r.code == 0);
  CHECK(num(r.out, "bound") <= 0.5 + 1e-8);
  CHECK(field(r.out, "structure") == "exact");

  write_state_file(file("r9.json"), make_random_density({2, 2, 3}, 9, 1));
  CHECK(run({"bound", file("r9.json")}).code == cli::kResourceLimit);

  write_state_file(file("r2.json"), make_random_density({2, 2, 2}, 2, 7));
  r = run({"bound", file("r2.json"), "--restarts", "2", "--seed", "4"});
  CHECK(r.code == 0);
  CHECK(field(r.out, "certified") == "false");
  CHECK(r.out == run({"bound", file("r2.json"), "--restarts", "2", "--seed", "4"}).out);
  r = run({"bound", file("r2.json"), "--structure", "strict", "--restarts", "2"});
  CHECK(r.code == cli::kInapplicable);
}

TEST_CASE("cli roof") {
  Run r = run({"roof", file("ghz2.json"), "--samples", "20"});
  CHECK(r.code == 0);
  CHECK(num(r.out, "roof_upper") == doctest::Approx(0.5).epsilon(1e-10));
  r = run({"roof", file("pghz.json"), "--samples", "20"});
  CHECK(num(r.out, "roof_upper") == doctest::Approx(0.5).epsilon(1e-10));

  CMatrix m = CMatrix::Zero(8, 8);
  m(0, 0) = m(7, 7) = 0.5;
  write_state_file(file("half.json"), MixedState::validate({2, 2, 2}, m));
  CHECK(num(run({"roof", file("half.json"), "--samples", "20"}).out, "roof_upper") == 0.0);

  const Run a = run({"--seed", "5", "roof", file("r2.json"), "--samples", "30"});
  const Run b = run({"--seed", "5", "roof", file("r2.json"), "--samples", "30"});
  CHECK(a.out == b.out);
  CHECK(run({"roof", file("r2.json"), "--ensemble", "1"}).code == cli::kInputError);
}

TEST_CASE("cli sweep") {
  Run r = run({"sweep", "--family", "ghzw", "--steps", "100", "--out", file("sweep.csv"), "--plotdata",
               file("sweep.dat")});
  CHECK(r.code == 0);
  const std::string csv = slurp(file("sweep.csv"));
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 101);
  const std::string last = csv.substr(csv.rfind('\n', csv.size() - 2) + 1);
  CHECK(last.rfind("1,", 0) == 0);
  CHECK(std::stod(last.substr(2)) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(num(r.out, "threshold") == doctest::Approx(0.5).epsilon(1e-9));
  const std::string dat = slurp(file("sweep.dat"));
  CHECK(std::count(dat.begin(), dat.end(), '\n') == 100);

  r = run({"sweep", "--steps", "5"});
  CHECK(r.out.rfind("x,F_a,rank,mu1\n", 0) == 0);
  CHECK(run({"sweep", "--from", "0.2"}).code == cli::kInputError);
  CHECK(run({"sweep", "--family", "other"}).code == cli::kInputError);
}

TEST_CASE("cli make") {
  REQUIRE(run({"make", "--family", "ghz", "--d", "3", "--out", file("g3.json")}).code == 0);
  const StateFile g3 = read_state_file(file("g3.json"));
  REQUIRE(g3.is_pure());
  CHECK((std::get<PureState>(g3.state).amplitudes() - make_ghz(3).amplitudes()).norm() <= 1e-16);

  REQUIRE(run({"make", "--family", "ghzw", "--x", "0.5", "--out", file("h.json")}).code == 0);
  const StateFile h = read_state_file(file("h.json"));
  const RVector& e = std::get<MixedState>(h.state).eigenvalues();
  CHECK(e[0] == doctest::Approx(0.5));
  CHECK(e[1] == doctest::Approx(0.25));
  CHECK(e[2] == doctest::Approx(0.25));

  REQUIRE(run({"make", "--family", "random-pure", "--dims", "2,3,3", "--seed", "7", "--out", file("a.json")}).code ==
          0);
  REQUIRE(run({"make", "--family", "random-pure", "--dims", "2,3,3", "--seed", "7", "--out", file("b.json")}).code ==
          0);
  CHECK(slurp(file("a.json")) == slurp(file("b.json")));

  CHECK(run({"make", "--family", "bell"}).code == cli::kInputError);
  CHECK(run({"make", "--family", "w", "--dims", "2,2,3"}).code == cli::kInputError);
  CHECK(run({"make", "--family", "ghzw", "--x", "2"}).code == cli::kInputError);
  CHECK(run({"make", "--family", "biseparable", "--split", "AB|C"}).code == cli::kInputError);
  CHECK(run({}).code == cli::kInputError);
}
