#include "cli.hpp"

#include "tritangle/bounds.hpp"
#include "tritangle/error.hpp"
#include "tritangle/factory.hpp"
#include "tritangle/kron.hpp"
#include "tritangle/io.hpp"
#include "tritangle/kernels.hpp"
#include "tritangle/parallel.hpp"
#include "tritangle/quasi_pure.hpp"
#include "tritangle/sweep.hpp"
#include "tritangle/tangle.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <Eigen/SVD>

#include <fstream>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

namespace tritangle::cli {

namespace {

using nlohmann::json;

struct Global {
  double tol = kValidationTol;
  int threads = 0;
  std::uint64_t seed = 0;
  std::string format = "text";
  double cutoff = kDefaultRankCutoff;
  double trunc = kDefaultTrunc;

  int thread_count() const { return threads > 0 ? threads : default_threads(); }
  bool as_json() const { return format == "json"; }
};

// Ordered key/value report rendered as "key: value" lines or one JSON object.
class Report {
 public:
  void add(const std::string& key, json value) { items_.emplace_back(key, std::move(value)); }

  void write(std::ostream& out, bool as_json) const {
    if (as_json) {
      json obj = json::object();
      for (const auto& [k, v] : items_) obj[k] = v;
      out << obj.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : items_) out << k << ": " << render(v) << "\n";
  }

 private:
  static std::string render(const json& v) {
    if (v.is_number_float()) return format_double(v.get<double>());
    if (v.is_string()) return v.get<std::string>();
    if (v.is_array()) {
      std::string s;
      for (std::size_t i = 0; i < v.size(); ++i) {
        if (i > 0) s += " ";
        s += render(v[i]);
      }
      return s.empty() ? "-" : s;
    }
    return v.dump();
  }

  std::vector<std::pair<std::string, json>> items_;
};

json dims_json(const Dims& d) { return json::array({d[0], d[1], d[2]}); }

const MixedState& require_density(const StateFile& f) {
  if (f.is_pure()) throw Error(ErrorCode::kParseError, "expected a density file, got a pure state");
  return std::get<MixedState>(f.state);
}

const PureState& require_pure(const StateFile& f) {
  if (!f.is_pure()) throw Error(ErrorCode::kParseError, "expected a pure file, got a density matrix");
  return std::get<PureState>(f.state);
}

int cmd_pure(const Global& g, const std::string& path, bool cubes, std::ostream& out) {
  const StateFile file = read_state_file(path, g.tol);
  const PureState& psi = require_pure(file);
  const auto f = cube_f_list(psi);
  Report rep;
  rep.add("dims", dims_json(psi.dims()));
  rep.add("normalized", psi.normalized());
  rep.add("cubes", static_cast<int>(f.size()));
  rep.add("F", F_pure(psi));
  if (cubes) {
    json list = json::array();
    for (double v : f) list.push_back(v);
    rep.add("f", list);
  }
  rep.write(out, g.as_json());
  return kOk;
}

int cmd_quasipure(const Global& g, const std::string& path, int rotations,
                  double asym_limit, std::ostream& out, std::ostream& err) {
  const StateFile file = read_state_file(path, g.tol);
  const MixedState& rho = require_density(file);
  const Spectrum spec = spectral_decompose(rho, g.cutoff);
  Report rep;
  rep.add("dims", dims_json(rho.dims()));
  rep.add("rank", spec.rank());
  rep.add("mu1", spec.eigenvalues[0]);
  TauOptions opts;
  opts.tie_break_rotations = rotations;
  opts.seed = g.seed;
  opts.asymmetry_limit = asym_limit;
  opts.threads = g.thread_count();
  try {
    const TauMatrix t = build_tau(spec, opts);
    Eigen::JacobiSVD<CMatrix> svd(t.tau);
    json sv = json::array();
    for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i) sv.push_back(svd.singularValues()[i]);
    rep.add("status", "ok");
    rep.add("F_a", f_a(t));
    rep.add("tau_singular_values", sv);
    rep.add("tau_asymmetry", t.asymmetry);
    rep.add("leading_multiplicity", t.leading_multiplicity);
    if (t.degenerate_leading()) {
      rep.add("warning", "degenerate leading eigenvalue; dominant vector chosen by tie break");
      err << "warning: leading eigenvalue has multiplicity " << t.leading_multiplicity
          << "; dominant vector chosen over " << rotations << " rotations\n";
    }
    rep.write(out, g.as_json());
    return kOk;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::kDominantTangleZero && e.code() != ErrorCode::kAsymmetryTooLarge) throw;
    rep.add("status", "inapplicable");
    rep.add("reason", e.what());
    rep.write(out, g.as_json());
    return kInapplicable;
  }
}

int cmd_bound(const Global& g, const std::string& path, const std::string& method, int restarts,
              const std::string& structure, int max_rank, std::ostream& out, std::ostream& err) {
  const StateFile file = read_state_file(path, g.tol);
  const MixedState& rho = require_density(file);
  const Spectrum spec = spectral_decompose(rho, g.cutoff);
  BuildAOptions aopts;
  aopts.max_rank = max_rank;
  aopts.threads = g.thread_count();
  const ATensor a = build_A(spec, aopts);
  const StructurePolicy policy =
      structure == "strict" ? StructurePolicy::kStrict : StructurePolicy::kFormal;

  Report rep;
  rep.add("dims", dims_json(rho.dims()));
  rep.add("rank", spec.rank());
  rep.add("method", method);
  try {
    const CFamily fam = decompose(a, policy, g.trunc);
    rep.add("r_prime", fam.outer_count());
    json inner = json::array();
    for (int c : fam.inner_counts()) inner.push_back(c);
    rep.add("r_double_prime", inner);
    rep.add("structure", fam.structure.exact ? "exact" : "violated");
    rep.add("hermitian_defect", fam.structure.hermitian_defect);
    rep.add("psd_defect", fam.structure.psd_defect);
    rep.add("c_asymmetry", fam.structure.c_asymmetry);

    OptimizerConfig ocfg;
    ocfg.restarts = restarts;
    ocfg.seed = g.seed;
    ocfg.threads = g.thread_count();
    double value = 0.0;
    if (method == "maxc") {
      value = fam.empty() ? 0.0 : lower_bound_maxC(fam);
    } else {
      const BoundResult br = method == "zz" ? lower_bound_zZ(fam, ocfg) : lower_bound_Z(fam, ocfg);
      value = br.value;
      rep.add("restarts", br.optim.restarts);
      rep.add("best_restart", br.optim.best_restart);
      rep.add("sweeps", br.optim.sweeps);
      rep.add("evaluations", br.optim.evaluations);
    }
    rep.add("bound", value);
    rep.add("certified", fam.structure.exact);
  } catch (const Error& e) {
    const bool structural = e.code() == ErrorCode::kNotHermitian || e.code() == ErrorCode::kNotPSD ||
                            e.code() == ErrorCode::kNotSymmetric;
    if (!structural) throw;
    err << "error: " << e.what() << "\n";
    rep.add("structure", "violated");
    rep.add("reason", e.what());
    rep.write(out, g.as_json());
    return kInapplicable;
  }
  rep.write(out, g.as_json());
  return kOk;
}

int cmd_roof(const Global& g, const std::string& path, int samples, int ensemble,
             std::ostream& out) {
  const StateFile file = read_state_file(path, g.tol);
  const Spectrum spec = file.is_pure()
                            ? spectral_decompose(projector(std::get<PureState>(file.state)), g.cutoff)
                            : spectral_decompose(std::get<MixedState>(file.state), g.cutoff);
  RoofConfig cfg;
  cfg.samples = samples;
  cfg.ensemble = ensemble;
  cfg.seed = g.seed;
  cfg.threads = g.thread_count();
  const RoofResult res = roof_upper(spec, cfg);
  Report rep;
  rep.add("dims", dims_json(spec.dims));
  rep.add("rank", spec.rank());
  rep.add("samples", res.samples);
  rep.add("ensemble", res.ensemble);
  rep.add("best_sample", res.best_sample);
  rep.add("decomposition_size", res.best_support);
  rep.add("roof_upper", res.value);
  rep.write(out, g.as_json());
  return kOk;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw Error(ErrorCode::kParseError, "cannot write " + path);
  f << text;
}

int cmd_sweep(const Global& g, const std::string& family, double from, double to, int steps,
              const std::string& out_path, const std::string& plot_path, std::ostream& out,
              std::ostream& err) {
  if (family != "ghzw") throw Error(ErrorCode::kBadParameter, "sweep supports --family ghzw only");
  SweepConfig cfg;
  cfg.from = from;
  cfg.to = to;
  cfg.steps = steps;
  cfg.cutoff = g.cutoff;
  cfg.tol = g.tol;
  cfg.threads = g.thread_count();
  cfg.tau.seed = g.seed;
  const auto rows = sweep_ghzw(cfg);
  const std::string csv = sweep_csv(rows);
  const auto threshold = sweep_threshold(rows, g.tol);
  if (!plot_path.empty()) write_text(plot_path, sweep_plotdata(rows));
  Report rep;
  rep.add("rows", static_cast<int>(rows.size()));
  rep.add("threshold", threshold ? json(*threshold) : json("none"));
  if (out_path.empty()) {
    out << csv;
    rep.write(err, false);
  } else {
    write_text(out_path, csv);
    rep.add("csv", out_path);
    rep.write(out, g.as_json());
  }
  return kOk;
}

Dims parse_dims(const std::string& s) {
  Dims d{};
  std::stringstream ss(s);
  std::string part;
  int i = 0;
  while (std::getline(ss, part, ',')) {
    if (i >= 3) throw Error(ErrorCode::kBadDimension, "dims must have three entries: " + s);
    try {
      std::size_t used = 0;
      d[i] = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
    } catch (const std::exception&) {
      throw Error(ErrorCode::kBadDimension, "bad dims entry '" + part + "'");
    }
    ++i;
  }
  if (i != 3) throw Error(ErrorCode::kBadDimension, "dims must have three entries: " + s);
  return d;
}

int cmd_make(const Global& g, const std::string& family, int d, double x, double eps,
             const std::string& dims, int rank, const std::string& split,
             const std::string& out_path, const std::string& label, std::ostream& out) {
  const auto fam = parse_family(family);
  if (!fam) throw Error(ErrorCode::kBadParameter, "unknown family '" + family + "'");
  FamilySpec spec;
  spec.family = *fam;
  spec.d = d;
  spec.x = x;
  spec.eps = eps;
  spec.dims = parse_dims(dims);
  spec.rank = rank;
  const auto sp = parse_split(split);
  if (!sp) throw Error(ErrorCode::kBadParameter, "unknown split '" + split + "'");
  spec.split = *sp;
  spec.seed = g.seed;
  const AnyState state = make_family(spec);
  const bool seeded = *fam == Family::kRandomPure || *fam == Family::kRandomDensity ||
                      *fam == Family::kProduct || *fam == Family::kBiseparable;
  const std::string text = state_to_json(state, label.empty() ? std::string(family_name(*fam)) : label,
                                         seeded ? std::optional<std::uint64_t>(g.seed) : std::nullopt);
  // Round trip through the parser before anything is written.
  parse_state_json(text, g.tol);
  if (out_path.empty()) {
    out << text;
  } else {
    write_text(out_path, text);
    Report rep;
    rep.add("family", std::string(family_name(*fam)));
    rep.add("written", out_path);
    rep.write(out, g.as_json());
  }
  return kOk;
}

int exit_code_for(ErrorCode c) {
  switch (c) {
    case ErrorCode::kRankTooLarge:
      return kResourceLimit;
    case ErrorCode::kDominantTangleZero:
    case ErrorCode::kAsymmetryTooLarge:
      return kInapplicable;
    case ErrorCode::kInternalConsistency:
      return kInternal;
    default:
      return kInputError;
  }
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Genuine tripartite entanglement tests for pure and mixed states"};
  app.require_subcommand(1);
  // global flags may also follow the subcommand
  app.fallthrough();
  Global g;
  app.add_option("--tol", g.tol, "Validation tolerance")->capture_default_str();
  app.add_option("--threads", g.threads, "Worker threads (0 = all cores)")->capture_default_str();
  app.add_option("--seed", g.seed, "Random seed")->capture_default_str();
  app.add_option("--format", g.format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_option("--cutoff", g.cutoff, "Rank cutoff on eigenvalues")->capture_default_str();
  app.add_option("--trunc", g.trunc, "Relative truncation of factorizations")->capture_default_str();

  std::string path;
  bool cubes = false;
  auto* pure = app.add_subcommand("pure", "F of a pure state");
  pure->add_option("path", path, "Pure state file")->required();
  pure->add_flag("--cubes", cubes, "List f for every cube");

  int rotations = 64;
  double asym_limit = 1e-8;
  auto* qp = app.add_subcommand("quasipure", "Quasi-pure approximation F_a");
  qp->add_option("path", path, "Density file")->required();
  qp->add_option("--rotations", rotations, "Tie-break rotations for a degenerate leading eigenvalue")
      ->capture_default_str();
  qp->add_option("--asymmetry-limit", asym_limit, "Reject tau whose relative asymmetry exceeds this")
      ->capture_default_str();

  std::string method = "zz";
  std::string structure = "formal";
  int restarts = 32;
  int max_rank = kDefaultMaxRank;
  auto* bound = app.add_subcommand("bound", "Lower bounds on F for a density matrix");
  bound->add_option("path", path, "Density file")->required();
  bound->add_option("--method", method, "zz | z | maxc")
      ->check(CLI::IsMember({"zz", "z", "maxc"}))
      ->capture_default_str();
  bound->add_option("--restarts", restarts, "Optimizer restarts")->capture_default_str();
  bound->add_option("--structure", structure, "formal | strict")
      ->check(CLI::IsMember({"formal", "strict"}))
      ->capture_default_str();
  bound->add_option("--max-rank", max_rank, "Largest rank accepted")->capture_default_str();

  int samples = 1000;
  int ensemble = 0;
  auto* roof = app.add_subcommand("roof", "Monte-Carlo upper estimate of the convex roof");
  roof->add_option("path", path, "State file")->required();
  roof->add_option("--samples", samples, "Sampled decompositions")->capture_default_str();
  roof->add_option("--ensemble", ensemble, "Ensemble size N (0 = max(2r, r+2))")->capture_default_str();

  std::string family = "ghzw";
  double from = 0.34, to = 1.0;
  int steps = 100;
  std::string out_path, plot_path;
  auto* sweep = app.add_subcommand("sweep", "F_a along the GHZ/W mixture");
  sweep->add_option("--family", family, "Family (ghzw)")->capture_default_str();
  sweep->add_option("--from", from, "First x")->capture_default_str();
  sweep->add_option("--to", to, "Last x")->capture_default_str();
  sweep->add_option("--steps", steps, "Number of rows")->capture_default_str();
  sweep->add_option("--out", out_path, "CSV output path (stdout when absent)");
  sweep->add_option("--plotdata", plot_path, "Write 'x F_a' pairs to this path");

  std::string make_family_name;
  int d = 2;
  double x = 1.0, eps = 0.0;
  std::string dims = "2,2,2";
  int rank = 1;
  std::string split = "A|BC";
  std::string label;
  auto* make = app.add_subcommand("make", "Write a state file from the factory");
  make->add_option("--family", make_family_name,
                   "ghz | w | wtilde | ghzw | white-noise | random-pure | random-density | product | "
                   "biseparable")
      ->required();
  make->add_option("--d", d, "Local dimension for ghz and white-noise")->capture_default_str();
  make->add_option("--x", x, "Mixing parameter for ghzw")->capture_default_str();
  make->add_option("--eps", eps, "Noise weight for white-noise")->capture_default_str();
  make->add_option("--dims", dims, "Dims n1,n2,n3")->capture_default_str();
  make->add_option("--rank", rank, "Rank for random-density")->capture_default_str();
  make->add_option("--split", split, "A|BC | B|AC | C|AB")->capture_default_str();
  make->add_option("--out", out_path, "Output path (stdout when absent)");
  make->add_option("--label", label, "Label stored in the file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }

  try {
    if (*pure) return cmd_pure(g, path, cubes, out);
    if (*qp) return cmd_quasipure(g, path, rotations, asym_limit, out, err);
    if (*bound) return cmd_bound(g, path, method, restarts, structure, max_rank, out, err);
    if (*roof) return cmd_roof(g, path, samples, ensemble, out);
    if (*sweep) return cmd_sweep(g, family, from, to, steps, out_path, plot_path, out, err);
    if (*make) {
      return cmd_make(g, make_family_name, d, x, eps, dims, rank, split, out_path, label, out);
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInternal;
  }
  return kInputError;
}

}  // namespace tritangle::cli
