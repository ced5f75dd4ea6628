#pragma once

// Command-line front end. run_cli() is the whole program minus process
// plumbing so tests can drive it in-process.
//
// Exit codes: 0 completed (verify: every check matched its expectation),
// 1 verify mismatch, 2 input error, 3 internal numeric failure.

#include <cctype>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "entwit/entwit.hpp"
#include "entwit/io.hpp"
#include "verify.hpp"

namespace entwit::cli {

using nlohmann::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInput = 2;
inline constexpr int kExitNumeric = 3;

struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GlobalArgs {
  std::uint64_t seed = 0;
  double tol = 1e-8;
  int restarts = 50;
  int max_iters = 500;
  std::string output;
  std::string format;  // command default when empty
  std::string normalization = "tight";
};

struct StateArgs {
  std::string family;
  std::string input;
  int n = 2;
  int m = 0;  // 0: same as n
  int k = 2;
  int i = 0;
  int j = 0;
  double alpha = 3.0;
  double f = 0.5;
  double p = 1.0;
};

inline Normalization parse_normalization(const std::string& s) {
  if (s == "tight") return Normalization::kTight;
  if (s == "literal") return Normalization::kLiteral;
  throw InputError("unknown normalization '" + s + "'");
}

inline SearchConfig search_config(const GlobalArgs& g) {
  SearchConfig cfg;
  cfg.seed = g.seed;
  cfg.tol = g.tol;
  cfg.restarts = g.restarts;
  cfg.max_iters = g.max_iters;
  cfg.normalization = parse_normalization(g.normalization);
  if (cfg.restarts < 1) throw InputError("--restarts must be >= 1");
  if (!(cfg.tol > 0)) throw InputError("--tol must be positive");
  return cfg;
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw InputError("malformed JSON in '" + path + "': " + e.what());
  }
}

inline DensityMatrix load_state(const StateArgs& s, const GlobalArgs& g) {
  if (!s.input.empty()) {
    const json j = read_json_file(s.input);
    io::RawState raw;
    try {
      raw = io::raw_state_from_json(j);
    } catch (const json::exception& e) {
      throw InputError(std::string("state file: ") + e.what());
    }
    DensityValidation v = validate_density(raw.rho, raw.dims);
    if (!v.ok()) {
      std::string msg = "invalid state:";
      for (const Violation& x : v.violations)
        msg += " " + std::string(to_string(x.code)) + " (" + x.detail + " = " +
               io::format_number(x.magnitude) + ")";
      throw InputError(msg);
    }
    return std::move(*v.state);
  }
  if (s.family.empty()) throw InputError("a state needs --family or --input");
  const std::optional<Family> fam = parse_family(s.family);
  if (!fam) throw InputError("unknown family '" + s.family + "'");
  FamilyParams fp;
  fp.family = *fam;
  fp.alpha = s.alpha;
  fp.f = s.f;
  fp.p = s.p;
  fp.n = s.n;
  fp.m = s.m > 0 ? s.m : s.n;
  fp.k = s.k;
  fp.i = s.i;
  fp.j = s.j;
  fp.seed = g.seed;
  return make_family(fp);
}

inline void add_state_options(CLI::App* sub, StateArgs& s) {
  sub->add_option("--family", s.family,
                  "horodecki | isotropic | werner | example4 | max_entangled | product | "
                  "random_mixture");
  sub->add_option("--input", s.input, "state JSON file {m, n, re, im}");
  sub->add_option("--n", s.n, "subsystem dimension (second subsystem for product/random_mixture)");
  sub->add_option("--m", s.m, "first subsystem dimension (product/random_mixture)");
  sub->add_option("--k", s.k, "random_mixture components");
  sub->add_option("--i", s.i, "product: first-subsystem basis index");
  sub->add_option("--j", s.j, "product: second-subsystem basis index");
  sub->add_option("--alpha", s.alpha, "horodecki alpha in [2, 5]");
  sub->add_option("--f", s.f, "isotropic / werner parameter");
  sub->add_option("--p", s.p, "example4 parameter in (0, 1]");
}

inline json dims_json(const BipartiteDims& d) { return {{"m", d.m}, {"n", d.n}}; }

struct Grid {
  double lo, hi, step;
};

inline Grid parse_grid(const std::string& text) {
  std::vector<double> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) {
    try {
      std::size_t used = 0;
      parts.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw InputError("bad grid '" + text + "'");
    }
  }
  if (parts.size() == 1) return {parts[0], parts[0], 1.0};
  if (parts.size() != 3 || !(parts[2] > 0) || parts[1] < parts[0]) {
    throw InputError("grid must be lo:hi:step with step > 0 and hi >= lo, got '" + text + "'");
  }
  return {parts[0], parts[1], parts[2]};
}

inline std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      out.push_back(std::stoi(item));
    } catch (const std::exception&) {
      throw InputError("bad integer list '" + text + "'");
    }
  }
  if (out.empty()) throw InputError("empty integer list");
  return out;
}

// CLI11 would read "-1:1:0.01" as a flag; glue such values to their option.
inline std::vector<std::string> glue_negative_values(const std::vector<std::string>& args) {
  std::vector<std::string> out;
  for (std::size_t k = 0; k < args.size(); ++k) {
    const std::string& a = args[k];
    if (a.rfind("--", 0) == 0 && a.find('=') == std::string::npos && k + 1 < args.size()) {
      const std::string& next = args[k + 1];
      if (next.size() > 1 && next[0] == '-' &&
          (std::isdigit(static_cast<unsigned char>(next[1])) || next[1] == '.')) {
        out.push_back(a + "=" + next);
        ++k;
        continue;
      }
    }
    out.push_back(a);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Commands

struct EvalArgs {
  StateArgs state;
  bool identity = false;
  bool random_frame = false;
  std::string unitaries;
  bool eq8 = false;
};

inline std::string cmd_eval(const EvalArgs& a, const GlobalArgs& g) {
  const DensityMatrix rho = load_state(a.state, g);
  const int m = rho.dims().m, n = rho.dims().n;
  Matrix u = Matrix::Identity(m, m), v = Matrix::Identity(n, n);
  std::string frame = "identity";
  if (!a.unitaries.empty()) {
    const json j = read_json_file(a.unitaries);
    try {
      u = io::unitary_from_json(j.at("u"));
      v = io::unitary_from_json(j.at("v"));
    } catch (const json::exception& e) {
      throw InputError(std::string("frame file: ") + e.what());
    }
    frame = "file";
  } else if (a.random_frame) {
    Rng rng = substream(g.seed, 0);
    u = haar_random_unitary(m, rng);
    v = haar_random_unitary(n, rng);
    frame = "random";
  }
  const Normalization norm = parse_normalization(g.normalization);
  const WitnessEvaluation e = evaluate_witness(rho, u, v, norm);
  json out = io::to_json(e);
  out["dims"] = dims_json(rho.dims());
  out["normalization"] = to_string(norm);
  out["frame"] = frame;
  out["ppt"] = io::to_json(ppt_check(rho));
  if (a.eq8) {
    const Eq8Sides s = horodecki_eq8_sides(rho);
    out["eq8"] = {{"lhs", s.lhs}, {"rhs", s.rhs}, {"violated", s.violated()}};
  }
  return out.dump(2) + "\n";
}

struct ScanArgs {
  std::string family;
  std::string n = "2";
  std::string alpha = "2:5:0.01";
  std::string f = "0:1:0.05";
  bool eq8 = false;
  bool optimize = false;
};

inline std::string cmd_scan(const ScanArgs& a, const GlobalArgs& g) {
  const std::optional<Family> fam = parse_family(a.family);
  if (!fam || (*fam != Family::kHorodecki && *fam != Family::kIsotropic &&
               *fam != Family::kWerner)) {
    throw InputError("scan supports horodecki, isotropic and werner");
  }
  if (a.eq8 && *fam != Family::kHorodecki) throw InputError("--eq8 applies to horodecki only");
  const Normalization norm = parse_normalization(g.normalization);
  const SearchConfig cfg = search_config(g);
  const Grid grid = parse_grid(*fam == Family::kHorodecki ? a.alpha : a.f);
  const std::vector<int> ns = *fam == Family::kHorodecki ? std::vector<int>{3} : parse_int_list(a.n);

  std::vector<io::ScanRow> rows;
  for (int n : ns) {
    if (n < 2) throw InputError("--n must be >= 2");
    for (double x : verify::grid(grid.lo, grid.hi, grid.step)) {
      DensityMatrix rho = *fam == Family::kHorodecki  ? horodecki_state(x)
                          : *fam == Family::kIsotropic ? isotropic_state(n, x)
                                                       : werner_state(n, x);
      const Matrix u = *fam == Family::kWerner ? werner_swap_frame(n) : Matrix::Identity(n, n);
      io::ScanRow row;
      row.family = a.family;
      row.m = rho.dims().m;
      row.n = rho.dims().n;
      row.param = x;
      row.eval = evaluate_witness(rho, u, Matrix::Identity(n, n), norm);
      row.ppt = ppt_check(rho);
      if (a.eq8) row.eq8 = horodecki_eq8_sides(rho);
      if (a.optimize) row.f_value = max_violation(rho, cfg).f_value;
      rows.push_back(std::move(row));
    }
  }

  if (g.format == "json") {
    json arr = json::array();
    for (const io::ScanRow& r : rows) {
      json j = {{"family", r.family}, {"m", r.m}, {"n", r.n}, {"param", r.param},
                {"eval", io::to_json(r.eval)}, {"ppt", io::to_json(r.ppt)}};
      if (r.f_value) j["f_value"] = *r.f_value;
      if (r.eq8) j["eq8"] = {{"lhs", r.eq8->lhs}, {"rhs", r.eq8->rhs}, {"violated", r.eq8->violated()}};
      arr.push_back(std::move(j));
    }
    return arr.dump(2) + "\n";
  }
  std::string csv = std::string(io::kScanHeader) + "\n";
  for (const io::ScanRow& r : rows) csv += io::to_csv(r) + "\n";
  return csv;
}

inline std::string cmd_max_violation(const StateArgs& s, const GlobalArgs& g) {
  const DensityMatrix rho = load_state(s, g);
  const SearchConfig cfg = search_config(g);
  const ViolationReport r = max_violation(rho, cfg);
  json out = io::to_json(r);
  out["dims"] = dims_json(rho.dims());
  out["normalization"] = to_string(cfg.normalization);
  out["ppt"] = io::to_json(ppt_check(rho));
  return out.dump(2) + "\n";
}

struct DistillArgs {
  StateArgs state;
  bool example4 = false;
  int copies = 1;
  int filters = 16;
};

inline std::string cmd_distill(const DistillArgs& a, const GlobalArgs& g) {
  if (a.example4) {
    const Example4Report r = example4_check(a.state.p, parse_normalization(g.normalization));
    json out = io::to_json(r);
    out["verdict"] = r.distillable_evidence ? "evidence found" : "no evidence found";
    out["evidence_matches_projected_npt"] = r.eval.violated == r.projected_ppt.is_npt;
    return out.dump(2) + "\n";
  }
  if (a.filters < 1) throw InputError("--filters must be >= 1");
  const DensityMatrix rho = load_state(a.state, g);
  const DistillReport r = distill_search(rho, a.copies, search_config(g), a.filters);
  json out = io::to_json(r);
  out["dims"] = dims_json(rho.dims());
  return out.dump(2) + "\n";
}

// ---------------------------------------------------------------------------

inline int run_cli(const std::vector<std::string>& raw_args, std::ostream& out,
                   std::ostream& err) {
  CLI::App app{"Nonlinear entanglement witness toolkit"};
  app.require_subcommand(1);
  GlobalArgs g;
  app.add_option("--seed", g.seed, "RNG seed");
  app.add_option("--tol", g.tol, "simplex convergence tolerance");
  app.add_option("--restarts", g.restarts, "search restarts");
  app.add_option("--max-iters", g.max_iters, "simplex iterations per restart");
  app.add_option("--output", g.output, "write the result to this path");
  app.add_option("--format", g.format, "csv | json (scan), text | json (verify)");
  app.add_option("--normalization", g.normalization, "tight | literal");

  EvalArgs eval;
  CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate the witness in one frame");
  add_state_options(eval_cmd, eval.state);
  eval_cmd->add_flag("--identity", eval.identity, "identity frame (default)");
  eval_cmd->add_flag("--random-frame", eval.random_frame, "Haar-random frame from --seed");
  eval_cmd->add_option("--unitaries", eval.unitaries, "frame JSON {u: {d,re,im}, v: {d,re,im}}");
  eval_cmd->add_flag("--eq8", eval.eq8, "also report the literal 3x3 inequality");

  ScanArgs scan;
  CLI::App* scan_cmd = app.add_subcommand("scan", "scan a state family over a parameter grid");
  scan_cmd->add_option("--family", scan.family, "horodecki | isotropic | werner")->required();
  scan_cmd->add_option("--n", scan.n, "dimension or comma list");
  scan_cmd->add_option("--alpha", scan.alpha, "lo:hi:step");
  scan_cmd->add_option("--f", scan.f, "lo:hi:step");
  scan_cmd->add_flag("--eq8", scan.eq8, "report the literal 3x3 inequality");
  scan_cmd->add_flag("--optimize", scan.optimize, "maximize the violation over frames");

  StateArgs mv;
  CLI::App* mv_cmd = app.add_subcommand("max-violation", "search the maximal violation");
  add_state_options(mv_cmd, mv);

  DistillArgs distill;
  CLI::App* distill_cmd = app.add_subcommand("distill", "look for distillability evidence");
  add_state_options(distill_cmd, distill.state);
  distill_cmd->add_flag("--example4", distill.example4, "run the 4x4 example with its filters");
  distill_cmd->add_option("--copies", distill.copies, "number of copies (1 or 2)");
  distill_cmd->add_option("--filters", distill.filters, "filter samples");

  CLI::App* verify_cmd = app.add_subcommand("verify", "consistency report");

  for (CLI::App* sub : {eval_cmd, scan_cmd, mv_cmd, distill_cmd, verify_cmd}) sub->fallthrough();

  std::vector<std::string> args = glue_negative_values(raw_args);
  std::vector<char*> argv;
  std::string program = "entwit";
  argv.push_back(program.data());
  for (std::string& s : args) argv.push_back(s.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  }

  if (!g.format.empty() && g.format != "csv" && g.format != "json" && g.format != "text") {
    err << "error: --format must be csv, json or text\n";
    return kExitInput;
  }

  int code = kExitOk;
  std::string result;
  try {
    if (*eval_cmd) {
      result = cmd_eval(eval, g);
    } else if (*scan_cmd) {
      result = cmd_scan(scan, g);
    } else if (*mv_cmd) {
      result = cmd_max_violation(mv, g);
    } else if (*distill_cmd) {
      result = cmd_distill(distill, g);
    } else if (*verify_cmd) {
      const std::vector<verify::Check> checks = verify::run(g.seed);
      bool all = true;
      for (const auto& c : checks) all = all && c.matches();
      result = g.format == "json" ? verify::to_json(checks).dump(2) + "\n" : verify::to_text(checks);
      code = all ? kExitOk : kExitMismatch;
    }
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kNumeric ? kExitNumeric : kExitInput;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitNumeric;
  }

  if (!g.output.empty()) {
    std::ofstream file(g.output, std::ios::binary);
    if (!file) {
      err << "error: cannot write '" << g.output << "'\n";
      return kExitInput;
    }
    file << result;
  } else {
    out << result;
  }
  return code;
}

}  // namespace entwit::cli
