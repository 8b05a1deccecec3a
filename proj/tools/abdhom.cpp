// abdhom: satisfiability, certificate checking and tiling reductions for ABD over homogeneous models.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "abdhom/analysis.hpp"
#include "abdhom/json_io.hpp"
#include "abdhom/random.hpp"
#include "abdhom/solver.hpp"
#include "abdhom/tiling.hpp"

namespace {

using namespace abdhom;

enum Exit : int { kSat = 0, kUnsat = 1, kUnknown = 2, kUsage = 64, kDataErr = 65, kNoInput = 66 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct FormulaSource {
  std::string text;
  std::string file;

  void add_to(CLI::App* app) {
    auto* f = app->add_option("-f,--formula", text, "formula in concrete syntax");
    auto* ff = app->add_option("--formula-file", file, "file holding the formula");
    f->excludes(ff);
  }
  bool given() const { return !text.empty() || !file.empty(); }

  Formula load() const {
    if (!given()) throw UsageError("a formula is required (--formula or --formula-file)");
    std::string src = text;
    if (!file.empty()) {
      std::ifstream in(file);
      if (!in) throw JsonInputError("cannot open " + file);
      std::stringstream ss;
      ss << in.rdbuf();
      src = ss.str();
    }
    return parse(src);
  }
};

void print_model(const HomModel& m) { std::cout << model_to_json(m).dump() << '\n'; }

int cmd_sat(const FormulaSource& src, const SolveOptions& opt, const std::string& emit_model, const std::string& emit_compass) {
  Formula phi = src.load();
  Solver solver(phi);
  std::size_t size = size_metric(phi);
  std::cout << "formula: " << to_string(phi) << '\n';
  std::cout << "|phi| = " << size << ", theoretical bound on N: " << small_model_bound_text(size) << " (not used)\n";
  if (opt.all_intervals) std::cout << "mode: satisfaction on any interval (non-standard)\n";
  SolveResult r = solver.solve(opt);
  std::cout << verdict_name(r.verdict);
  if (r.verdict == Verdict::Sat) {
    std::cout << " N=" << r.model->n << '\n';
    print_model(*r.model);
    if (!emit_model.empty()) write_json_file(emit_model, model_to_json(*r.model));
    if (!emit_compass.empty()) {
      if (!r.compass) throw std::runtime_error("no compass for a non-initial model");
      write_json_file(emit_compass, compass_to_json(solver.space(), *r.compass));
    }
    return kSat;
  }
  if (r.verdict == Verdict::UnsatWithinBound) {
    std::cout << " cap=" << opt.cap << (r.refuted ? " (no model of any size)" : "") << '\n';
    return kUnsat;
  }
  std::cout << " states=" << r.states << '\n';
  return kUnknown;
}

int cmd_verify(const FormulaSource& src, const std::string& model_file, bool anywhere) {
  Formula phi = src.load();
  HomModel m = model_from_json(read_json_file(model_file));
  bool ok = anywhere ? verify_somewhere(m, phi) : verify(m, phi);
  std::cout << (ok ? "true" : "false") << '\n';
  return ok ? 0 : 1;
}

int cmd_check_compass(const FormulaSource& src, const std::string& compass_file) {
  json j = read_json_file(compass_file);
  Formula phi;
  if (src.given()) {
    phi = src.load();
  } else if (j.contains("formula") && j["formula"].is_string()) {
    phi = parse(j["formula"].get<std::string>());
  } else {
    throw JsonContentError("compass file has no formula; pass one with --formula");
  }
  AtomSpace sp(phi);
  Compass c = compass_from_json(sp, j);
  ViolationReport rep = validate(sp, c);
  for (const auto& v : rep) {
    std::cout << v.condition;
    for (auto [x, y] : v.cells) std::cout << " (" << x << "," << y << ")";
    if (!v.formula.empty()) std::cout << " " << v.formula;
    std::cout << '\n';
  }
  std::cout << (rep.empty() ? "valid" : "invalid: " + std::to_string(rep.size()) + " violation(s)") << '\n';
  return rep.empty() ? 0 : 1;
}

int cmd_tiling(const std::string& instance_file, const std::string& mode, std::size_t cap, std::size_t prefix_max,
               std::size_t period_max) {
  TilingInstance t = instance_from_json(read_json_file(instance_file));
  if (mode == "generate") {
    std::cout << to_string(generate_formula(t)) << '\n';
    return 0;
  }
  auto grid = solve_tiling(t, prefix_max, period_max);
  if (mode == "oracle") {
    if (grid) {
      std::cout << "positive\n" << grid_to_json(*grid).dump() << '\n';
      return kSat;
    }
    std::cout << "negative\n";
    return kUnsat;
  }
  SolveOptions opt;
  opt.cap = cap;
  SolveResult r = solve(generate_formula(t), opt);
  if (r.verdict == Verdict::Unknown) {
    std::cout << "UNKNOWN (solver state budget)\n";
    return kUnknown;
  }
  bool sat = r.verdict == Verdict::Sat;
  if (sat) {
    TileGrid g = decode_model(*r.model, t);
    auto bad = grid_violations(t, g);
    std::cout << "decoded grid: " << grid_to_json(g).dump() << (bad.empty() ? "" : " INVALID") << '\n';
    if (!bad.empty()) return kUnknown;
  }
  if (sat == grid.has_value()) {
    std::cout << (sat ? "AGREE(SAT)" : "AGREE(UNSAT)") << '\n';
    return sat ? kSat : kUnsat;
  }
  std::cout << "DISAGREE solver=" << verdict_name(r.verdict) << " oracle=" << (grid ? "positive" : "negative") << '\n';
  return kUnknown;
}

int cmd_selftest(std::size_t count, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::size_t bad = 0;
  for (std::size_t i = 0; i < count; ++i) {
    Formula phi = random_formula(rng, 1 + rng() % 6, {"p", "q"});
    SolveOptions opt;
    opt.cap = 4;
    SolveResult r = solve(phi, opt);
    auto bf = brute_force_sat(phi, 4);
    bool agree = (r.verdict == Verdict::Sat) == bf.has_value() && r.verdict != Verdict::Unknown;
    if (agree && bf) agree = r.model->n == bf->n && verify(*r.model, phi);
    if (agree && r.compass) agree = validate(AtomSpace(phi), *r.compass).empty();
    if (!agree) {
      ++bad;
      std::cout << "mismatch: " << to_string(phi) << '\n';
    }
  }
  std::cout << "selftest: " << count - bad << "/" << count << " formulas agree with brute force\n";
  return bad == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Satisfiability checking for ABD over finite homogeneous models"};
  app.require_subcommand(1);

  FormulaSource sat_src, verify_src, compass_src;
  SolveOptions opt;
  std::string emit_model, emit_compass, model_file, compass_file, instance_file, mode = "crosscheck";
  bool verify_anywhere = false;
  std::size_t tiling_cap = 12, prefix_max = 3, period_max = 3, self_count = 200;
  unsigned seed = 1;

  auto* sat = app.add_subcommand("sat", "decide satisfiability up to a cap on N");
  sat_src.add_to(sat);
  sat->add_option("--cap", opt.cap, "largest N searched")->capture_default_str();
  sat->add_option("--max-states", opt.max_states, "state budget before answering UNKNOWN")->capture_default_str();
  sat->add_option("--jobs", opt.jobs, "worker threads")->check(CLI::Range(1u, 256u));
  sat->add_option("--emit-model", emit_model, "write the model as JSON");
  sat->add_option("--emit-compass", emit_compass, "write the compass structure as JSON");
  sat->add_flag("--all-intervals", opt.all_intervals, "non-standard: satisfaction on any interval instead of [0,N]");

  auto* ver = app.add_subcommand("verify", "check a model against a formula at [0,N]");
  verify_src.add_to(ver);
  ver->add_option("--model", model_file, "model JSON")->required();
  ver->add_flag("--all-intervals", verify_anywhere, "non-standard: accept satisfaction on any interval");

  auto* chk = app.add_subcommand("check-compass", "validate a compass structure");
  compass_src.add_to(chk);
  chk->add_option("--compass", compass_file, "compass JSON")->required();

  auto* til = app.add_subcommand("tiling", "corridor tiling reduction");
  til->add_option("--instance", instance_file, "instance JSON")->required();
  til->add_option("--mode", mode, "generate, oracle or crosscheck")
      ->check(CLI::IsMember({"generate", "oracle", "crosscheck"}))
      ->capture_default_str();
  til->add_option("--cap", tiling_cap, "solver cap on N")->capture_default_str();
  til->add_option("--prefix-max", prefix_max)->capture_default_str();
  til->add_option("--period-max", period_max)->capture_default_str();

  auto* self = app.add_subcommand("selftest", "compare the solver with brute force on random formulas");
  self->add_option("--count", self_count)->capture_default_str();
  self->add_option("--seed", seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*sat) return cmd_sat(sat_src, opt, emit_model, emit_compass);
    if (*ver) return cmd_verify(verify_src, model_file, verify_anywhere);
    if (*chk) return cmd_check_compass(compass_src, compass_file);
    if (*til) return cmd_tiling(instance_file, mode, tiling_cap, prefix_max, period_max);
    if (*self) return cmd_selftest(self_count, seed);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kDataErr;
  } catch (const JsonInputError& e) {
    std::cerr << "input error: " << e.what() << '\n';
    return kNoInput;
  } catch (const JsonContentError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return kDataErr;
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return kUsage;
  } catch (const std::length_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsage;
  }
  return kUsage;
}
