#include <CLI11.hpp>

#include <cstdio>
#include <map>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "nukc/nukc.hpp"

namespace {

using namespace nukc;
using io::json;

constexpr int kExitSolution = 0;
constexpr int kExitError = 1;
constexpr int kExitInfeasible = 2;

// Certificate trace: one entry per outer cut (with the case that produced it
// and the candidate verdicts behind a Case II cut), inner cut counts per
// candidate, and every round.
class TraceObserver : public SolveObserver {
 public:
  void on_cut(const CutEvent& ev) override {
    if (ev.layer == Layer::kInner) {
      const std::string key = ev.candidate_q ? std::to_string(*ev.candidate_q) : "none";
      ++inner_cuts_[key];
      return;
    }
    json e{{"iteration", ev.iteration}, {"kind", to_string(ev.kind)}, {"b", ev.cut->b}};
    if (ev.kind == CutKind::kSeparatedBudget && ev.candidates != nullptr) {
      e["case"] = "case_II";
      json cands = json::array();
      for (const CandidateVerdict& c : *ev.candidates) {
        cands.push_back({{"q", c.q ? json(*c.q) : json(nullptr)},
                         {"feasible", c.feasible},
                         {"inner_iterations", c.iterations},
                         {"cached", c.cached}});
      }
      e["candidates"] = std::move(cands);
    }
    outer_.push_back(std::move(e));
  }
  void on_round(const RoundEvent& ev) override {
    rounds_.push_back({{"layer", ev.layer == Layer::kOuter ? "outer" : "inner"},
                       {"iteration", ev.iteration},
                       {"route", std::string(ev.route)},
                       {"dilation", ev.dilation}});
  }
  json to_json() const {
    return {{"outer_cuts", outer_}, {"inner_cuts_by_candidate", inner_cuts_}, {"rounds", rounds_}};
  }

 private:
  json outer_ = json::array();
  json rounds_ = json::array();
  std::map<std::string, long> inner_cuts_;
};

struct EngineFlags {
  std::optional<long> max_iters;
  double eps = 1e-9;
  std::optional<double> slack;

  SolverOptions options() const {
    SolverOptions o;
    o.max_iters = max_iters;
    o.eps = eps;
    o.slack = slack;
    return o;
  }
};

void add_engine_flags(CLI::App* cmd, EngineFlags& f) {
  cmd->add_option("--max-iters", f.max_iters, "Iteration cap per ellipsoid run (default from dimension)");
  cmd->add_option("--eps", f.eps, "Minimum violation a returned cut must have")->capture_default_str();
  cmd->add_option("--slack", f.slack, "Oracle check slack (default 1/(4(n+1)))");
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text << '\n';
  } else {
    io::write_text_file(path, text);
  }
}

// ---------------------------------------------------------------- gen

int run_gen(const std::string& kind, const gen::GenParams& p, const std::string& out) {
  emit(io::dump(io::instance_to_json(gen::generate(kind, p))), out);
  return kExitSolution;
}

// ---------------------------------------------------------------- solve

struct SolveFlags {
  std::string input;
  std::string output;
  std::optional<double> rho;
  bool optimize = false;
  std::string trace;
  EngineFlags engine;
};

int run_solve(const SolveFlags& f) {
  const io::InstanceFile file = io::instance_from_json(io::read_json_file(f.input));
  SolverOptions options = f.engine.options();
  TraceObserver tracer;
  if (!f.trace.empty()) options.observer = &tracer;

  bool feasible = false;
  NUkCSolution sol;
  const NUkCInstance& inst = file.instance;
  if (file.Y) {
    if (f.optimize) throw InvalidInstance("--optimize is not available for well-separated instances");
    const double rho = f.rho.value_or(1.0);
    WellSepNUkCInstance w{inst.scaled(rho), *file.Y, {}};
    const WellSepResult r = solve_wellsep(w, options);
    feasible = r.feasible;
    sol = r.solution;
    sol.dilation *= rho;
    std::cerr << "well-separated solve: " << r.iterations << " iterations\n";
  } else if (f.optimize) {
    const OptimizeResult r = optimize(inst, options);
    feasible = r.found;
    sol = r.solution;
    if (r.found) {
      std::cerr << "optimize: rho* = " << r.rho << " (no solution at smaller candidate dilations)\n";
    }
  } else {
    const double rho = f.rho.value_or(1.0);
    if (!(rho > 0.0)) throw InvalidInstance("--rho must be positive");
    const FeasibilityResult r = solve_feasibility(inst.scaled(rho), options);
    feasible = r.feasible;
    sol = r.solution;
    sol.dilation *= rho;
    std::cerr << "solve: route " << to_string(r.route) << ", " << r.outer_iterations
              << " outer iterations, " << r.stats.inner_solves << " inner solves\n";
  }

  int covered = 0;
  if (feasible) {
    const Verification v = verify_solution(inst, sol, sol.dilation);
    if (!v.ok) throw TheoryViolation("reported solution fails verification");
    covered = v.covered;
  } else {
    sol = NUkCSolution{};
  }
  emit(io::dump(io::solution_to_json(feasible, sol, covered)), f.output);
  if (!f.trace.empty()) io::write_text_file(f.trace, io::dump(tracer.to_json()));
  return feasible ? kExitSolution : kExitInfeasible;
}

// ---------------------------------------------------------------- check

struct CheckFlags {
  std::vector<std::string> inputs;
  int random = 0;
  std::uint64_t seed = 1;
  bool wellsep = false;
  EngineFlags engine;
};

harness::SuiteCase case_from_file(const std::string& path) {
  io::InstanceFile f = io::instance_from_json(io::read_json_file(path));
  harness::SuiteCase c;
  c.kind = f.kind.empty() ? "file" : f.kind;
  c.seed = f.seed.value_or(0);
  c.instance = std::move(f.instance);
  c.Y = std::move(f.Y);
  c.brute = brute::brute_force_nukc(c.instance, c.Y ? &*c.Y : nullptr);
  return c;
}

int run_check(const CheckFlags& f) {
  std::vector<harness::SuiteCase> cases;
  std::vector<std::string> labels;
  for (const std::string& path : f.inputs) {
    cases.push_back(case_from_file(path));
    labels.push_back(path);
  }
  for (int i = 0; i < f.random; ++i) {
    const std::uint64_t s = f.seed + static_cast<std::uint64_t>(i);
    cases.push_back(f.wellsep ? harness::random_wellsep_case(s) : harness::random_small_case(s));
    labels.push_back("seed " + std::to_string(s));
  }
  if (cases.empty()) throw InvalidInstance("check needs instance files or --random N");
  int agree = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const harness::CaseReport r = cases[i].Y ? harness::check_wellsep_case(cases[i], f.engine.options())
                                             : harness::check_case(cases[i], f.engine.options());
    agree += r.sound ? 1 : 0;
    std::cout << labels[i] << ": brute " << (r.brute_feasible ? "feasible" : "infeasible")
              << ", solver "
              << (r.error.empty() ? (r.solver_feasible ? "solution" : "infeasible") : "error");
    if (r.solver_feasible) std::cout << " (dilation " << r.dilation << ")";
    std::cout << ", " << r.cuts_unique << " cuts checked";
    if (!r.sound) std::cout << "  MISMATCH: " << r.note;
    std::cout << '\n';
  }
  std::cout << "agreement: " << agree << '/' << cases.size() << '\n';
  return agree == static_cast<int>(cases.size()) ? kExitSolution : kExitError;
}

// ---------------------------------------------------------------- bench

struct BenchFlags {
  std::string suite = "small";
  int count = 50;
  std::uint64_t seed = 1;
  int parallel = 1;
  std::string json_out;
  int planted_n = 40;
  EngineFlags engine;
};

harness::CaseReport bench_planted(std::uint64_t seed, int n, const SolverOptions& options) {
  gen::Rng rng(seed);
  gen::GenParams p;
  p.n = n;
  p.k1 = gen::uniform_int(rng, 1, 4);
  p.k2 = 0;
  p.r1 = 1.0;
  p.r2 = 0.0;
  p.outliers = gen::uniform_int(rng, 0, 5);
  p.seed = seed;
  harness::SuiteCase c;
  c.seed = seed;
  c.kind = "planted";
  c.instance = gen::planted(p).instance;
  c.brute.feasible = true;  // by construction
  c.brute.best_covered = c.instance.m;
  return harness::check_case(c, options, false);
}

int run_bench(const BenchFlags& f) {
  const SolverOptions options = f.engine.options();
  const auto t0 = std::chrono::steady_clock::now();
  const std::vector<harness::CaseReport> rows =
      harness::parallel_map(f.count, f.parallel, [&](int i) {
        const std::uint64_t s = f.seed + static_cast<std::uint64_t>(i);
        if (f.suite == "small") return harness::check_case(harness::random_small_case(s), options);
        if (f.suite == "wellsep") {
          return harness::check_wellsep_case(harness::random_wellsep_case(s), options);
        }
        return bench_planted(s, f.planted_n, options);
      });
  const double wall = harness::seconds_since(t0);
  const harness::SuiteSummary s = harness::summarize(rows);

  std::cout << harness::report_table(rows) << '\n'
            << "instances " << s.total << ", agreement " << s.agree << '/' << s.total
            << ", solutions " << s.solutions << ", infeasible " << s.infeasible << ", errors "
            << s.errors << ", max dilation " << s.max_dilation << ", max outer iterations "
            << s.max_outer_iterations << ", cuts checked " << s.cuts_checked << " ("
            << s.cuts_invalid << " invalid), wall " << wall << " s\n";
  json j;
  j["suite"] = f.suite;
  j["seed"] = f.seed;
  j["summary"] = harness::summary_to_json(s);
  j["summary"]["wall_seconds"] = wall;
  j["instances"] = json::array();
  for (const auto& r : rows) j["instances"].push_back(harness::report_to_json(r));
  if (!f.json_out.empty()) io::write_text_file(f.json_out, io::dump(j));
  else std::cout << io::dump(j) << '\n';
  return s.agree == s.total ? kExitSolution : kExitError;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust 2-NUkC solver: round-or-cut 10-approximation with exact checking"};
  app.require_subcommand(1);

  std::string gen_kind;
  std::string gen_out;
  nukc::gen::GenParams gp;
  auto* gen = app.add_subcommand("gen", "Generate an instance as JSON");
  gen->add_option("kind", gen_kind, "planted | uniform | graph")
      ->required()
      ->check(CLI::IsMember({"planted", "uniform", "graph"}));
  gen->add_option("--n", gp.n, "Number of points")->capture_default_str();
  gen->add_option("--k1", gp.k1, "Radius-1 budget")->capture_default_str();
  gen->add_option("--k2", gp.k2, "Radius-2 budget")->capture_default_str();
  gen->add_option("--m", gp.m, "Coverage target (default: all inliers)");
  gen->add_option("--r1", gp.r1, "Radius 1")->capture_default_str();
  gen->add_option("--r2", gp.r2, "Radius 2")->capture_default_str();
  gen->add_option("--outliers", gp.outliers, "Planted outliers")->capture_default_str();
  gen->add_option("--edge-prob", gp.edge_prob, "Extra edge probability (graph)")->capture_default_str();
  gen->add_option("--max-weight", gp.max_weight, "Maximum edge weight (graph)")->capture_default_str();
  gen->add_option("--seed", gp.seed, "Random seed")->capture_default_str();
  gen->add_option("-o,--output", gen_out, "Output file (default stdout)");

  SolveFlags sf;
  auto* solve = app.add_subcommand("solve", "Solve an instance file");
  solve->add_option("instance", sf.input, "Instance JSON")->required();
  auto* rho_opt = solve->add_option("--rho", sf.rho, "Solve the instance with radii scaled by rho");
  solve->add_flag("--optimize", sf.optimize, "Binary search for the smallest dilation")->excludes(rho_opt);
  solve->add_option("--trace", sf.trace, "Write the certificate trace to this JSON file");
  solve->add_option("-o,--output", sf.output, "Solution file (default stdout)");
  add_engine_flags(solve, sf.engine);

  CheckFlags cf;
  auto* check = app.add_subcommand("check", "Compare the solver against brute force");
  check->add_option("instances", cf.inputs, "Instance files");
  check->add_option("--random", cf.random, "Also check N seeded random small instances");
  check->add_option("--seed", cf.seed, "First seed for --random")->capture_default_str();
  check->add_flag("--wellsep", cf.wellsep, "Random cases are well-separated instances");
  add_engine_flags(check, cf.engine);

  BenchFlags bf;
  auto* bench = app.add_subcommand("bench", "Run a seeded suite and report a table");
  bench->add_option("--suite", bf.suite, "small | wellsep | planted")
      ->check(CLI::IsMember({"small", "wellsep", "planted"}))
      ->capture_default_str();
  bench->add_option("--count", bf.count, "Number of instances")->capture_default_str();
  bench->add_option("--seed", bf.seed, "First seed")->capture_default_str();
  bench->add_option("--parallel", bf.parallel, "Worker threads")->capture_default_str();
  bench->add_option("--planted-n", bf.planted_n, "Points per planted instance")->capture_default_str();
  bench->add_option("--json", bf.json_out, "Write the JSON report here instead of stdout");
  add_engine_flags(bench, bf.engine);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitSolution : kExitError;
  }
  try {
    if (*gen) return run_gen(gen_kind, gp, gen_out);
    if (*solve) return run_solve(sf);
    if (*check) return run_check(cf);
    if (*bench) return run_bench(bf);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitError;
  }
  return kExitError;
}
