#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "nukc/brute.hpp"
#include "nukc/generators.hpp"
#include "nukc/outer.hpp"
#include "nukc/wellsep.hpp"

// Seeded random suites, cut auditing against the exhaustive hull, and the
// check/bench drivers used by the CLI and the acceptance tests.
namespace nukc::harness {

// ---------------------------------------------------------------- suites

struct SuiteCase {
  std::uint64_t seed = 0;
  std::string kind;
  NUkCInstance instance;
  std::optional<PointSet> Y;  // well-separated cases only
  brute::BruteResult brute;   // at rho = 1 (restricted to Y when present)
};

inline double random_pair_distance(const MetricSpace& metric, gen::Rng& rng) {
  const int n = metric.size();
  for (int tries = 0; tries < 32; ++tries) {
    const int u = gen::uniform_int(rng, 0, n - 1);
    const int v = gen::uniform_int(rng, 0, n - 1);
    if (metric(u, v) > 0.0) return metric(u, v);
  }
  return 1.0;
}

// n in [4, 10], k1, k2 in [0, 2], uniform-square or graph metric, radii drawn
// around the pairwise distances, m near the brute-force optimum so that both
// verdicts occur.
inline SuiteCase random_small_case(std::uint64_t seed, int max_n = 10) {
  gen::Rng rng(seed * 0x9E3779B97F4A7C15ULL + 17);
  SuiteCase c;
  c.seed = seed;
  const int n = gen::uniform_int(rng, 4, std::max(4, max_n));
  MetricSpace metric;
  if (seed % 2 == 0) {
    c.kind = "uniform";
    metric = gen::uniform_square_metric(n, rng);
  } else {
    c.kind = "graph";
    metric = gen::random_graph_metric(n, 0.1 + 0.4 * gen::uniform01(rng), 6, rng);
  }
  const double r1 = random_pair_distance(metric, rng) * (0.6 + 0.8 * gen::uniform01(rng));
  const double r2 = gen::uniform01(rng) < 0.25 ? 0.0 : r1 * (0.1 + 0.85 * gen::uniform01(rng));
  const int k1 = gen::uniform_int(rng, 0, 2);
  const int k2 = gen::uniform_int(rng, 0, 2);
  c.instance = NUkCInstance::make(std::move(metric), r1, r2, k1, k2, n);
  const brute::BruteResult full = brute::brute_force_nukc(c.instance);
  c.instance.m = std::clamp(full.best_covered + gen::uniform_int(rng, -2, 1), 0, n);
  c.brute = brute::brute_force_nukc(c.instance);
  return c;
}

// Well-separated case: radius-1 centers restricted to Y, pairwise > 4 r1.
inline SuiteCase random_wellsep_case(std::uint64_t seed, int max_n = 9) {
  gen::Rng rng(seed * 0xD1B54A32D192ED03ULL + 5);
  SuiteCase c;
  c.seed = seed;
  const int n = gen::uniform_int(rng, 3, std::max(3, max_n));
  MetricSpace metric;
  if (seed % 2 == 0) {
    c.kind = "wellsep-uniform";
    metric = gen::uniform_square_metric(n, rng);
  } else {
    c.kind = "wellsep-graph";
    metric = gen::random_graph_metric(n, 0.1 + 0.4 * gen::uniform01(rng), 8, rng);
  }
  const double r1 = random_pair_distance(metric, rng) * (0.1 + 0.3 * gen::uniform01(rng));
  const double r2 = gen::uniform01(rng) < 0.25 ? 0.0 : r1 * (0.1 + 0.85 * gen::uniform01(rng));
  std::vector<PointId> order(n);
  for (int i = 0; i < n; ++i) order[i] = i;
  std::shuffle(order.begin(), order.end(), rng);
  const int want = gen::uniform_int(rng, 1, 4);
  PointSet Y;
  for (PointId p : order) {
    if (static_cast<int>(Y.size()) >= want) break;
    bool far = true;
    for (PointId y : Y) far = far && metric(p, y) > 4.0 * r1;
    if (far) Y.push_back(p);
  }
  const int k1 = gen::uniform_int(rng, 0, 2);
  const int k2 = gen::uniform_int(rng, 0, 2);
  c.instance = NUkCInstance::make(std::move(metric), r1, r2, k1, k2, n);
  c.Y = normalized(std::move(Y));
  const brute::BruteResult full = brute::brute_force_nukc(c.instance, &*c.Y);
  c.instance.m = std::clamp(full.best_covered + gen::uniform_int(rng, -2, 1), 0, n);
  c.brute = brute::brute_force_nukc(c.instance, &*c.Y);
  return c;
}

inline WellSepNUkCInstance as_wellsep(const SuiteCase& c) {
  WellSepNUkCInstance w;
  w.base = c.instance;
  w.Y = c.Y.value_or(PointSet{});
  return w;
}

// ---------------------------------------------------------------- cut audit

// Collects every cut emitted during one solve, deduplicated per hull, and
// checks each against the exhaustive integral hull it must be valid for.
// Outer cuts live on the instance itself; inner cuts on the hull of their
// well-separated instance, whose radius-1 facilities are Y and whose
// radius-2 facilities are all points of the enclosing instance.
class CutAuditor : public SolveObserver {
 public:
  explicit CutAuditor(const NUkCInstance& root) : root_(root) {}

  void on_cut(const CutEvent& ev) override {
    Context ctx;
    if (ev.layer == Layer::kOuter) {
      ctx.clients = all_points();
      ctx.fac1 = all_points();
      ctx.R1 = root_.r1;
      ctx.k1 = root_.k1;
      ctx.m = root_.m;
    } else {
      const WellSepNUkCInstance& w = *ev.inner_instance;
      ctx.clients = w.parent_ids.empty() ? all_points() : w.parent_ids;
      for (PointId y : w.Y) ctx.fac1.push_back(w.to_parent(y));
      ctx.R1 = w.base.r1;
      ctx.k1 = w.base.k1;
      ctx.m = w.base.m;
      ctx.inner = true;
    }
    ++emitted_;
    ++by_kind_[std::string(to_string(ev.kind))];
    cuts_[ctx].insert({ev.cut->a1, ev.cut->a2, ev.cut->b});
  }

  struct Report {
    long emitted = 0;
    long unique = 0;
    long invalid = 0;
    std::string first_invalid;  // description of the first invalid cut
    std::map<std::string, long> by_kind;
  };

  Report validate() const {
    Report r;
    r.emitted = emitted_;
    r.by_kind = by_kind_;
    for (const auto& [ctx, cuts] : cuts_) {
      const brute::IntegralHull hull =
          brute::IntegralHull::build(root_.metric, ctx.clients, ctx.fac1, all_points(), ctx.R1,
                                     root_.r2, ctx.k1, root_.k2, ctx.m);
      for (const auto& [a1, a2, b] : cuts) {
        ++r.unique;
        const Cut cut{a1, a2, b};
        if (hull.validates(cut)) continue;
        ++r.invalid;
        if (r.first_invalid.empty()) {
          std::ostringstream os;
          os << (ctx.inner ? "inner" : "outer") << " cut with b=" << b << " violated on a "
             << ctx.clients.size() << "-client hull (k1=" << ctx.k1 << ", m=" << ctx.m << ")";
          r.first_invalid = os.str();
        }
      }
    }
    return r;
  }

 private:
  struct Context {
    std::vector<PointId> clients;
    std::vector<PointId> fac1;
    double R1 = 0.0;
    int k1 = 0;
    int m = 0;
    bool inner = false;
    auto tie() const { return std::tie(clients, fac1, R1, k1, m, inner); }
    bool operator<(const Context& o) const { return tie() < o.tie(); }
  };
  using CutKey = std::tuple<std::vector<double>, std::vector<double>, double>;

  std::vector<PointId> all_points() const {
    std::vector<PointId> all(root_.size());
    for (int i = 0; i < root_.size(); ++i) all[i] = i;
    return all;
  }

  const NUkCInstance& root_;
  long emitted_ = 0;
  std::map<std::string, long> by_kind_;
  std::map<Context, std::set<CutKey>> cuts_;
};

// ---------------------------------------------------------------- checking

struct CaseReport {
  std::uint64_t seed = 0;
  std::string kind;
  int n = 0;
  int k1 = 0;
  int k2 = 0;
  int m = 0;
  bool brute_feasible = false;
  int brute_best = 0;
  bool solver_feasible = false;
  double dilation = 0.0;
  int covered = 0;
  bool verified = false;       // solution covers >= m at its stated dilation
  bool sound = false;          // the verdict is consistent with brute force
  std::string route;
  long outer_iterations = 0;
  long inner_solves = 0;
  long inner_iterations = 0;
  long cuts_unique = 0;
  long cuts_invalid = 0;
  double seconds = 0.0;
  std::string error;           // exception text, if any
  std::string note;            // first inconsistency, if any
};

inline double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// Soundness in the sense of the approximation contract: a SOLUTION must
// verify at dilation <= max_dilation, and INFEASIBLE must be confirmed by
// brute force. A SOLUTION on a brute-infeasible instance is allowed.
inline void judge(CaseReport& r, double max_dilation) {
  std::ostringstream note;
  if (!r.error.empty()) {
    note << "error: " << r.error;
  } else if (r.solver_feasible) {
    if (!r.verified) note << "solution does not verify (covers " << r.covered << " < m)";
    else if (r.dilation > max_dilation) note << "dilation " << r.dilation << " > " << max_dilation;
  } else if (r.brute_feasible) {
    note << "false INFEASIBLE (brute force covers " << r.brute_best << " >= m)";
  }
  if (r.cuts_invalid > 0) note << (note.tellp() > 0 ? "; " : "") << r.cuts_invalid << " invalid cuts";
  r.note = note.str();
  r.sound = r.note.empty();
}

inline CaseReport fill_header(const SuiteCase& c) {
  CaseReport r;
  r.seed = c.seed;
  r.kind = c.kind;
  r.n = c.instance.size();
  r.k1 = c.instance.k1;
  r.k2 = c.instance.k2;
  r.m = c.instance.m;
  r.brute_feasible = c.brute.feasible;
  r.brute_best = c.brute.best_covered;
  return r;
}

inline CaseReport check_case(const SuiteCase& c, SolverOptions options = {}, bool audit = true) {
  CaseReport r = fill_header(c);
  CutAuditor auditor(c.instance);
  if (audit) options.observer = &auditor;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const FeasibilityResult res = solve_feasibility(c.instance, options);
    r.seconds = seconds_since(t0);
    r.solver_feasible = res.feasible;
    r.route = std::string(to_string(res.route));
    r.outer_iterations = res.outer_iterations;
    r.inner_solves = res.stats.inner_solves;
    r.inner_iterations = res.stats.inner_iterations;
    if (res.feasible) {
      r.dilation = res.solution.dilation;
      const Verification v = verify_solution(c.instance, res.solution, res.solution.dilation);
      r.verified = v.ok;
      r.covered = v.covered;
    }
    if (audit) {
      const CutAuditor::Report a = auditor.validate();
      r.cuts_unique = a.unique;
      r.cuts_invalid = a.invalid;
    }
  } catch (const std::exception& e) {
    r.seconds = seconds_since(t0);
    r.error = e.what();
  }
  judge(r, 10.0);
  return r;
}

inline CaseReport check_wellsep_case(const SuiteCase& c, SolverOptions options = {},
                                     bool audit = true) {
  CaseReport r = fill_header(c);
  CutAuditor auditor(c.instance);
  if (audit) options.observer = &auditor;
  const WellSepNUkCInstance w = as_wellsep(c);
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const WellSepResult res = solve_wellsep(w, options);
    r.seconds = seconds_since(t0);
    r.solver_feasible = res.feasible;
    r.route = res.short_circuit ? "short_circuit" : "tree";
    r.outer_iterations = res.iterations;
    if (res.feasible) {
      r.dilation = res.solution.dilation;
      const Verification v = verify_solution(c.instance, res.solution, res.solution.dilation);
      r.verified = v.ok;
      r.covered = v.covered;
    }
    if (audit) {
      const CutAuditor::Report a = auditor.validate();
      r.cuts_unique = a.unique;
      r.cuts_invalid = a.invalid;
    }
  } catch (const std::exception& e) {
    r.seconds = seconds_since(t0);
    r.error = e.what();
  }
  judge(r, 4.0);
  return r;
}

// Runs fn(i) for i in [0, count) on `parallel` threads; results keep index
// order so output is independent of scheduling.
template <class Fn>
auto parallel_map(int count, int parallel, Fn&& fn) {
  using R = decltype(fn(0));
  std::vector<R> out(count);
  const int threads = std::max(1, std::min(parallel, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) out[i] = fn(i);
    return out;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  for (int t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (int i = next++; i < count; i = next++) out[i] = fn(i);
    });
  }
  for (auto& th : pool) th.join();
  return out;
}

// ---------------------------------------------------------------- reports

inline io::json report_to_json(const CaseReport& r) {
  io::json j;
  j["seed"] = r.seed;
  j["kind"] = r.kind;
  j["n"] = r.n;
  j["k1"] = r.k1;
  j["k2"] = r.k2;
  j["m"] = r.m;
  j["brute_feasible"] = r.brute_feasible;
  j["solver"] = r.error.empty() ? (r.solver_feasible ? "solution" : "infeasible") : "error";
  j["dilation"] = r.dilation;
  j["route"] = r.route;
  j["outer_iterations"] = r.outer_iterations;
  j["inner_solves"] = r.inner_solves;
  j["inner_iterations"] = r.inner_iterations;
  j["cuts_checked"] = r.cuts_unique;
  j["cuts_invalid"] = r.cuts_invalid;
  j["seconds"] = r.seconds;
  j["agree"] = r.sound;
  if (!r.note.empty()) j["note"] = r.note;
  return j;
}

inline std::string report_table(const std::vector<CaseReport>& rows) {
  std::ostringstream os;
  os << std::left << std::setw(8) << "seed" << std::setw(9) << "kind" << std::right
     << std::setw(4) << "n" << std::setw(4) << "k1" << std::setw(4) << "k2" << std::setw(4) << "m"
     << std::setw(7) << "brute" << std::setw(12) << "solver" << std::setw(10) << "dilation"
     << std::setw(15) << "route" << std::setw(8) << "outer" << std::setw(8) << "inner"
     << std::setw(11) << "seconds" << std::setw(7) << "agree" << '\n';
  for (const CaseReport& r : rows) {
    const std::string verdict =
        r.error.empty() ? (r.solver_feasible ? "solution" : "infeasible") : "error";
    os << std::left << std::setw(8) << r.seed << std::setw(9) << r.kind.substr(0, 8) << std::right
       << std::setw(4) << r.n << std::setw(4) << r.k1 << std::setw(4) << r.k2 << std::setw(4)
       << r.m << std::setw(7) << (r.brute_feasible ? "yes" : "no") << std::setw(12) << verdict
       << std::setw(10) << std::fixed << std::setprecision(3) << r.dilation << std::setw(15)
       << r.route << std::setw(8) << r.outer_iterations << std::setw(8) << r.inner_solves
       << std::setw(11) << std::setprecision(4) << r.seconds << std::setw(7)
       << (r.sound ? "yes" : "NO") << '\n';
    os.unsetf(std::ios::fixed);
  }
  return os.str();
}

struct SuiteSummary {
  int total = 0;
  int agree = 0;
  int brute_feasible = 0;
  int solutions = 0;
  int infeasible = 0;
  int errors = 0;
  double max_dilation = 0.0;
  long max_outer_iterations = 0;
  long cuts_checked = 0;
  long cuts_invalid = 0;
  double seconds = 0.0;
  double max_seconds = 0.0;
};

inline SuiteSummary summarize(const std::vector<CaseReport>& rows) {
  SuiteSummary s;
  for (const CaseReport& r : rows) {
    ++s.total;
    s.agree += r.sound ? 1 : 0;
    s.brute_feasible += r.brute_feasible ? 1 : 0;
    if (!r.error.empty()) ++s.errors;
    else if (r.solver_feasible) ++s.solutions;
    else ++s.infeasible;
    if (r.solver_feasible) s.max_dilation = std::max(s.max_dilation, r.dilation);
    s.max_outer_iterations = std::max(s.max_outer_iterations, r.outer_iterations);
    s.cuts_checked += r.cuts_unique;
    s.cuts_invalid += r.cuts_invalid;
    s.seconds += r.seconds;
    s.max_seconds = std::max(s.max_seconds, r.seconds);
  }
  return s;
}

inline io::json summary_to_json(const SuiteSummary& s) {
  return {{"total", s.total},
          {"agree", s.agree},
          {"brute_feasible", s.brute_feasible},
          {"solutions", s.solutions},
          {"infeasible", s.infeasible},
          {"errors", s.errors},
          {"max_dilation", s.max_dilation},
          {"max_outer_iterations", s.max_outer_iterations},
          {"cuts_checked", s.cuts_checked},
          {"cuts_invalid", s.cuts_invalid},
          {"seconds_total", s.seconds},
          {"seconds_max", s.max_seconds}};
}

}  // namespace nukc::harness
