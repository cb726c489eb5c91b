// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include "nukc/nukc.hpp"

using namespace nukc;

namespace {

const std::string kFixtures = NUKC_FIXTURE_DIR;

int failures = 0;
std::map<int, std::string> lines;  // printed in criterion order at the end

void report(int id, const char* name, bool ok, const std::string& detail) {
  if (!ok) ++failures;
  lines[id] = std::string(ok ? "PASS" : "FAIL") + "  criterion " + std::to_string(id) + " (" +
              name + "): " + detail;
  std::cerr << "criterion " << id << " done" << std::endl;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

// 1-3: approximation soundness, infeasibility soundness, cut validity.
void small_suite(long& cuts_checked, long& cuts_invalid) {
  constexpr int kCases = 500;
  const auto t0 = std::chrono::steady_clock::now();
  int feasible = 0;
  int solved_ok = 0;
  int infeasible_verdicts = 0;
  int false_infeasible = 0;
  int bad_solutions = 0;
  int errors = 0;
  int uniform = 0;
  double max_dilation = 0.0;
  std::string first_problem;
  for (int i = 0; i < kCases; ++i) {
    const harness::SuiteCase c = harness::random_small_case(static_cast<std::uint64_t>(i + 1));
    uniform += c.kind == "uniform" ? 1 : 0;
    const harness::CaseReport r = harness::check_case(c);
    cuts_checked += r.cuts_unique;
    cuts_invalid += r.cuts_invalid;
    if (!r.error.empty()) {
      ++errors;
      if (first_problem.empty()) first_problem = "seed " + std::to_string(c.seed) + ": " + r.error;
      continue;
    }
    if (c.brute.feasible) {
      ++feasible;
      if (r.solver_feasible && r.verified && r.dilation <= 10.0) ++solved_ok;
      else if (first_problem.empty()) first_problem = "seed " + std::to_string(c.seed) + ": " + r.note;
    }
    if (r.solver_feasible) {
      max_dilation = std::max(max_dilation, r.dilation);
      if (!r.verified || r.dilation > 10.0) ++bad_solutions;
    } else {
      ++infeasible_verdicts;
      if (c.brute.feasible) ++false_infeasible;
    }
  }
  const double secs = since(t0);
  std::ostringstream a;
  a << kCases << " instances (" << uniform << " uniform, " << kCases - uniform << " graph), "
    << solved_ok << '/' << feasible << " brute-feasible solved and verified at dilation <= 10"
    << " (max " << max_dilation << "), " << bad_solutions << " unverified solutions, " << errors
    << " errors, " << secs << " s (limit 600 s)";
  if (!first_problem.empty()) a << "; first problem: " << first_problem;
  report(1, "approximation soundness",
         solved_ok == feasible && bad_solutions == 0 && errors == 0 && secs <= 600.0, a.str());
  std::ostringstream b;
  b << infeasible_verdicts << " INFEASIBLE verdicts, " << false_infeasible
    << " refuted by brute force, " << errors << " errors";
  report(2, "infeasibility soundness", false_infeasible == 0 && errors == 0, b.str());
}

// 4: inner solver against Y-restricted brute force.
void wellsep_suite(long& cuts_checked, long& cuts_invalid) {
  constexpr int kCases = 300;
  int feasible = 0;
  int solved_ok = 0;
  int false_infeasible = 0;
  int bad_solutions = 0;
  int errors = 0;
  for (int i = 0; i < kCases; ++i) {
    const harness::SuiteCase c = harness::random_wellsep_case(static_cast<std::uint64_t>(i + 1));
    const harness::CaseReport r = harness::check_wellsep_case(c);
    cuts_checked += r.cuts_unique;
    cuts_invalid += r.cuts_invalid;
    if (!r.error.empty()) {
      ++errors;
      continue;
    }
    if (c.brute.feasible) {
      ++feasible;
      solved_ok += r.solver_feasible && r.verified && r.dilation <= 4.0 ? 1 : 0;
    }
    if (r.solver_feasible && (!r.verified || r.dilation > 4.0)) ++bad_solutions;
    if (!r.solver_feasible && c.brute.feasible) ++false_infeasible;
  }
  std::ostringstream os;
  os << kCases << " well-separated instances, " << solved_ok << '/' << feasible
     << " brute-feasible solved and verified at dilation 4, " << false_infeasible
     << " false INFEASIBLE, " << bad_solutions << " unverified solutions, " << errors << " errors";
  report(4, "inner solver", solved_ok == feasible && false_infeasible == 0 && bad_solutions == 0 &&
                                errors == 0,
         os.str());
}

// 5: DP against exhaustive search.
void dp_suite() {
  std::mt19937_64 rng(20240501);
  auto U = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  constexpr int kTrees = 1000;
  int mismatches = 0;
  for (int t = 0; t < kTrees; ++t) {
    const int roots = U(1, 5);
    const int leaves = U(roots, 10);
    std::vector<std::vector<int>> stars(roots);
    for (int r = 0; r < roots; ++r) stars[r].push_back(U(1, 10));
    for (int j = roots; j < leaves; ++j) stars[U(0, roots - 1)].push_back(U(1, 10));
    const TwoFFInstance tree = TwoFFInstance::from_stars(stars, U(0, roots + 1), U(0, leaves + 1));
    const TwoFFSolution s = solve_2ff(tree);
    if (s.value != brute::brute_2ff(tree) || ff_value(tree, s.T1, s.T2) != s.value) ++mismatches;
  }
  report(5, "DP exactness", mismatches == 0,
         std::to_string(kTrees) + " random trees (|L1| <= 5, |L2| <= 10, weights <= 10), " +
             std::to_string(mismatches) + " mismatches");
}

// 6: integrality-gap fixture.
void gap_fixture() {
  try {
    const io::json j = io::read_json_file(kFixtures + "/gap_fixture.json");
    const NUkCInstance inst = io::instance_from_json(j).instance;
    const io::json& gap = j.at("gap");
    CoverageVector cov;
    cov.cov1 = gap.at("cov1").get<std::vector<double>>();
    cov.cov2 = gap.at("cov2").get<std::vector<double>>();

    // The coverage vector is the average of the recorded integral solutions.
    CoverageVector avg = CoverageVector::zeros(inst.size());
    bool solutions_ok = gap.at("solutions").size() == 2;
    for (const auto& sj : gap.at("solutions")) {
      const NUkCSolution s{sj.at("centers1").get<PointSet>(), sj.at("centers2").get<PointSet>(), 1.0};
      solutions_ok = solutions_ok && verify_solution(inst, s, 1.0).ok;
      const PointSet one = covered_points(inst, {s.centers1, {}, 1.0}, 1.0);
      for (PointId v : covered_points(inst, s, 1.0)) {
        (std::binary_search(one.begin(), one.end(), v) ? avg.cov1 : avg.cov2)[v] += 0.5;
      }
    }
    const bool in_hull = solutions_ok && avg.cov1 == cov.cov1 && avg.cov2 == cov.cov2;

    const TwoFFInstance tree =
        cgk_reduce(inst, gap.at("alpha1").get<double>(), gap.at("alpha2").get<double>(), cov);
    const double frac = frac_ff_solution(tree, cov).value;
    const int dp = solve_2ff(tree).value;
    // Exhaustive check over all (T1, T2) within budget.
    int exhaustive = 0;
    const int R = tree.num_roots();
    const int L = tree.num_leaves();
    for (std::uint32_t t1 = 0; t1 < (1U << R); ++t1) {
      if (std::popcount(t1) > tree.k1) continue;
      std::vector<int> T1;
      for (int r = 0; r < R; ++r) {
        if ((t1 >> r) & 1U) T1.push_back(r);
      }
      for (std::uint32_t t2 = 0; t2 < (1U << L); ++t2) {
        if (std::popcount(t2) > tree.k2) continue;
        std::vector<int> T2;
        for (int l = 0; l < L; ++l) {
          if ((t2 >> l) & 1U) T2.push_back(l);
        }
        exhaustive = std::max(exhaustive, ff_value(tree, T1, T2));
      }
    }
    const bool brute_feasible = brute::brute_force_nukc(inst).feasible;
    const auto t0 = std::chrono::steady_clock::now();
    const FeasibilityResult r = solve_feasibility(inst);
    const double secs = since(t0);
    const bool solved = r.feasible && r.solution.dilation <= 10.0 &&
                        verify_solution(inst, r.solution, r.solution.dilation).ok;
    std::ostringstream os;
    os << "n=" << inst.size() << " k1=" << inst.k1 << " k2=" << inst.k2 << " m=" << inst.m
       << ", hull point " << (in_hull ? "verified" : "NOT verified") << ", fractional value " << frac
       << ", DP optimum " << dp << " (exhaustive " << exhaustive << "), brute NUkC "
       << (brute_feasible ? "feasible" : "infeasible") << ", outer solver "
       << (solved ? "solution" : "no valid solution") << " at dilation " << r.solution.dilation
       << " via " << to_string(r.route) << " in " << secs << " s";
    report(6, "gap fixture", in_hull && frac >= inst.m && dp <= inst.m - 1 && exhaustive == dp &&
                                 brute_feasible && solved,
           os.str());
  } catch (const std::exception& e) {
    report(6, "gap fixture", false, std::string("error: ") + e.what());
  }
}

// 7: HS invariants.
void hs_suite() {
  std::mt19937_64 rng(77);
  auto U = [&](int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); };
  constexpr int kCalls = 10000;
  long violations = 0;
  for (int call = 0; call < kCalls; ++call) {
    const int n = U(1, 14);
    gen::Rng grng(rng());
    const MetricSpace metric = call % 2 == 0 ? gen::uniform_square_metric(n, grng)
                                             : gen::random_graph_metric(n, 0.3, 5, grng);
    std::vector<PointId> Uset;
    for (int v = 0; v < n; ++v) {
      if (U(0, 3) > 0) Uset.push_back(v);
    }
    std::shuffle(Uset.begin(), Uset.end(), rng);
    const double r = call % 10 == 0 ? 0.0
                     : call % 2 == 0 ? std::uniform_real_distribution<double>(0.0, 0.8)(rng)
                                     : U(0, 6);
    std::vector<double> cov(n);
    for (double& c : cov) c = U(0, 4) / 4.0;  // coarse values force ties
    std::vector<std::uint8_t> prio(n);
    for (auto& p : prio) p = static_cast<std::uint8_t>(U(0, 1));
    const HSResult res = call % 3 == 0 ? hs_partition(metric, Uset, r, cov)
                                       : hs_partition(metric, Uset, r, cov, prio);
    std::vector<int> seen(n, 0);
    for (std::size_t i = 0; i < res.reps.size(); ++i) {
      const PointId u = res.reps[i];
      for (PointId v : res.child[i]) {
        if (!(metric(u, v) <= r)) ++violations;     // (a)
        if (!(cov[u] >= cov[v])) ++violations;      // (d)
        ++seen[v];
      }
      for (std::size_t k = 0; k < i; ++k) {
        if (!(metric(u, res.reps[k]) > r)) ++violations;  // (b)
      }
    }
    std::vector<int> inU(n, 0);
    for (PointId v : Uset) inU[v] = 1;
    for (int v = 0; v < n; ++v) {
      if (seen[v] != inU[v]) ++violations;  // (c)
    }
  }
  report(7, "HS invariants", violations == 0,
         std::to_string(kCalls) + " randomized hs_partition calls, " + std::to_string(violations) +
             " violations of (a)-(d)");
}

// 8: ellipsoid determinant ratio and the d = 2 worked example.
void ellipsoid_suite() {
  std::mt19937_64 rng(8);
  std::normal_distribution<double> N;
  double worst = 0.0;
  int updates = 0;
  std::ostringstream dims;
  for (int d : {1, 2, 8, 20}) {
    const double dd = d;
    // The closed form is 0/0 at d = 1; its limit d^2/(d+1)^2 = 1/4 is used.
    const double expected =
        d == 1 ? 0.25 : std::pow(dd * dd / (dd * dd - 1.0), dd) * (dd - 1.0) / (dd + 1.0);
    EllipsoidState s = initial_ellipsoid(d);
    double worst_d = 0.0;
    for (int it = 0; it < 25; ++it) {
      Eigen::VectorXd a(d);
      for (int i = 0; i < d; ++i) a[i] = N(rng);
      const double before = s.shape.determinant();
      apply_central_cut(s, a);
      const double ratio = s.shape.determinant() / before;
      worst_d = std::max(worst_d, std::abs(ratio - expected) / expected);
      ++updates;
    }
    worst = std::max(worst, worst_d);
    dims << " d=" << d << ":" << worst_d;
  }

  EllipsoidState disk;
  disk.center = Eigen::VectorXd::Zero(2);
  disk.shape = Eigen::MatrixXd::Identity(2, 2);
  Eigen::VectorXd e1(2);
  e1 << 1.0, 0.0;
  const EllipsoidState out = ellipsoid_update(disk, e1);
  Eigen::MatrixXd want = Eigen::MatrixXd::Zero(2, 2);
  want(0, 0) = 4.0 / 9.0;
  want(1, 1) = 4.0 / 3.0;
  const double center_err = std::max(std::abs(out.center[0] + 1.0 / 3.0), std::abs(out.center[1]));
  const double shape_err = (out.shape - want).cwiseAbs().maxCoeff();

  std::ostringstream os;
  os << updates << " updates, max relative determinant-ratio error " << worst << " (limit 1e-6;"
     << dims.str() << "), d=2 example center error " << center_err << ", shape error " << shape_err
     << " (limit 1e-12)";
  report(8, "ellipsoid numerics", worst <= 1e-6 && center_err <= 1e-12 && shape_err <= 1e-12,
         os.str());
}

// 9: robust k-center (r2 = 0) on planted instances.
void kcenter_suite() {
  int total = 0;
  int ok = 0;
  double max_secs = 0.0;
  double max_dilation = 0.0;
  std::string first_problem;
  for (int k = 1; k <= 4; ++k) {
    for (int outliers : {0, 2, 5}) {
      gen::GenParams p;
      p.n = 60;
      p.k1 = k;
      p.k2 = 0;
      p.r1 = 1.0;
      p.r2 = 0.0;
      p.outliers = outliers;
      p.seed = static_cast<std::uint64_t>(100 * k + outliers);
      const NUkCInstance inst = gen::planted(p).instance;
      ++total;
      const auto t0 = std::chrono::steady_clock::now();
      try {
        const FeasibilityResult r = solve_feasibility(inst);
        const double secs = since(t0);
        max_secs = std::max(max_secs, secs);
        const bool good = r.feasible && r.solution.dilation <= 10.0 &&
                          verify_solution(inst, r.solution, r.solution.dilation).ok && secs <= 60.0;
        if (r.feasible) max_dilation = std::max(max_dilation, r.solution.dilation);
        ok += good ? 1 : 0;
        if (!good && first_problem.empty()) {
          first_problem = "k=" + std::to_string(k) + " outliers=" + std::to_string(outliers);
        }
      } catch (const std::exception& e) {
        if (first_problem.empty()) first_problem = e.what();
      }
    }
  }
  std::ostringstream os;
  os << ok << '/' << total << " planted instances (n=60, k in 1..4, outliers in {0,2,5}, r2=0)"
     << " solved and verified, max dilation " << max_dilation << " (limit 10), slowest "
     << max_secs << " s (limit 60 s)";
  if (!first_problem.empty()) os << "; first problem: " << first_problem;
  report(9, "robust k-center", ok == total, os.str());
}

}  // namespace

int main() {
  long cuts_checked = 0;
  long cuts_invalid = 0;
  small_suite(cuts_checked, cuts_invalid);
  long inner_checked = 0;
  long inner_invalid = 0;
  wellsep_suite(inner_checked, inner_invalid);
  report(3, "cut validity", cuts_invalid + inner_invalid == 0,
         std::to_string(cuts_checked + inner_checked) + " distinct cuts checked against the exhaustive integral hull (" +
             std::to_string(cuts_checked) + " from the outer suite, " + std::to_string(inner_checked) +
             " from the well-separated suite), " + std::to_string(cuts_invalid + inner_invalid) +
             " invalid");
  dp_suite();
  gap_fixture();
  hs_suite();
  ellipsoid_suite();
  kcenter_suite();
  for (const auto& [id, line] : lines) std::cout << line << '\n';
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}
