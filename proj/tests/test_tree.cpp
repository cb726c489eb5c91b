#include <gtest/gtest.h>

#include <random>

#include "nukc/nukc.hpp"

using namespace nukc;

namespace {

MetricSpace line(const std::vector<double>& xs) {
  std::vector<Point2> pts;
  for (double x : xs) pts.push_back({x, 0.0});
  return MetricSpace::from_points(pts);
}

std::vector<PointId> iota_ids(int n) {
  std::vector<PointId> v(n);
  for (int i = 0; i < n; ++i) v[i] = i;
  return v;
}

}  // namespace

TEST(HS, LineExample) {
  const MetricSpace d = line({0, 1, 2, 3, 4});
  const std::vector<double> cov{5, 4, 3, 2, 1};
  const HSResult r = hs_partition(d, iota_ids(5), 1.5, cov);
  EXPECT_EQ(r.reps, (std::vector<PointId>{0, 2, 4}));
  ASSERT_EQ(r.child.size(), 3U);
  EXPECT_EQ(r.child[0], (PointSet{0, 1}));
  EXPECT_EQ(r.child[1], (PointSet{2, 3}));
  EXPECT_EQ(r.child[2], (PointSet{4}));
}

TEST(HS, SingletonAndTies) {
  const MetricSpace d = line({0, 0.5, 7});
  const std::vector<double> zero(3, 0.0);
  const std::vector<PointId> one{2};
  const HSResult a = hs_partition(d, one, 100.0, zero);
  EXPECT_EQ(a.reps, (std::vector<PointId>{2}));
  EXPECT_EQ(a.child[0], (PointSet{2}));

  const std::vector<PointId> pair{1, 0};
  const HSResult b = hs_partition(d, pair, 1.0, zero);
  EXPECT_EQ(b.reps, (std::vector<PointId>{0}));
  EXPECT_EQ(b.child[0], (PointSet{0, 1}));

  const std::vector<std::uint8_t> prio{0, 1, 0};
  const HSResult c = hs_partition(d, pair, 1.0, zero, prio);
  EXPECT_EQ(c.reps, (std::vector<PointId>{1}));

  EXPECT_TRUE(hs_partition(d, std::vector<PointId>{}, 1.0, zero).reps.empty());
}

TEST(CGK, AllWithinOneBall) {
  const MetricSpace d = line({0, 0.1, 0.2, 0.3});
  const NUkCInstance inst = NUkCInstance::make(d, 1.0, 0.5, 1, 1, 4);
  CoverageVector cov = CoverageVector::zeros(4);
  cov.cov1 = {0.1, 0.9, 0.2, 0.0};
  const TwoFFInstance t = cgk_reduce(inst, 2.0, 2.0, cov);
  EXPECT_EQ(t.num_leaves(), 1);
  EXPECT_EQ(t.num_roots(), 1);
  EXPECT_EQ(t.leaves[0], 1);
  EXPECT_EQ(t.weight[0], 4);
}

TEST(CGK, ZeroRadiusIsolatesPoints) {
  const NUkCInstance inst = NUkCInstance::make(line({0, 1, 2, 3, 4}), 1.0, 0.0, 1, 1, 4);
  const TwoFFInstance t = cgk_reduce(inst, 2.0, 2.0, CoverageVector::zeros(5));
  EXPECT_EQ(t.num_leaves(), 5);
  for (int w : t.weight) EXPECT_EQ(w, 1);
}

TEST(CGK, TwoClusters) {
  std::vector<Point2> pts;
  for (double x0 : {0.0, 10.0}) {
    for (Point2 off : {Point2{0, 0}, Point2{0.1, 0}, Point2{0, 0.1}, Point2{0.1, 0.1}}) {
      pts.push_back({x0 + off.x, off.y});
    }
  }
  const NUkCInstance inst = NUkCInstance::make(MetricSpace::from_points(pts), 1.0, 0.0, 1, 1, 8);
  CoverageVector cov = CoverageVector::zeros(8);
  for (int v = 0; v < 8; ++v) cov.cov1[v] = 0.25;
  const TwoFFInstance t = cgk_reduce(inst, 2.0, 2.0, cov);
  EXPECT_EQ(t.roots, (std::vector<PointId>{0, 4}));
  ASSERT_EQ(t.num_leaves(), 8);
  for (int j = 0; j < 8; ++j) EXPECT_EQ(t.roots[t.parent[j]], t.leaves[j] < 4 ? 0 : 4);
  EXPECT_EQ(t.star_weight(0), 4);
  EXPECT_EQ(t.star_weight(1), 4);
}

TEST(CGK, SeparationAndPartition) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    gen::GenParams p;
    p.n = 12;
    p.r1 = 0.2;
    p.r2 = 0.07;
    p.seed = rng();
    const NUkCInstance inst = gen::uniform(p).instance;
    CoverageVector cov = CoverageVector::zeros(p.n);
    std::uniform_real_distribution<double> U(0.0, 0.5);
    for (int v = 0; v < p.n; ++v) {
      cov.cov1[v] = U(rng);
      cov.cov2[v] = U(rng);
    }
    const TwoFFInstance t = cgk_reduce(inst, 2.0, 2.0, cov);
    for (int a = 0; a < t.num_leaves(); ++a) {
      for (int b = a + 1; b < t.num_leaves(); ++b) {
        EXPECT_GT(inst.metric(t.leaves[a], t.leaves[b]), 2.0 * inst.r2);
      }
    }
    for (int a = 0; a < t.num_roots(); ++a) {
      for (int b = a + 1; b < t.num_roots(); ++b) {
        EXPECT_GT(inst.metric(t.roots[a], t.roots[b]), 2.0 * inst.r1);
      }
    }
    EXPECT_EQ(t.total_weight(), p.n);
  }
}

TEST(FracFF, Examples) {
  const NUkCInstance inst = NUkCInstance::make(line({0, 5, 10}), 1.0, 0.0, 3, 0, 3);
  const TwoFFInstance t = cgk_reduce(inst, 2.0, 2.0, CoverageVector::zeros(3));
  EXPECT_EQ(frac_ff_solution(t, CoverageVector::zeros(3)).value, 0.0);
  CoverageVector ones = CoverageVector::zeros(3);
  ones.cov1 = {1, 1, 1};
  EXPECT_EQ(frac_ff_solution(cgk_reduce(inst, 2.0, 2.0, ones), ones).value, 3.0);
}

TEST(FracFF, IndicatorOfIntegralSolution) {
  // The fractional value of an integral coverage vector equals its coverage.
  int checked = 0;
  for (std::uint64_t s = 1; checked < 20; ++s) {
    gen::GenParams p;
    p.n = 10;
    p.k1 = 1;
    p.k2 = 2;
    p.r1 = 0.25;
    p.r2 = 0.08;
    p.seed = s;
    NUkCInstance inst = gen::uniform(p).instance;
    const brute::BruteResult b = brute::brute_force_nukc(inst);
    inst.m = b.best_covered;
    CoverageVector cov = CoverageVector::zeros(p.n);
    for (PointId v = 0; v < p.n; ++v) {
      for (PointId c : b.witness->centers1) cov.cov1[v] = inst.metric(c, v) <= inst.r1 ? 1.0 : cov.cov1[v];
    }
    for (PointId v = 0; v < p.n; ++v) {
      if (cov.cov1[v] > 0) continue;
      for (PointId c : b.witness->centers2) cov.cov2[v] = inst.metric(c, v) <= inst.r2 ? 1.0 : cov.cov2[v];
    }
    const TwoFFInstance t = cgk_reduce(inst, 2.0, 2.0, cov);
    EXPECT_GE(frac_ff_solution(t, cov).value, inst.m - 1e-9);
    ++checked;
  }
}

TEST(Lift, Examples) {
  const NUkCInstance inst = NUkCInstance::make(line({0, 0.4, 0.8, 1.0}), 0.5, 0.2, 1, 1, 4);
  const TwoFFInstance t = cgk_reduce(inst, 2.0, 2.0, CoverageVector::zeros(4));
  ASSERT_EQ(t.num_roots(), 1);
  const LiftedSolution none = lift_ff_solution(t, {});
  EXPECT_TRUE(none.solution.centers1.empty());
  EXPECT_EQ(verify_solution(inst, none.solution, 4.0).covered, 0);
  const LiftedSolution all = lift_ff_solution(t, {{0}, {}, 4});
  EXPECT_EQ(all.solution.dilation, 4.0);
  EXPECT_EQ(verify_solution(inst, all.solution, 4.0).covered, 4);
  EXPECT_THROW(lift_ff_solution(t, {{0}, {0, 1}, 0}), ContractViolation);
}

TEST(Lift, PlantedTreesVerify) {
  for (std::uint64_t s = 1; s <= 20; ++s) {
    gen::GenParams p;
    p.n = 14;
    p.k1 = 2;
    p.k2 = 1;
    p.r1 = 1.0;
    p.r2 = 0.3;
    p.seed = s;
    const io::InstanceFile f = gen::planted(p);
    CoverageVector cov = CoverageVector::zeros(p.n);
    const PointSet c1 = covered_points(f.instance, {f.planted->centers1, {}, 1.0}, 1.0);
    const PointSet all = covered_points(f.instance, {f.planted->centers1, f.planted->centers2, 1.0}, 1.0);
    for (PointId v : all) {
      if (std::binary_search(c1.begin(), c1.end(), v)) cov.cov1[v] = 1.0;
      else cov.cov2[v] = 1.0;
    }
    const TwoFFInstance t = cgk_reduce(f.instance, 2.0, 2.0, cov);
    const TwoFFSolution best = solve_2ff(t);
    if (best.value < f.instance.m) continue;  // CGK may lose on integral points too
    const LiftedSolution lifted = lift_ff_solution(t, best);
    EXPECT_TRUE(verify_solution(f.instance, lifted.solution, 4.0).ok) << "seed " << s;
  }
}

TEST(Firefighter, Examples) {
  const TwoFFInstance t = TwoFFInstance::from_stars({{5, 1}, {3, 3}, {4}}, 1, 2);
  const TwoFFSolution s = solve_2ff(t);
  EXPECT_EQ(s.value, 15);
  EXPECT_EQ(s.T1, (std::vector<int>{1}));
  EXPECT_EQ(ff_value(t, s.T1, s.T2), 15);
  EXPECT_EQ(brute::brute_2ff(t), 15);

  TwoFFInstance all = t;
  all.k1 = 3;
  EXPECT_EQ(solve_2ff(all).value, all.total_weight());
  EXPECT_EQ(solve_2ff(all).T1, (std::vector<int>{0, 1, 2}));
  EXPECT_EQ(brute::brute_2ff(all), all.total_weight());

  TwoFFInstance none = t;
  none.k1 = 0;
  none.k2 = 0;
  EXPECT_EQ(solve_2ff(none).value, 0);
  EXPECT_EQ(brute::brute_2ff(none), 0);

  EXPECT_TRUE(is_valuable(t, 0));
  EXPECT_FALSE(is_valuable(t, t.total_weight() + 1));
}

TEST(Firefighter, SmallGapTree) {
  // Two stars {3,3} and {1,1,1,1}, k1 = k2 = 1: the fractional point with
  // both roots and both heavy leaves at 1/2 reaches 8, integral solutions 7.
  const TwoFFInstance t = TwoFFInstance::from_stars({{3, 3}, {1, 1, 1, 1}}, 1, 1);
  CoverageVector cov = CoverageVector::zeros(6);
  cov.cov1[t.roots[0]] = 0.5;
  cov.cov1[t.roots[1]] = 0.5;
  cov.cov2[t.leaves[0]] = 0.5;
  cov.cov2[t.leaves[1]] = 0.5;
  EXPECT_DOUBLE_EQ(frac_ff_solution(t, cov).value, 8.0);
  EXPECT_EQ(solve_2ff(t).value, 7);
  EXPECT_EQ(brute::brute_2ff(t), 7);
  EXPECT_FALSE(is_valuable(t, 8));
}

TEST(Firefighter, MatchesBruteForce) {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 300; ++trial) {
    const int stars = std::uniform_int_distribution<int>(1, 5)(rng);
    std::vector<std::vector<int>> w(stars);
    int leaves = 0;
    for (auto& s : w) {
      const int deg = std::uniform_int_distribution<int>(1, 3)(rng);
      for (int j = 0; j < deg && leaves < 10; ++j, ++leaves) {
        s.push_back(std::uniform_int_distribution<int>(1, 10)(rng));
      }
      if (s.empty()) s.push_back(1);
    }
    const TwoFFInstance t = TwoFFInstance::from_stars(
        w, std::uniform_int_distribution<int>(0, 3)(rng), std::uniform_int_distribution<int>(0, 4)(rng));
    const TwoFFSolution s = solve_2ff(t);
    EXPECT_EQ(s.value, brute::brute_2ff(t));
    EXPECT_EQ(ff_value(t, s.T1, s.T2), s.value);
    EXPECT_LE(static_cast<int>(s.T1.size()), t.k1);
    EXPECT_LE(static_cast<int>(s.T2.size()), t.k2);
  }
}
