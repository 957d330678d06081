#include <gtest/gtest.h>

#include <cmath>

#include "bog/error.hpp"
#include "bog/metrics.hpp"
#include "bog/report.hpp"
#include "bog/rng.hpp"
#include "bog/statistics.hpp"
#include "oracles.hpp"

using namespace bog;

namespace {

// Builds a ranked list whose relevance pattern is `rel` for a genre-0 query.
std::pair<RankedList, RelevanceJudge> make_list(const std::vector<bool>& rel,
                                                const std::string& prefix = "v") {
  RankedList list{"q", {}};
  std::map<std::string, GenreIndex> genres{{"q", 0}};
  for (std::size_t i = 0; i < rel.size(); ++i) {
    const std::string id = prefix + std::to_string(i);
    list.entries.push_back({id, static_cast<double>(i)});
    genres[id] = rel[i] ? 0 : 1;
  }
  return {list, RelevanceJudge(genres)};
}

double ap(const std::vector<bool>& rel) {
  auto [l, j] = make_list(rel);
  return average_precision(l, j, 0);
}

}  // namespace

TEST(AveragePrecision, HandCases) {
  EXPECT_EQ(ap({true, true, false}), 1.0);
  EXPECT_NEAR(ap({true, false, true}), 5.0 / 6.0, 1e-15);
  std::vector<bool> one_first(7, false);
  one_first[0] = true;
  EXPECT_EQ(ap(one_first), 1.0);
  std::vector<bool> one_last(one_first.rbegin(), one_first.rend());
  EXPECT_NEAR(ap(one_last), 1.0 / 7.0, 1e-15);
  EXPECT_THROW(ap({false, false}), InvalidInput);
}

TEST(AveragePrecision, RelabelingInvariant) {
  const std::vector<bool> rel = {false, true, true, false, true};
  auto [a, ja] = make_list(rel, "x");
  auto [b, jb] = make_list(rel, "other_");
  EXPECT_EQ(average_precision(a, ja, 0), average_precision(b, jb, 0));
  EXPECT_EQ(precision_at_k(a, ja, 0, 3), precision_at_k(b, jb, 0, 3));
}

TEST(PrecisionAtK, FixedDenominator) {
  std::vector<bool> rel(20, false);
  for (int i : {0, 2, 5, 9, 15}) rel[static_cast<std::size_t>(i)] = true;
  auto [l, j] = make_list(rel);
  EXPECT_NEAR(precision_at_k(l, j, 0, 10), 0.4, 1e-15);
  auto [s, js] = make_list(std::vector<bool>(5, true));
  EXPECT_EQ(precision_at_k(s, js, 0, 10), 0.5);
}

TEST(Metrics, RandomListsMatchOracles) {
  Rng rng(17);
  for (int t = 0; t < 500; ++t) {
    const std::size_t n = 1 + rng.below(20);
    std::vector<bool> rel(n);
    for (std::size_t i = 0; i < n; ++i) rel[i] = rng.uniform() < 0.4;
    auto [l, j] = make_list(rel);
    const std::size_t k = 1 + rng.below(12);
    EXPECT_NEAR(precision_at_k(l, j, 0, k), oracle::precision_at_k(rel, k), 1e-12);
    if (std::find(rel.begin(), rel.end(), true) == rel.end()) continue;
    EXPECT_NEAR(average_precision(l, j, 0), oracle::average_precision(rel), 1e-12);
  }
}

TEST(Judge, UnknownId) {
  RelevanceJudge j({{"a", 0}});
  EXPECT_THROW(j.genre_of("b"), InvalidInput);
}

TEST(StudentT, ReferenceValues) {
  EXPECT_NEAR(student_t_quantile(0.995, 4), 4.604095, 1e-6);
  EXPECT_NEAR(student_t_quantile(0.995, 25), 2.787436, 1e-6);
  EXPECT_NEAR(student_t_quantile(0.995, 2), 9.924843, 1e-6);
  EXPECT_EQ(student_t_quantile(0.5, 7), 0.0);
  EXPECT_NEAR(student_t_quantile(0.005, 4), -4.604095, 1e-6);
  EXPECT_THROW(student_t_quantile(0.0, 4), InvalidInput);
  EXPECT_THROW(student_t_quantile(1.0, 4), InvalidInput);
  EXPECT_THROW(student_t_quantile(0.9, 0), InvalidInput);
}

TEST(StudentT, MatchesBoostOverGrid) {
  for (int df : {1, 2, 3, 5, 10, 30, 100, 1000}) {
    for (double p : {0.001, 0.025, 0.1, 0.3, 0.6, 0.9, 0.975, 0.995, 0.9995}) {
      const double want = oracle::t_quantile(p, df);
      EXPECT_NEAR(student_t_quantile(p, df), want, 1e-8 * std::max(1.0, std::abs(want)))
          << "p=" << p << " df=" << df;
    }
  }
}

TEST(Aggregate, ClosedForms) {
  const std::vector<double> flat(5, 0.5);
  auto ci = aggregate_replications(flat);
  EXPECT_EQ(ci.mean, 0.5);
  EXPECT_EQ(ci.lo, 0.5);
  EXPECT_EQ(ci.hi, 0.5);
  ci = aggregate_replications(std::vector<double>{0.4, 0.5, 0.6});
  EXPECT_NEAR(ci.mean, 0.5, 1e-15);
  EXPECT_NEAR(ci.half_width(), 9.924843 * 0.1 / std::sqrt(3.0), 1e-6);
  EXPECT_THROW(aggregate_replications(std::vector<double>{0.1}), InvalidInput);
}

TEST(Aggregate, HalfWidthScalesWithDeviation) {
  const std::vector<double> a = {0.2, 0.5, 0.4, 0.9};
  std::vector<double> b;
  double m = 0.5;
  for (double x : a) b.push_back(m + 2.0 * (x - m));
  EXPECT_NEAR(aggregate_replications(b).half_width(), 2.0 * aggregate_replications(a).half_width(), 1e-12);
}

TEST(Aggregate, RandomMatchesOracle) {
  Rng rng(4);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> v(2 + rng.below(30));
    for (double& x : v) x = rng.uniform();
    const auto got = aggregate_replications(v, 0.99);
    const auto want = oracle::t_interval(v, 0.99);
    EXPECT_NEAR(got.mean, want.mean, 1e-12);
    EXPECT_NEAR(got.lo, want.lo, 1e-9);
    EXPECT_NEAR(got.hi, want.hi, 1e-9);
  }
}

TEST(PairedDiff, IdenticalAndAntisymmetric) {
  const std::vector<double> a = {0.1, 0.4, 0.3, 0.8};
  const auto same = paired_diff_interval(a, a);
  EXPECT_EQ(same.lo, 0.0);
  EXPECT_EQ(same.hi, 0.0);
  EXPECT_FALSE(same.significant);

  const std::vector<double> b = {0.3, 0.45, 0.2, 0.9};
  const auto ab = paired_diff_interval(a, b, 0.99, "A", "B");
  const auto ba = paired_diff_interval(b, a, 0.99, "B", "A");
  EXPECT_NEAR(ab.lo, -ba.hi, 1e-15);
  EXPECT_NEAR(ab.hi, -ba.lo, 1e-15);
  EXPECT_EQ(ab.significant, ba.significant);
  EXPECT_THROW(paired_diff_interval(a, std::vector<double>{1, 2}), InvalidInput);
}

TEST(PairedDiff, SignificanceReading) {
  EXPECT_FALSE(excludes_zero(-0.018, 0.018));
  EXPECT_TRUE(excludes_zero(-0.232, -0.079));
}

TEST(Report, SingleQuery) {
  auto [l, j] = make_list({true, false, true});
  const std::vector<std::vector<RankedList>> runs = {{l}};
  const auto r = per_genre_report(runs, j, 1, 10);
  EXPECT_NEAR(r.map_mean, 5.0 / 6.0, 1e-15);
  EXPECT_NEAR(r.p10_mean, 0.2, 1e-15);
  EXPECT_EQ(r.map_ci.lo, r.map_ci.hi);
  EXPECT_FALSE(r.warnings.empty());
  EXPECT_EQ(r.per_genre.at(0).queries, 1u);
}

TEST(Report, IdenticalReplicationsHaveZeroWidth) {
  auto [l, j] = make_list({true, false, true, true});
  const std::vector<std::vector<RankedList>> runs = {{l}, {l}};
  const auto r = per_genre_report(runs, j, 1, 10);
  EXPECT_EQ(r.map_ci.half_width(), 0.0);
  EXPECT_EQ(r.replication_count, 2u);
}

TEST(Report, CsvRoundTripAndComparison) {
  EvalReport r;
  r.per_genre = {{0, {0.9, 0.8, 2}}, {1, {0.7, 0.6, 2}}, {2, {0.5, 0.4, 2}}};
  const auto csv = report_to_csv(r, {"a", "b", "c"}, "abcd");
  const auto back = read_per_class_csv(csv);
  ASSERT_EQ(back.size(), 3u);
  EXPECT_EQ(back.at("b").map, 0.7);
  EXPECT_NE(csv.find(",abcd\n"), std::string::npos);

  auto other = back;
  other["a"].map = 0.2;
  const auto cmp = compare_systems(back, other, "one", "two");
  EXPECT_EQ(cmp.classes.size(), 3u);
  const auto md = comparisons_to_markdown(std::vector<SystemComparison>{cmp});
  EXPECT_NE(md.find("one"), std::string::npos);
  EXPECT_THROW(read_per_class_csv("x,y\n"), FormatError);
}
