#include <gtest/gtest.h>

#include "guidex/examples.hpp"
#include "guidex/registry.hpp"
#include "guidex/suitability.hpp"

namespace guidex {
namespace {

GraphMetrics metrics(GraphTypeSet types, std::size_t n, double density) {
  GraphMetrics m;
  m.node_count = n;
  m.density = density;
  m.detected_types = std::move(types);
  return m;
}

const GraphTypeSet kDirected{GraphTypeTag::directed};
const GraphTypeSet kUndirected{GraphTypeTag::undirected};

TEST(Assess, UseCasePartOne) {
  const Registry reg = Registry::seeded();
  const auto a = assess(reg.details("tapered-edges"), metrics(kDirected, 50, 0.0637));
  EXPECT_EQ(a.gt, CriterionStatus::match);
  EXPECT_EQ(a.n, CriterionStatus::match);
  EXPECT_EQ(a.d, CriterionStatus::match);
  EXPECT_EQ(a.summary, Summary::well_suited);
  EXPECT_TRUE(a.applicable);
}

TEST(Assess, UseCasePartTwo) {
  const Registry reg = Registry::seeded();
  const auto tapered = assess(reg.details("tapered-edges"), metrics(kDirected, 50, 0.1012));
  EXPECT_EQ(tapered.n, CriterionStatus::match);
  EXPECT_EQ(tapered.d, CriterionStatus::no_match);
  EXPECT_EQ(tapered.summary, Summary::medium);
  EXPECT_TRUE(tapered.applicable);
  EXPECT_EQ(assess(reg.details("partially-drawn-edges"), metrics(kDirected, 50, 0.1012)).summary,
            Summary::well_suited);
}

TEST(Assess, UndirectedGraphCannotTakeTaperedEdges) {
  const auto a = assess(Registry::seeded().details("tapered-edges"), metrics(kUndirected, 50, 0.0637));
  EXPECT_EQ(a.gt, CriterionStatus::mismatch);
  EXPECT_EQ(a.n, CriterionStatus::moot);
  EXPECT_EQ(a.d, CriterionStatus::moot);
  EXPECT_EQ(a.summary, Summary::not_suited);
  EXPECT_FALSE(a.applicable);
}

TEST(Assess, SubtypesInheritDirectedGuidelines) {
  const Registry reg = Registry::seeded();
  const auto a = assess(reg.details("tapered-edges"),
                        metrics({GraphTypeTag::directed, GraphTypeTag::dag, GraphTypeTag::tree}, 50, 0.04));
  EXPECT_EQ(a.gt, CriterionStatus::match);
}

TEST(Assess, MarginIsTwentyPercentOnBothEnds) {
  EXPECT_TRUE(within_study_range(80.0, 100.0, 200.0));
  EXPECT_FALSE(within_study_range(79.9, 100.0, 200.0));
  EXPECT_TRUE(within_study_range(240.0, 100.0, 200.0));
  EXPECT_FALSE(within_study_range(240.1, 100.0, 200.0));
  EXPECT_TRUE(within_study_range(0.096, 0.02, 0.08));
  EXPECT_FALSE(within_study_range(0.1012, 0.02, 0.08));
  EXPECT_TRUE(within_study_range(5.0, 5.0, 5.0, 0.0));
}

TEST(Assess, UnknownRangesNeverMatch) {
  GuidelineRecord r = Registry::seeded().details("curved-edges");
  r.sources = {Source{"a", "", {}, {}}};
  const auto a = assess(r, metrics(kUndirected, 10, 0.5));
  EXPECT_EQ(a.n, CriterionStatus::no_match);
  EXPECT_EQ(a.d, CriterionStatus::no_match);
  EXPECT_EQ(a.summary, Summary::medium);
  r.sources.clear();
  EXPECT_EQ(assess(r, metrics(kUndirected, 10, 0.5)).summary, Summary::medium);
}

TEST(Assess, AnySourceCanEvidenceACriterion) {
  GuidelineRecord r = Registry::seeded().details("curved-edges");
  r.sources = {Source{"a", "", Range<int>{10, 20}, {}}, Source{"b", "", {}, Range<double>{0.4, 0.6}}};
  const auto a = assess(r, metrics(kUndirected, 15, 0.5));
  EXPECT_EQ(a.summary, Summary::well_suited);
}

TEST(Summarize, FollowsTheInvariantsOnEveryCombination) {
  const CriterionStatus all[] = {CriterionStatus::match, CriterionStatus::mismatch, CriterionStatus::no_match,
                                 CriterionStatus::moot};
  for (auto gt : all) {
    for (auto n : all) {
      for (auto d : all) {
        const Summary s = summarize(gt, n, d);
        EXPECT_EQ(s == Summary::well_suited,
                  gt == CriterionStatus::match && n == CriterionStatus::match && d == CriterionStatus::match);
        EXPECT_EQ(s == Summary::not_suited, gt != CriterionStatus::match);
      }
    }
  }
}

TEST(Summarize, DensityMatchOnlyImprovesTheSummary) {
  EXPECT_EQ(summarize(CriterionStatus::match, CriterionStatus::match, CriterionStatus::no_match), Summary::medium);
  EXPECT_EQ(summarize(CriterionStatus::match, CriterionStatus::match, CriterionStatus::match), Summary::well_suited);
  EXPECT_LT(rank(Summary::well_suited), rank(Summary::medium));
  EXPECT_LT(rank(Summary::medium), rank(Summary::not_suited));
}

TEST(AssessAll, PreservesOrderAndLength) {
  const auto records = seed_records();
  const GraphMetrics m = compute_metrics(example_graph(GraphTypeTag::directed));
  const auto rows = assess_all(records, m);
  ASSERT_EQ(rows.size(), records.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    EXPECT_EQ(rows[i].first, records[i].id);
    EXPECT_EQ(rows[i].second, assess(records[i], m));
  }
  EXPECT_TRUE(assess_all({}, m).empty());
}

TEST(AssessAll, MatrixGuidelinesAssessOnGraphTypeLikeAnyOther) {
  const auto records = seed_records();
  const GraphMetrics m = compute_metrics(example_graph(GraphTypeTag::directed));
  for (const auto& r : records) {
    if (r.vis_type != VisType::matrix) continue;
    const bool overlap = std::any_of(r.graph_types.begin(), r.graph_types.end(), [&](GraphTypeTag t) {
      return compatibility_closure(m.detected_types).count(t) > 0;
    });
    EXPECT_EQ(assess(r, m).applicable, overlap);
  }
}

}  // namespace
}  // namespace guidex
