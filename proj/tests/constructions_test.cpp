#include <gtest/gtest.h>

#include "ntdice/constructions.hpp"
#include "ntdice/errors.hpp"
#include "ntdice/serialization.hpp"
#include "ntdice/word_algebra.hpp"
#include "oracle.hpp"

using namespace ntdice;

namespace {

// Sets of the three-sided, four-sided and five-sided factor words of the
// earlier block construction; each has floor((k^2+2)/2) wins per pair.
struct FactorCase {
  DiceSet dice;
  std::int64_t expected;
};

const std::vector<FactorCase>& factor_cases() {
  static const std::vector<FactorCase> cases{
      {{3, {9, 5, 1}, {8, 4, 3}, {7, 6, 2}}, 5},
      {{4, {12, 10, 3, 1}, {9, 8, 7, 2}, {11, 6, 5, 4}}, 9},
      {{5, {15, 11, 7, 4, 3}, {14, 10, 9, 5, 2}, {13, 12, 8, 6, 1}}, 13},
  };
  return cases;
}

}  // namespace

TEST(BaseWords, DiceTablesMatchWords) {
  EXPECT_EQ(word_from_dice(DiceSet{3, {9, 5, 1}, {8, 4, 3}, {7, 6, 2}}), base_words::d3());
  EXPECT_EQ(word_from_dice(DiceSet{4, {10, 7, 5, 4}, {12, 9, 3, 2}, {11, 8, 6, 1}}),
            base_words::d4());
  EXPECT_TRUE(classify(base_words::tau()).fair);
}

class FactorWords : public ::testing::TestWithParam<FactorCase> {};

TEST_P(FactorWords, ClosestIntegerAboveHalf) {
  const auto& c = GetParam();
  const Verdict v = classify(word_from_dice(c.dice));
  EXPECT_TRUE(v.balanced);
  EXPECT_TRUE(v.nontransitive);
  EXPECT_EQ(v.counts.ab, c.expected);
  EXPECT_EQ(v.counts.ab, (c.dice.n * c.dice.n + 2) / 2);
}

INSTANTIATE_TEST_SUITE_P(Blocks, FactorWords, ::testing::ValuesIn(factor_cases()),
                         [](const auto& info) { return "sides" + std::to_string(info.param.dice.n); });

TEST(ConstructIrreducible, FamilyProperties) {
  for (int n = 3; n <= 24; ++n) {
    const DiceWord w = construct_irreducible(n);
    const auto c = oracle::counts(w.str());
    const std::int64_t want = (static_cast<std::int64_t>(n) * n + 2) / 2;
    EXPECT_EQ(c, (oracle::Counts{want, want, want})) << n;
    EXPECT_TRUE(is_irreducible(w).irreducible) << n;
  }
  EXPECT_THROW(construct_irreducible(2), DomainError);
}

TEST(ConstructNearHalf, CountsAndExcess) {
  EXPECT_EQ(construct_near_half(1).str(), "ACBCBABAC");
  for (int m = 1; m <= 50; ++m) {
    const DiceWord w = construct_near_half(m);
    const std::int64_t want = 2LL * m * m + 2 * m + 1;
    EXPECT_EQ(oracle::counts(w.str()), (oracle::Counts{want, want, want})) << m;
    EXPECT_EQ(classify(w).p_ab - Probability(1, 2), Probability(1, 2 * (2 * m + 1) * (2 * m + 1)));
  }
  EXPECT_THROW(construct_near_half(0), DomainError);
}

TEST(StageWords, ShapeAndProbabilities) {
  for (int n = 6; n <= 48; n += 2) {
    const BlockParams bp = block_params(n);
    EXPECT_EQ(6 * bp.p + 2 * bp.e, n);
    for (Stage s : {Stage::UnmixedFair, Stage::Sigma1, Stage::Sigma2}) {
      const DiceWord w = stage_word(n, s);
      EXPECT_EQ(static_cast<int>(w.size()), 3 * n);
      EXPECT_TRUE(w.is_complete());
    }
    EXPECT_TRUE(classify(stage_word(n, Stage::UnmixedFair)).fair) << n;
    EXPECT_TRUE(classify(stage_word(n, Stage::Sigma1)).fair) << n;
    const Verdict v2 = classify(stage_word(n, Stage::Sigma2));
    EXPECT_TRUE(v2.balanced) << n;
    const std::int64_t nn = static_cast<std::int64_t>(n) * n;
    EXPECT_EQ(oracle::counts(stage_word(n, Stage::Sigma2).str()).ab,
              nn / 2 + static_cast<std::int64_t>(bp.p) * bp.q)
        << n;
    EXPECT_EQ(stage2_excess(n), Probability(static_cast<std::int64_t>(bp.p) * bp.q, nn));
  }
  EXPECT_EQ(classify(stage_word(12, Stage::Sigma2)).p_ab, Probability(7, 12));
  EXPECT_THROW(block_params(7), DomainError);
  EXPECT_THROW(block_params(4), DomainError);
}

// Expanded quadratics, scanned linearly over [0, 2p].
TEST(MMax, MatchesExpandedInequalityScan) {
  for (int n = 6; n <= 2000; n += 2) {
    const std::int64_t p = (n - (n % 6 == 0 ? 0 : n % 6 == 2 ? 2 : 4)) / 6;
    const int e = n % 6 / 2;
    auto f = [&](std::int64_t m) -> std::int64_t {
      switch (e) {
        case 0: return m * m - 13 * p * m + 4 * p * p;
        case 1: return m * m - (13 * p + 4) * m + 4 * p * p - p - 1;
        default: return m * m - (13 * p + 8) * m + 4 * p * p - 2 * p - 4;
      }
    };
    EXPECT_EQ(m_max(n), oracle::last_nonnegative(static_cast<int>(2 * p), f)) << n;
  }
  EXPECT_EQ(m_max(24), 1);
  EXPECT_EQ(m_max(10), 0);
  EXPECT_LT(round_inequality(10, 0), 0);
}

TEST(Optimizer, ReachesTargetAndReplays) {
  for (int n = 6; n <= 90; n += 2) {
    const OptimizerReport r = optimize_max_prob(n);
    EXPECT_FALSE(r.finding.has_value()) << n << ": " << r.finding.value_or("");
    EXPECT_EQ(r.rounds_completed, r.m_max) << n;
    EXPECT_EQ(r.gap, Probability(0)) << n;
    EXPECT_EQ(r.target_excess, target_excess(n));
    verify_path(r.move_log);
    EXPECT_EQ(r.move_log.start, r.unmixed_fair);
    EXPECT_EQ(r.move_log.end, r.final_word);
    const auto c = oracle::counts(r.final_word.str());
    EXPECT_EQ(oracle::as_pair_counts(c, n), r.achieved_counts);
    EXPECT_EQ(c.ab, c.bc);
    EXPECT_EQ(c.bc, c.ca);
    EXPECT_LT(sign(compare(r.achieved_excess, Probability(1, 9))), 0) << n;
    EXPECT_EQ(r.step2_moves, static_cast<std::size_t>((r.params.p + r.m_max) * r.params.q));
    // Each Step2 adds one to every count.
    DiceWord w = r.move_log.start;
    for (const auto& mv : r.move_log.moves) {
      const PairCounts before = pair_counts(w);
      w = apply_move(w, mv);
      const PairCounts after = pair_counts(w);
      const std::int64_t d = mv.kind == MoveKind::Step2 ? 1 : 0;
      ASSERT_EQ(after, (PairCounts{n, before.ab + d, before.bc + d, before.ca + d}));
    }
  }
}

TEST(Optimizer, ReportJsonHasExactGap) {
  const std::string j = optimizer_report_to_json(optimize_max_prob(24));
  EXPECT_NE(j.find("\"gap\":\"0\""), std::string::npos);
  EXPECT_NE(j.find("\"achieved_excess\":\"5/48\""), std::string::npos);
  EXPECT_EQ(j.find("move_log"), std::string::npos);
  EXPECT_NE(optimizer_report_to_json(optimize_max_prob(24), true).find("move_log"), std::string::npos);
}

TEST(Bounds, ReportValues) {
  const BoundReport r = bound_report(10'000);
  EXPECT_EQ(r.discriminant_6p, 153);
  EXPECT_EQ(r.printed_radicand_6p, 154);
  EXPECT_TRUE(r.radicand_erratum);
  EXPECT_TRUE(r.limit_below_1_over_9_12);
  EXPECT_TRUE(r.numerator_6p2_increasing);
  EXPECT_TRUE(r.numerator_6p4_increasing);
  EXPECT_EQ(r.monotonicity_checked_to, 10'000);
  for (const auto& e : r.excess) {
    EXPECT_TRUE(e.below_one_ninth) << e.name;
    EXPECT_EQ(e.below_one_ninth, sign(compare(e.value, Probability(1, 9))) < 0) << e.name;
    EXPECT_LE(sign(compare(e.enclosure.lo, e.enclosure.hi)), 0);
    EXPECT_GE(sign(compare(e.value, e.enclosure.lo)), 0) << e.name;
    EXPECT_LE(sign(compare(e.value, e.enclosure.hi)), 0) << e.name;
  }
  const std::string j = bound_report_to_json(r);
  EXPECT_NE(j.find("\"d\":154"), std::string::npos);
  EXPECT_NE(j.find("\"radicand_erratum\":true"), std::string::npos);
}

// Limit excess approached by the n = 6p family: p q/n^2 + m q/n^2 with
// m/p -> (13 - sqrt153)/2, q/n -> 1/2.
TEST(Bounds, FamilyExcessApproachesRecomputedLimit) {
  const Surd limit{15, -1, 24, 153};
  for (int n : {600, 1200, 6000}) {
    const Probability t = target_excess(n);
    EXPECT_GE(sign(compare(limit, t)), 0) << n;
    EXPECT_LT(sign(compare(t, Probability(1, 9))), 0) << n;
  }
  EXPECT_GT(sign(compare(Surd{15, -1, 24, 153}, Probability(1096, 10000))), 0);
  EXPECT_LT(sign(compare(Surd{15, -1, 24, 153}, Probability(1097, 10000))), 0);
  EXPECT_LT(sign(compare(Surd{15, -1, 24, 153}, Probability(25, 228))), 0);
}
