#include <gtest/gtest.h>

#include <random>

#include "ntdice/dice.hpp"
#include "ntdice/errors.hpp"
#include "oracle.hpp"

using namespace ntdice;

namespace {

DiceSet intro_six_sided() {
  return DiceSet{6, {18, 13, 10, 7, 5, 4}, {17, 14, 12, 9, 3, 2}, {16, 15, 11, 8, 6, 1}};
}

}  // namespace

TEST(ParseWord, AcceptsOnlyUppercaseABC) {
  EXPECT_EQ(parse_word("ACB").str(), "ACB");
  EXPECT_TRUE(parse_word("").empty());
  try {
    parse_word("ABxC");
    FAIL() << "expected FormatError";
  } catch (const FormatError& e) {
    EXPECT_NE(std::string(e.what()).find("'x' at position 3"), std::string::npos) << e.what();
  }
  EXPECT_THROW(parse_word("abc"), FormatError);
}

TEST(DiceWord, CountsAndOrdering) {
  const DiceWord w = parse_word("AABCC");
  EXPECT_EQ(w.count(Letter::A), 2);
  EXPECT_EQ(w.count(Letter::B), 1);
  EXPECT_FALSE(w.is_complete());
  EXPECT_LT(parse_word("ABC"), parse_word("ACB"));
  EXPECT_EQ((parse_word("AB") + parse_word("C")).str(), "ABC");
  EXPECT_EQ(parse_word("ABC").repeated(3).str(), "ABCABCABC");
}

TEST(DiceSet, RoundTripWithWord) {
  const DiceSet d = intro_six_sided();
  const DiceWord w = word_from_dice(d);
  EXPECT_EQ(w.size(), 18u);
  EXPECT_EQ(dice_from_word(w), d);
  EXPECT_EQ(word_from_dice(dice_from_word(parse_word("ACBBACCBA"))).str(), "ACBBACCBA");
}

TEST(DiceSet, ValidationNamesTheLabel) {
  DiceSet d{2, {1, 2}, {3, 4}, {5, 7}};
  try {
    validate(d);
    FAIL();
  } catch (const ValidationError& e) {
    EXPECT_NE(std::string(e.what()).find("7"), std::string::npos) << e.what();
  }
  EXPECT_THROW(validate(DiceSet{2, {1, 2}, {2, 3}, {4, 5}}), ValidationError);
  EXPECT_THROW(validate(DiceSet{2, {1}, {2, 3}, {4, 5}}), ValidationError);
  EXPECT_THROW(validate(DiceSet{0, {}, {}, {}}), ValidationError);
  EXPECT_THROW(word_from_dice(DiceSet{2, {1, 2}, {3, 4}, {5, 7}}), ValidationError);
}

TEST(PairCounts, SmallExamples) {
  EXPECT_EQ(pair_counts(parse_word("ABC")), (PairCounts{1, 0, 0, 1}));
  EXPECT_EQ(pair_counts(parse_word("ABBCCA")), (PairCounts{2, 2, 0, 2}));
  EXPECT_EQ(pair_counts(parse_word("ABCCBA")), (PairCounts{2, 2, 2, 2}));
}

TEST(PairCounts, IncompleteWordIsRejectedWithCounts) {
  try {
    pair_counts(parse_word("ABCA"));
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_STREQ(e.what(), "incomplete word: counts 2,1,1");
  }
}

TEST(PairCounts, MatchesFaceComparisonOracle) {
  std::mt19937_64 rng(20240601);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 12);
    const std::string w = oracle::random_word(rng, n);
    EXPECT_EQ(pair_counts(parse_word(w)), oracle::as_pair_counts(oracle::counts(w), n)) << w;
  }
}

// N(X>Y) + N(Y>X) = n^2 for every ordered pair of distinct dice.
TEST(PairCounts, ComplementWithReversedWord) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + static_cast<int>(rng() % 10);
    std::string w = oracle::random_word(rng, n);
    const PairCounts c = pair_counts(parse_word(w));
    std::reverse(w.begin(), w.end());
    // Reversal flips every comparison.
    const PairCounts r = pair_counts(parse_word(w));
    EXPECT_EQ(c.ab + r.ab, c.total());
    EXPECT_EQ(c.bc + r.bc, c.total());
    EXPECT_EQ(c.ca + r.ca, c.total());
  }
}

TEST(Classify, KnownWords) {
  const Verdict d3 = classify(parse_word("ACBBACCBA"));
  EXPECT_EQ(d3.counts, (PairCounts{3, 5, 5, 5}));
  EXPECT_EQ(d3.p_ab, Probability(5, 9));
  EXPECT_TRUE(d3.balanced);
  EXPECT_TRUE(d3.nontransitive);
  EXPECT_FALSE(d3.fair);

  const Verdict six = classify(word_from_dice(intro_six_sided()));
  EXPECT_EQ(six.p_ab, Probability(19, 36));
  EXPECT_EQ(six.p_bc, Probability(19, 36));
  EXPECT_EQ(six.p_ca, Probability(19, 36));
  EXPECT_TRUE(six.nontransitive);

  const Verdict tau = classify(parse_word("ABCCBA"));
  EXPECT_TRUE(tau.fair);
  EXPECT_TRUE(tau.balanced);
  EXPECT_FALSE(tau.nontransitive);

  const Verdict s4 = classify(parse_word("CBABAACCBCBA"));
  EXPECT_EQ(s4.p_ab, Probability(9, 16));
  EXPECT_TRUE(s4.balanced && s4.nontransitive);

  const Verdict abc = classify(parse_word("ABC"));
  EXPECT_FALSE(abc.balanced);
  EXPECT_FALSE(abc.nontransitive);
}

TEST(Probability, TextRoundTrip) {
  EXPECT_EQ(to_string(Probability(10, 18)), "5/9");
  EXPECT_EQ(to_string(Probability(0, 4)), "0");
  EXPECT_EQ(to_string(Probability(4, 4)), "1");
  EXPECT_EQ(parse_probability("19/36"), Probability(19, 36));
  EXPECT_EQ(parse_probability("0"), Probability(0));
  EXPECT_THROW(parse_probability("1/0"), FormatError);
  EXPECT_THROW(parse_probability("x"), FormatError);
}
