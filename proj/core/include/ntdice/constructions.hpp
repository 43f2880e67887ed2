#pragma once

// Construction families for balanced non-transitive words and the exact
// evaluation of their probabilities and limiting bounds.

#include <optional>
#include <string>
#include <vector>

#include "ntdice/dice.hpp"
#include "ntdice/rewriting.hpp"
#include "ntdice/surd.hpp"

namespace ntdice {

namespace base_words {
/// ABCCBA, the fair 2-sided set.
const DiceWord& tau();
/// 3-sided set A={9,5,1}, B={8,4,3}, C={7,6,2}.
const DiceWord& d3();
/// 4-sided set A={10,7,5,4}, B={12,9,3,2}, C={11,8,6,1}.
const DiceWord& d4();
const DiceWord& sigma3();
const DiceWord& sigma4();
}  // namespace base_words

/// tau^k d3 for n = 3 + 2k, tau^k d4 for n = 4 + 2k. n >= 3.
DiceWord construct_irreducible(int n);

/// (ACBCBA)(ABCCBA)^(m-1)(BAC): n = 2m+1 sides, all counts 2m^2+2m+1. m >= 1.
DiceWord construct_near_half(int m);

enum class Stage { UnmixedFair, Sigma1, Sigma2 };

std::string_view to_string(Stage s);

/// Block sizes for the maximum-probability family, n = 6p + 2e with e in {0,1,2}.
struct BlockParams {
  int n = 0;
  int p = 0;
  int e = 0;
  /// Half the side count, q = 3p + e.
  int q = 0;
};

/// Throws DomainError unless n >= 6 and n is even.
BlockParams block_params(int n);

/// With q = n/2:
///   unmixed_fair  A^q B^q C^q C^q B^q A^q
///   sigma1        A^q B^(2p+e) C^q B^p C^(2p+e) B^q C^p A^q
///   sigma2        B^p A^q B^e C^q B^(2p) C^(2p+e) B^q A^q C^p
DiceWord stage_word(int n, Stage stage);

/// The quadratic whose non-negativity bounds the number of extra rounds,
/// evaluated exactly at m for n's residue class.
std::int64_t round_inequality(int n, std::int64_t m);

/// Largest m in [0, 2p] with round_inequality(n, m) >= 0; 0 when even m = 0 fails.
int m_max(int n);

/// Excess over 1/2 after sigma2: p q / n^2.
Probability stage2_excess(int n);

/// (p + m_max) q / n^2.
Probability target_excess(int n);

struct OptimizerReport {
  BlockParams params;
  DiceWord unmixed_fair;
  DiceWord sigma1;
  DiceWord sigma2;
  int m_max = 0;
  int rounds_completed = 0;
  /// round_inequality(n, 0) >= 0.
  bool zero_round_feasible = true;
  Probability target_excess;
  PairCounts achieved_counts;
  Probability achieved_excess;
  Probability gap;
  DiceWord final_word;
  /// From unmixed_fair through sigma1 and sigma2 to final_word.
  MovePath move_log;
  std::size_t sigma1_after_moves = 0;
  std::size_t sigma2_after_moves = 0;
  std::size_t step1_moves = 0;
  std::size_t step2_moves = 0;
  /// Set when a round could not find the windows it needed.
  std::optional<std::string> finding;
};

OptimizerReport optimize_max_prob(int n);

struct BoundEntry {
  std::string name;
  Surd value;
  Enclosure enclosure;
  bool below_one_ninth = false;
  std::string note;
};

struct BoundReport {
  int enclosure_digits = 14;
  /// Excess constants and limits, each compared with 1/9.
  std::vector<BoundEntry> excess;
  /// Ratio m/p of the largest admissible round count as p grows (no 1/9 verdict).
  std::vector<BoundEntry> root_coefficients;
  /// 13^2 - 4*4, the discriminant of m^2 - 13pm + 4p^2 divided by p^2.
  std::int64_t discriminant_6p = 0;
  std::int64_t printed_radicand_6p = 154;
  bool radicand_erratum = false;
  /// (15 - sqrt 153)/24 < 1/9.12.
  bool limit_below_1_over_9_12 = false;
  /// 13p+4 - sqrt(153p^2+108p+20) and 13p+8 - sqrt(153p^2+216p+80) increase for p = 1..checked.
  std::int64_t monotonicity_checked_to = 0;
  bool numerator_6p2_increasing = false;
  bool numerator_6p4_increasing = false;
};

/// monotone_limit bounds the exact monotonicity sweep (default 10^6).
BoundReport bound_report(std::int64_t monotone_limit = 1'000'000);

/// f(p) < f(p+1) for f(p) = 13p + shift - sqrt(153p^2 + lin p + cst), decided on integers.
bool numerator_increases_at(std::int64_t p, std::int64_t shift, std::int64_t lin, std::int64_t cst);

}  // namespace ntdice
