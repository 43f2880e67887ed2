#pragma once

// Concatenation laws and irreducibility.
//
// For complete words s (m-sided) and t (n-sided), every pair count of st is
//   N_st(X>Y) = N_s(X>Y) + N_t(X>Y) + m*n,
// because each letter of t outranks each letter of s.

#include <cstdint>
#include <optional>

#include "ntdice/dice.hpp"

namespace ntdice {

struct ConcatPrediction {
  int m = 0;
  int n = 0;
  PairCounts predicted;
};

struct IrreducibilityReport {
  bool irreducible = true;
  /// Length of a prefix such that prefix and suffix are both balanced and
  /// non-transitive; always a multiple of 3. Smallest such split.
  std::optional<std::size_t> witness_split;
};

/// Both operands must be complete.
DiceWord concat(const DiceWord& w1, const DiceWord& w2);

ConcatPrediction predict_counts(const PairCounts& c1, const PairCounts& c2);

/// P_{st}(A>B) from the side counts and A>B counts of the two factors.
Probability combined_probability(int m, std::int64_t n_ab, int n, std::int64_t t_ab);

/// Requires a balanced non-transitive word (DomainError otherwise). Checks
/// every binary split at a prefix with equal letter counts.
IrreducibilityReport is_irreducible(const DiceWord& w);

}  // namespace ntdice
