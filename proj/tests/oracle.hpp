#pragma once

// Independent reference implementations used only by tests. Nothing here
// calls into the single-pass tally or the partitioned scan.

#include <algorithm>
#include <compare>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "ntdice/dice.hpp"

namespace oracle {

struct Counts {
  std::int64_t ab = 0, bc = 0, ca = 0;
  bool operator==(const Counts&) const = default;
};

/// Direct O(n^2) comparison of die faces.
inline std::int64_t wins(const std::set<int>& x, const std::set<int>& y) {
  std::int64_t w = 0;
  for (int a : x)
    for (int b : y) w += a > b;
  return w;
}

/// Labels read off the string itself, position i carrying label i+1.
inline Counts counts(const std::string& word) {
  std::set<int> a, b, c;
  for (std::size_t i = 0; i < word.size(); ++i) {
    (word[i] == 'A' ? a : word[i] == 'B' ? b : c).insert(static_cast<int>(i) + 1);
  }
  return {wins(a, b), wins(b, c), wins(c, a)};
}

inline ntdice::PairCounts as_pair_counts(const Counts& c, int n) { return {n, c.ab, c.bc, c.ca}; }

/// Every arrangement of A^n B^n C^n in lexicographic order.
inline std::vector<std::string> all_words(int n) {
  std::string w = std::string(n, 'A') + std::string(n, 'B') + std::string(n, 'C');
  std::vector<std::string> out;
  do {
    out.push_back(w);
  } while (std::next_permutation(w.begin(), w.end()));
  return out;
}

inline std::string random_word(std::mt19937_64& rng, int n) {
  std::string w = std::string(n, 'A') + std::string(n, 'B') + std::string(n, 'C');
  std::shuffle(w.begin(), w.end(), rng);
  return w;
}

/// (3n)! / (n!)^3 as a product of binomials.
inline std::uint64_t multinomial(int n) {
  std::uint64_t r = 1;
  for (int i = 1; i <= n; ++i) r = r * static_cast<std::uint64_t>(2 * n + i) / static_cast<std::uint64_t>(i);
  std::uint64_t s = 1;
  for (int i = 1; i <= n; ++i) s = s * static_cast<std::uint64_t>(n + i) / static_cast<std::uint64_t>(i);
  return r * s;
}

/// Largest m in [0, 2p] with f(m) >= 0 by linear scan, f given in expanded form.
template <typename F>
int last_nonnegative(int hi, F f) {
  int best = 0;
  for (int m = 0; m <= hi; ++m)
    if (f(m) >= 0) best = m;
  return best;
}

}  // namespace oracle

/// strong_ordering as -1, 0, 1 so gtest comparison macros accept it.
inline int sign(std::strong_ordering o) { return o < 0 ? -1 : (o > 0 ? 1 : 0); }
