#pragma once

// Dice sets, their words, and exact win counts.
//
// A set of n-sided dice is a partition of the labels 1..3n into three
// n-element sets A, B, C. Its word has length 3n; letter i names the die
// carrying label i. All win statistics are integer pair counts, and
// probabilities are reduced rationals over n^2.

#include <array>
#include <compare>
#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <boost/rational.hpp>

namespace ntdice {

enum class Letter : std::uint8_t { A = 0, B = 1, C = 2 };

inline constexpr std::array<Letter, 3> kLetters{Letter::A, Letter::B, Letter::C};

constexpr char to_char(Letter l) noexcept { return static_cast<char>('A' + static_cast<int>(l)); }
constexpr int index_of(Letter l) noexcept { return static_cast<int>(l); }

/// Exact probability, always reduced.
using Probability = boost::rational<std::int64_t>;

/// "5/9", "1/2", "0", "1".
std::string to_string(const Probability& p);

/// Parses the to_string form; throws FormatError.
Probability parse_probability(std::string_view text);

/// Sequence of letters. Words with unequal letter counts are representable
/// (they show up as rewrite intermediates and as two-letter words), but
/// counting and classification require a complete word.
class DiceWord {
 public:
  DiceWord() = default;
  explicit DiceWord(std::vector<Letter> letters);

  std::size_t size() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// 0-based access.
  Letter operator[](std::size_t i) const noexcept { return letters_[i]; }
  std::span<const Letter> letters() const noexcept { return letters_; }

  int count(Letter l) const noexcept { return counts_[index_of(l)]; }
  std::array<int, 3> counts() const noexcept { return counts_; }

  /// Equal letter counts (the empty word is complete with n = 0).
  bool is_complete() const noexcept {
    return counts_[0] == counts_[1] && counts_[1] == counts_[2];
  }
  /// Sides per die; only meaningful for complete words.
  int sides() const noexcept { return counts_[0]; }

  std::string str() const;

  /// Concatenation of letter sequences without any completeness check.
  DiceWord operator+(const DiceWord& rhs) const;
  DiceWord repeated(int times) const;

  bool operator==(const DiceWord& rhs) const noexcept { return letters_ == rhs.letters_; }
  /// Lexicographic with A < B < C.
  std::strong_ordering operator<=>(const DiceWord& rhs) const noexcept {
    return letters_ <=> rhs.letters_;
  }

 private:
  std::vector<Letter> letters_;
  std::array<int, 3> counts_{0, 0, 0};
};

/// Three label sets partitioning 1..3n.
struct DiceSet {
  int n = 0;
  std::set<int> a;
  std::set<int> b;
  std::set<int> c;

  const std::set<int>& die(Letter l) const noexcept;

  bool operator==(const DiceSet&) const = default;
};

/// N(A>B), N(B>C), N(C>A) for an n-sided set.
struct PairCounts {
  int n = 0;
  std::int64_t ab = 0;
  std::int64_t bc = 0;
  std::int64_t ca = 0;

  std::int64_t total() const noexcept { return static_cast<std::int64_t>(n) * n; }

  bool operator==(const PairCounts&) const = default;
};

struct Verdict {
  PairCounts counts;
  Probability p_ab;
  Probability p_bc;
  Probability p_ca;
  bool balanced = false;
  bool nontransitive = false;
  bool fair = false;

  bool operator==(const Verdict&) const = default;
};

/// Throws FormatError on any character other than 'A', 'B', 'C'.
DiceWord parse_word(std::string_view text);

/// Throws DomainError("incomplete word: counts a,b,c") unless counts are equal.
void require_complete(const DiceWord& w);

/// Throws ValidationError naming the offending label.
void validate(const DiceSet& d);

DiceWord word_from_dice(const DiceSet& d);
DiceSet dice_from_word(const DiceWord& w);

/// Single left-to-right pass with running letter tallies.
PairCounts pair_counts(const DiceWord& w);

Verdict classify(const PairCounts& c);
Verdict classify(const DiceWord& w);

}  // namespace ntdice
