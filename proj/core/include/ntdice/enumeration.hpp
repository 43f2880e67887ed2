#pragma once

// Exhaustive scan of every complete word of length 3n.
//
// The word space is cut into prefix partitions (all words sharing the first
// k letters). Workers take partitions from a shared counter, each filling a
// private accumulator; accumulators are merged in partition order, so the
// resulting stats do not depend on the worker count.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ntdice/dice.hpp"
#include "ntdice/rewriting.hpp"

namespace ntdice {

inline constexpr int kMaxEnumerationSides = 7;
inline constexpr std::size_t kWitnessCap = 10;
inline constexpr int kStatsFormatVersion = 1;

/// Conjunctive: every requested flag must hold.
struct EnumFilter {
  bool balanced = false;
  bool nontransitive = false;
  bool fair = false;
  std::optional<PairCounts> target_counts;

  bool matches(const PairCounts& c) const;
};

struct EnumOptions {
  unsigned workers = 1;
  /// Required for n = 7 (399,072,960 words).
  bool long_run = false;
  /// Deliver consumer calls one at a time under a lock.
  bool serialize_consumer = true;
};

using WordConsumer = std::function<void(const DiceWord&, const PairCounts&)>;

struct EnumStats {
  int n = 0;
  std::uint64_t total_words = 0;
  std::uint64_t count_balanced = 0;
  std::uint64_t count_balanced_nontransitive = 0;
  std::uint64_t count_fair = 0;
  /// Largest common probability among balanced non-transitive words.
  std::optional<Probability> max_prob;
  /// Lexicographically smallest words attaining max_prob, at most kWitnessCap.
  std::vector<DiceWord> witnesses;
  /// Common probability of each balanced word -> number of such words.
  std::map<Probability, std::uint64_t> histogram;

  bool operator==(const EnumStats&) const = default;
};

/// (3n)! / (n!)^3.
std::uint64_t word_count(int n);

/// 1 <= n <= 7; n = 7 needs options.long_run.
EnumStats enumerate(int n, const EnumFilter& filter = {}, const WordConsumer& consumer = {},
                    const EnumOptions& options = {});

struct MaxProbability {
  std::optional<Probability> value;
  std::vector<DiceWord> witnesses;
};

/// 2 <= n <= 7.
MaxProbability max_probability(int n, const EnumOptions& options = {});

/// Six-letter blocks xyzzyx with {x,y,z} = {A,B,C}.
bool is_block_product(std::string_view word);
/// Same, and every block uses the same permutation.
bool is_uniform_block_product(std::string_view word);

struct ReachabilityTally {
  std::uint64_t reachable = 0;
  std::uint64_t not_reachable = 0;
  std::uint64_t unresolved = 0;
  /// First few words proved not reachable.
  std::vector<DiceWord> counterexamples;
};

struct FairConjectureReport {
  int n = 0;
  std::uint64_t fair_words_found = 0;
  /// No fair word exists unless n is even.
  bool parity_ok = true;
  bool similarity_checked = false;
  ReachabilityTally same_perm;
  ReachabilityTally mixed_perm;
};

/// Parity part for 1 <= n <= 7; similarity part only for n <= 4.
FairConjectureReport verify_fair_conjecture(int n, std::size_t bfs_budget = kDefaultSearchBudget,
                                            const EnumOptions& options = {});

/// JSON stats file (format_version, n, counts, rationals as "p/q").
void cache_stats(const EnumStats& stats, const std::filesystem::path& path);
/// Throws IoError, FormatError (corrupt or wrong version) or IntegrityError
/// (a witness that does not re-verify).
EnumStats load_stats(const std::filesystem::path& path);

}  // namespace ntdice
