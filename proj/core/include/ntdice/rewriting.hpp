#pragma once

// Rewrite moves on dice words.
//
//   SymmExchange(i, j)   windows (i,i+1) = xy and (j,j+1) = yx swapped together;
//                        all three pair counts are unchanged.
//   RotateFrontToBack    xyz.s -> s.xyz for three distinct leading letters;
//   RotateBackToFront    s.xyz -> xyz.s; both keep the counts of a complete word.
//   Step2(i, j, k)       AB, BC, CA at (i,i+1), (j,j+1), (k,k+1) become BA, CB, AC;
//                        every count grows by exactly one.
//
// Positions are 1-based, matching the dice labels.

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ntdice/dice.hpp"

namespace ntdice {

enum class MoveKind : std::uint8_t {
  SymmExchange = 0,
  RotateFrontToBack = 1,
  RotateBackToFront = 2,
  Step2 = 3,
};

std::string_view to_string(MoveKind kind);
MoveKind parse_move_kind(std::string_view text);

struct RewriteMove {
  MoveKind kind = MoveKind::SymmExchange;
  int i = 0;
  int j = 0;
  int k = 0;

  static RewriteMove symm_exchange(int i, int j) { return {MoveKind::SymmExchange, i, j, 0}; }
  static RewriteMove rotate_front_to_back() { return {MoveKind::RotateFrontToBack, 0, 0, 0}; }
  static RewriteMove rotate_back_to_front() { return {MoveKind::RotateBackToFront, 0, 0, 0}; }
  static RewriteMove step2(int i, int j, int k) { return {MoveKind::Step2, i, j, k}; }

  bool preserves_counts() const noexcept { return kind != MoveKind::Step2; }

  /// Enumeration order: kind first, then window positions ascending.
  auto operator<=>(const RewriteMove&) const = default;
};

std::string describe(const RewriteMove& m);

struct MovePath {
  DiceWord start;
  std::vector<RewriteMove> moves;
  DiceWord end;

  bool operator==(const MovePath&) const = default;
};

/// Requires a complete word; throws PreconditionError naming the bad window.
DiceWord apply_move(const DiceWord& w, const RewriteMove& m);

/// Replays every move from path.start and checks the result equals path.end.
/// Throws PreconditionError on an invalid step or a wrong end word.
void verify_path(const MovePath& path);

/// SymmExchange on a word over {A, B} only (no completeness requirement).
DiceWord apply_two_letter_move(const DiceWord& w, const RewriteMove& m);
void verify_two_letter_path(const MovePath& path);

/// N(A>B) for a word over {A, B}: pairs with a B before an A.
std::int64_t two_letter_ab(const DiceWord& w);

/// All disjoint (AB, BC, CA) window triples, lexicographic in (i, j, k).
std::vector<RewriteMove> find_step2_sites(const DiceWord& w);

/// Count-preserving neighbours of a complete word in enumeration order.
std::vector<RewriteMove> similarity_moves(const DiceWord& w);

/// Extracts ABBA blocks to the front one at a time; the target is (ABBA)^m,
/// or (BAAB)^m when the word starts with B. Throws DomainError if the word
/// is not a fair two-letter word of length 4m.
MovePath normalize_two_letter_fair(const DiceWord& w);

inline constexpr std::size_t kDefaultSearchBudget = 2'000'000;

enum class SearchStatus {
  Found,
  /// Frontier exhausted: no target is similar.
  NotReachable,
  /// Budget ran out first; reachability unknown.
  BudgetExceeded,
};

std::string_view to_string(SearchStatus s);

struct SearchOutcome {
  SearchStatus status = SearchStatus::NotReachable;
  /// Shortest path, lexicographically smallest move sequence among shortest.
  std::optional<MovePath> path;
  std::size_t states = 0;
  /// Every word discovered (only filled when requested).
  std::vector<std::string> visited;
};

/// Breadth-first search from `from` over SymmExchange and both rotations
/// until a word satisfying `is_target` is discovered.
SearchOutcome search_similar(const DiceWord& from,
                             const std::function<bool(const std::string&)>& is_target,
                             std::size_t budget = kDefaultSearchBudget,
                             bool keep_visited = false);

/// Shortest rewrite path from w1 to w2. Both complete and of equal length.
SearchOutcome similar(const DiceWord& w1, const DiceWord& w2,
                      std::size_t budget = kDefaultSearchBudget);

}  // namespace ntdice
