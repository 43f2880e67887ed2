#include "ntdice/rewriting.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "ntdice/errors.hpp"

namespace ntdice {
namespace {

std::string window_text(const DiceWord& w, int pos) {
  std::string s;
  s.push_back(to_char(w[pos - 1]));
  s.push_back(to_char(w[pos]));
  return s;
}

void check_window(const DiceWord& w, int pos, const char* what) {
  if (pos < 1 || static_cast<std::size_t>(pos) + 1 > w.size()) {
    std::ostringstream msg;
    msg << what << " window at " << pos << " is out of range for a word of length " << w.size();
    throw PreconditionError(msg.str());
  }
}

bool overlaps(int p, int q) { return p == q || p + 1 == q || q + 1 == p; }

std::vector<Letter> swap_window(std::vector<Letter> letters, int pos) {
  std::swap(letters[pos - 1], letters[pos]);
  return letters;
}

DiceWord apply_symm_exchange(const DiceWord& w, int i, int j) {
  check_window(w, i, "first");
  check_window(w, j, "second");
  if (overlaps(i, j)) {
    throw PreconditionError("windows at " + std::to_string(i) + " and " + std::to_string(j) +
                            " overlap");
  }
  const Letter x = w[i - 1], y = w[i];
  if (x == y || w[j - 1] != y || w[j] != x) {
    throw PreconditionError("windows " + window_text(w, i) + " at " + std::to_string(i) +
                            " and " + window_text(w, j) + " at " + std::to_string(j) +
                            " are not an xy/yx pair");
  }
  std::vector<Letter> out(w.letters().begin(), w.letters().end());
  std::swap(out[i - 1], out[i]);
  std::swap(out[j - 1], out[j]);
  return DiceWord(std::move(out));
}

bool distinct3(Letter a, Letter b, Letter c) { return a != b && b != c && a != c; }

}  // namespace

std::string_view to_string(MoveKind kind) {
  switch (kind) {
    case MoveKind::SymmExchange: return "symm_exchange";
    case MoveKind::RotateFrontToBack: return "rotate_front_to_back";
    case MoveKind::RotateBackToFront: return "rotate_back_to_front";
    case MoveKind::Step2: return "step2";
  }
  return "?";
}

MoveKind parse_move_kind(std::string_view text) {
  for (MoveKind k : {MoveKind::SymmExchange, MoveKind::RotateFrontToBack,
                     MoveKind::RotateBackToFront, MoveKind::Step2}) {
    if (to_string(k) == text) return k;
  }
  throw FormatError("unknown move kind \"" + std::string(text) + "\"");
}

std::string describe(const RewriteMove& m) {
  std::ostringstream out;
  out << to_string(m.kind);
  switch (m.kind) {
    case MoveKind::SymmExchange: out << '(' << m.i << ',' << m.j << ')'; break;
    case MoveKind::Step2: out << '(' << m.i << ',' << m.j << ',' << m.k << ')'; break;
    default: break;
  }
  return out.str();
}

std::string_view to_string(SearchStatus s) {
  switch (s) {
    case SearchStatus::Found: return "found";
    case SearchStatus::NotReachable: return "not_reachable";
    case SearchStatus::BudgetExceeded: return "budget_exceeded";
  }
  return "?";
}

DiceWord apply_move(const DiceWord& w, const RewriteMove& m) {
  require_complete(w);
  switch (m.kind) {
    case MoveKind::SymmExchange: return apply_symm_exchange(w, m.i, m.j);

    case MoveKind::RotateFrontToBack:
    case MoveKind::RotateBackToFront: {
      if (w.size() < 3) throw PreconditionError("rotation needs at least three letters");
      const std::size_t start = m.kind == MoveKind::RotateFrontToBack ? 0 : w.size() - 3;
      if (!distinct3(w[start], w[start + 1], w[start + 2])) {
        throw PreconditionError(std::string(m.kind == MoveKind::RotateFrontToBack ? "leading"
                                                                                  : "trailing") +
                                " block does not hold three distinct letters");
      }
      std::vector<Letter> out;
      out.reserve(w.size());
      auto letters = w.letters();
      if (m.kind == MoveKind::RotateFrontToBack) {
        out.insert(out.end(), letters.begin() + 3, letters.end());
        out.insert(out.end(), letters.begin(), letters.begin() + 3);
      } else {
        out.insert(out.end(), letters.end() - 3, letters.end());
        out.insert(out.end(), letters.begin(), letters.end() - 3);
      }
      return DiceWord(std::move(out));
    }

    case MoveKind::Step2: {
      const int pos[3] = {m.i, m.j, m.k};
      const char* names[3] = {"AB", "BC", "CA"};
      const Letter first[3] = {Letter::A, Letter::B, Letter::C};
      const Letter second[3] = {Letter::B, Letter::C, Letter::A};
      for (int t = 0; t < 3; ++t) {
        check_window(w, pos[t], names[t]);
        if (w[pos[t] - 1] != first[t] || w[pos[t]] != second[t]) {
          throw PreconditionError(std::string(names[t]) + " window at " +
                                  std::to_string(pos[t]) + " reads " +
                                  window_text(w, pos[t]));
        }
      }
      for (int s = 0; s < 3; ++s) {
        for (int t = s + 1; t < 3; ++t) {
          if (overlaps(pos[s], pos[t])) {
            throw PreconditionError(std::string(names[s]) + " window at " +
                                    std::to_string(pos[s]) + " overlaps " + names[t] +
                                    " window at " + std::to_string(pos[t]));
          }
        }
      }
      std::vector<Letter> out(w.letters().begin(), w.letters().end());
      for (int p : pos) out = swap_window(std::move(out), p);
      return DiceWord(std::move(out));
    }
  }
  throw PreconditionError("unknown move kind");
}

void verify_path(const MovePath& path) {
  DiceWord cur = path.start;
  for (std::size_t s = 0; s < path.moves.size(); ++s) {
    try {
      cur = apply_move(cur, path.moves[s]);
    } catch (const PreconditionError& e) {
      throw PreconditionError("move " + std::to_string(s + 1) + " (" +
                              describe(path.moves[s]) + "): " + e.what());
    }
  }
  if (!(cur == path.end)) {
    throw PreconditionError("path replay ends at " + cur.str() + ", expected " + path.end.str());
  }
}

DiceWord apply_two_letter_move(const DiceWord& w, const RewriteMove& m) {
  if (w.count(Letter::C) != 0) throw PreconditionError("two-letter word contains C");
  if (m.kind != MoveKind::SymmExchange) {
    throw PreconditionError("only symm_exchange applies to two-letter words");
  }
  return apply_symm_exchange(w, m.i, m.j);
}

void verify_two_letter_path(const MovePath& path) {
  DiceWord cur = path.start;
  for (std::size_t s = 0; s < path.moves.size(); ++s) {
    try {
      cur = apply_two_letter_move(cur, path.moves[s]);
    } catch (const PreconditionError& e) {
      throw PreconditionError("move " + std::to_string(s + 1) + " (" +
                              describe(path.moves[s]) + "): " + e.what());
    }
  }
  if (!(cur == path.end)) {
    throw PreconditionError("path replay ends at " + cur.str() + ", expected " + path.end.str());
  }
}

std::int64_t two_letter_ab(const DiceWord& w) {
  std::int64_t seen_b = 0, ab = 0;
  for (Letter l : w.letters()) {
    if (l == Letter::A) ab += seen_b;
    if (l == Letter::B) ++seen_b;
  }
  return ab;
}

std::vector<RewriteMove> find_step2_sites(const DiceWord& w) {
  require_complete(w);
  std::vector<int> ab, bc, ca;
  for (std::size_t p = 0; p + 1 < w.size(); ++p) {
    const Letter x = w[p], y = w[p + 1];
    const int pos = static_cast<int>(p) + 1;
    if (x == Letter::A && y == Letter::B) ab.push_back(pos);
    if (x == Letter::B && y == Letter::C) bc.push_back(pos);
    if (x == Letter::C && y == Letter::A) ca.push_back(pos);
  }
  std::vector<RewriteMove> sites;
  for (int i : ab) {
    for (int j : bc) {
      if (overlaps(i, j)) continue;
      for (int k : ca) {
        if (overlaps(i, k) || overlaps(j, k)) continue;
        sites.push_back(RewriteMove::step2(i, j, k));
      }
    }
  }
  return sites;
}

std::vector<RewriteMove> similarity_moves(const DiceWord& w) {
  std::vector<RewriteMove> out;
  const int len = static_cast<int>(w.size());
  for (int i = 1; i + 1 <= len; ++i) {
    const Letter x = w[i - 1], y = w[i];
    if (x == y) continue;
    for (int j = i + 2; j + 1 <= len; ++j) {
      if (w[j - 1] == y && w[j] == x) out.push_back(RewriteMove::symm_exchange(i, j));
    }
  }
  if (len >= 3 && w.is_complete()) {
    if (distinct3(w[0], w[1], w[2])) out.push_back(RewriteMove::rotate_front_to_back());
    if (distinct3(w[len - 3], w[len - 2], w[len - 1])) {
      out.push_back(RewriteMove::rotate_back_to_front());
    }
  }
  return out;
}

MovePath normalize_two_letter_fair(const DiceWord& w) {
  const std::size_t len = w.size();
  if (w.count(Letter::C) != 0) throw DomainError("two-letter word must not contain C: " + w.str());
  if (len % 4 != 0) {
    throw DomainError("two-letter fair word needs length 4m, got " + std::to_string(len));
  }
  const std::int64_t m = static_cast<std::int64_t>(len / 4);
  if (w.count(Letter::A) != w.count(Letter::B)) {
    throw DomainError("two-letter word needs equal A and B counts: " + w.str());
  }
  const std::int64_t ab = two_letter_ab(w);
  if (ab != 2 * m * m) {
    throw DomainError("not fair: N(A>B) = " + std::to_string(ab) + ", expected " +
                      std::to_string(2 * m * m));
  }

  MovePath path;
  path.start = w;
  if (len == 0) {
    path.end = w;
    return path;
  }
  const Letter x = w[0];
  const Letter y = x == Letter::A ? Letter::B : Letter::A;
  const Letter block[4] = {x, y, y, x};

  std::vector<Letter> cur(w.letters().begin(), w.letters().end());
  // Bring `want` to index `pos` (0-based). Each step swaps the adjacent
  // (other, want) pair just left of the nearest `want` and compensates with
  // the first (want, other) window to its right.
  auto pull = [&](std::size_t pos, Letter want) {
    std::size_t q = pos;
    while (q < len && cur[q] != want) ++q;
    if (q == len) throw DomainError("normalization found no letter to extract");
    while (q > pos) {
      std::size_t r = q + 1;
      while (r + 1 < len && !(cur[r] == want && cur[r + 1] != want)) ++r;
      if (r + 1 >= len) {
        std::string cur_text = DiceWord(cur).str();
        throw DomainError("normalization stuck at " + cur_text + ": no compensating window after " +
                          std::to_string(q + 1));
      }
      std::swap(cur[q - 1], cur[q]);
      std::swap(cur[r], cur[r + 1]);
      path.moves.push_back(
          RewriteMove::symm_exchange(static_cast<int>(q), static_cast<int>(r) + 1));
      --q;
    }
  };
  for (std::size_t base = 0; base < len; base += 4) {
    for (std::size_t t = 0; t < 4; ++t) pull(base + t, block[t]);
  }
  path.end = DiceWord(std::move(cur));
  return path;
}

SearchOutcome search_similar(const DiceWord& from,
                             const std::function<bool(const std::string&)>& is_target,
                             std::size_t budget, bool keep_visited) {
  require_complete(from);
  struct Node {
    std::string word;
    std::size_t parent;
    RewriteMove move;
  };
  constexpr std::size_t kRoot = static_cast<std::size_t>(-1);

  SearchOutcome out;
  std::vector<Node> nodes;
  std::unordered_map<std::string, std::size_t> index;
  nodes.push_back({from.str(), kRoot, {}});
  index.emplace(nodes.back().word, 0);

  auto build_path = [&](std::size_t at) {
    MovePath p;
    p.start = from;
    p.end = parse_word(nodes[at].word);
    for (std::size_t cur = at; nodes[cur].parent != kRoot; cur = nodes[cur].parent) {
      p.moves.push_back(nodes[cur].move);
    }
    std::reverse(p.moves.begin(), p.moves.end());
    return p;
  };
  auto finish = [&](SearchStatus status) {
    out.status = status;
    out.states = nodes.size();
    if (keep_visited) {
      out.visited.reserve(nodes.size());
      for (auto& n : nodes) out.visited.push_back(std::move(n.word));
    }
    return out;
  };

  if (is_target(nodes[0].word)) {
    out.path = build_path(0);
    return finish(SearchStatus::Found);
  }
  // FIFO order over a vector: nodes are appended in discovery order.
  for (std::size_t head = 0; head < nodes.size(); ++head) {
    const DiceWord cur = parse_word(nodes[head].word);
    for (const RewriteMove& mv : similarity_moves(cur)) {
      std::string next = apply_move(cur, mv).str();
      if (index.contains(next)) continue;
      if (nodes.size() >= budget) return finish(SearchStatus::BudgetExceeded);
      const bool hit = is_target(next);
      nodes.push_back({std::move(next), head, mv});
      index.emplace(nodes.back().word, nodes.size() - 1);
      if (hit) {
        out.path = build_path(nodes.size() - 1);
        return finish(SearchStatus::Found);
      }
    }
  }
  return finish(SearchStatus::NotReachable);
}

SearchOutcome similar(const DiceWord& w1, const DiceWord& w2, std::size_t budget) {
  require_complete(w1);
  require_complete(w2);
  if (w1.size() != w2.size()) {
    throw DomainError("similarity needs equal lengths, got " + std::to_string(w1.size()) +
                      " and " + std::to_string(w2.size()));
  }
  const std::string target = w2.str();
  return search_similar(w1, [&](const std::string& s) { return s == target; }, budget);
}

}  // namespace ntdice
