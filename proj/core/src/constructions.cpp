#include "ntdice/constructions.hpp"

#include <algorithm>
#include <functional>

#include "ntdice/errors.hpp"
#include "ntdice/word_algebra.hpp"

namespace ntdice {
namespace base_words {

const DiceWord& tau() {
  static const DiceWord w = parse_word("ABCCBA");
  return w;
}
const DiceWord& d3() {
  static const DiceWord w = parse_word("ACBBACCBA");
  return w;
}
const DiceWord& d4() {
  static const DiceWord w = parse_word("CBBAACACBACB");
  return w;
}
const DiceWord& sigma3() {
  static const DiceWord w = parse_word("CBABACACB");
  return w;
}
const DiceWord& sigma4() {
  static const DiceWord w = parse_word("CBABAACCBCBA");
  return w;
}

}  // namespace base_words

namespace {

DiceWord blocks(std::initializer_list<std::pair<Letter, int>> runs) {
  std::vector<Letter> out;
  for (auto [l, len] : runs) out.insert(out.end(), static_cast<std::size_t>(len), l);
  return DiceWord(std::move(out));
}

}  // namespace

DiceWord construct_irreducible(int n) {
  if (n < 3) {
    throw DomainError("no balanced non-transitive set exists with n = " + std::to_string(n) +
                      " < 3 sides");
  }
  const bool odd = n % 2 == 1;
  const int k = odd ? (n - 3) / 2 : (n - 4) / 2;
  return base_words::tau().repeated(k) + (odd ? base_words::d3() : base_words::d4());
}

DiceWord construct_near_half(int m) {
  if (m < 1) throw DomainError("near-half family needs m >= 1, got " + std::to_string(m));
  return parse_word("ACBCBA") + base_words::tau().repeated(m - 1) + parse_word("BAC");
}

std::string_view to_string(Stage s) {
  switch (s) {
    case Stage::UnmixedFair: return "unmixed_fair";
    case Stage::Sigma1: return "sigma1";
    case Stage::Sigma2: return "sigma2";
  }
  return "?";
}

BlockParams block_params(int n) {
  if (n < 6 || n % 2 != 0) {
    throw DomainError("maximum-probability family needs even n >= 6, got " + std::to_string(n));
  }
  BlockParams b;
  b.n = n;
  b.p = n / 6;
  b.e = (n % 6) / 2;
  b.q = n / 2;
  return b;
}

DiceWord stage_word(int n, Stage stage) {
  const auto [_, p, e, q] = block_params(n);
  constexpr Letter A = Letter::A, B = Letter::B, C = Letter::C;
  switch (stage) {
    case Stage::UnmixedFair: return blocks({{A, q}, {B, q}, {C, q}, {C, q}, {B, q}, {A, q}});
    case Stage::Sigma1:
      return blocks({{A, q}, {B, 2 * p + e}, {C, q}, {B, p}, {C, 2 * p + e}, {B, q}, {C, p}, {A, q}});
    case Stage::Sigma2:
      return blocks(
          {{B, p}, {A, q}, {B, e}, {C, q}, {B, 2 * p}, {C, 2 * p + e}, {B, q}, {A, q}, {C, p}});
  }
  throw DomainError("unknown stage");
}

std::int64_t round_inequality(int n, std::int64_t m) {
  const auto params = block_params(n);
  const std::int64_t p = params.p;
  const std::int64_t q = params.q;
  // Remaining middle BC exchanges must cover the moves of m further rounds.
  switch (params.e) {
    case 0: return (2 * p - m) * (2 * p - m) - 9 * p * m;
    case 1: return (2 * p - m) * (2 * p + 1 - m) - q - 3 * m * q;
    default: return (2 * p - m) * (2 * p + 2 - m) - 2 * q - 3 * m * q;
  }
}

int m_max(int n) {
  const auto params = block_params(n);
  // The quadratic's vertex lies right of 2p, so it decreases on [0, 2p]:
  // the admissible set is a prefix and binary search finds its end.
  if (round_inequality(n, 0) < 0) return 0;
  std::int64_t lo = 0, hi = 2 * static_cast<std::int64_t>(params.p);
  while (lo < hi) {
    const std::int64_t mid = lo + (hi - lo + 1) / 2;
    if (round_inequality(n, mid) >= 0) lo = mid;
    else hi = mid - 1;
  }
  return static_cast<int>(lo);
}

Probability stage2_excess(int n) {
  const auto b = block_params(n);
  return Probability(static_cast<std::int64_t>(b.p) * b.q, static_cast<std::int64_t>(n) * n);
}

Probability target_excess(int n) {
  const auto b = block_params(n);
  return Probability(static_cast<std::int64_t>(b.p + m_max(n)) * b.q,
                     static_cast<std::int64_t>(n) * n);
}

namespace {

// Windows (0-based left index) that carry a block of `count` letters, whose
// last letter sits at `last`, rightwards across `width` letters. The last
// letter of the block travels first.
std::vector<int> cross_right(int last, int count, int width) {
  std::vector<int> out;
  for (int t = 0; t < count; ++t) {
    for (int s = 0; s < width; ++s) out.push_back(last - t + s);
  }
  return out;
}

// Mirror image: a block whose first letter sits at `first` moves left; the
// first letter travels first.
std::vector<int> cross_left(int first, int count, int width) {
  std::vector<int> out;
  for (int t = 0; t < count; ++t) {
    for (int s = 0; s < width; ++s) out.push_back(first + t - 1 - s);
  }
  return out;
}

class Schedule {
 public:
  explicit Schedule(const DiceWord& start) : cur_(start.letters().begin(), start.letters().end()) {
    log_.start = start;
  }

  void apply(const RewriteMove& m) {
    const DiceWord next = apply_move(DiceWord(cur_), m);
    cur_.assign(next.letters().begin(), next.letters().end());
    log_.moves.push_back(m);
    if (m.kind == MoveKind::Step2) ++step2_;
    else ++step1_;
  }

  Letter at(int i) const { return cur_[static_cast<std::size_t>(i)]; }
  bool window(int i, Letter x, Letter y) const { return at(i) == x && at(i + 1) == y; }
  int size() const { return static_cast<int>(cur_.size()); }
  DiceWord word() const { return DiceWord(cur_); }
  std::size_t moves() const { return log_.moves.size(); }
  std::size_t step1() const { return step1_; }
  std::size_t step2() const { return step2_; }

  MovePath finish() {
    log_.end = word();
    return log_;
  }

  /// Leftmost 0-based index i in [from, to] with window (i, i+1) == BC.
  std::optional<int> find_bc(int from, int to) const {
    for (int i = std::max(from, 0); i <= to && i + 1 < size(); ++i) {
      if (window(i, Letter::B, Letter::C)) return i;
    }
    return std::nullopt;
  }

 private:
  std::vector<Letter> cur_;
  MovePath log_;
  std::size_t step1_ = 0;
  std::size_t step2_ = 0;
};

// One extra round after sigma2. The middle region [lo, hi] sits between the
// two A blocks. A B is brought to lo and a C to hi with count-preserving
// exchanges; then q Step2 moves carry that B left across the front A block
// and that C right across the back A block, each paired with one BC window
// inside the middle. Returns a description of the failure, if any.
std::optional<std::string> run_round(Schedule& s, int lo, int hi, int q) {
  const std::string where = "middle [" + std::to_string(lo + 1) + "," + std::to_string(hi + 1) + "]";
  if (s.at(lo) != Letter::B) {
    int j = lo;
    while (j <= hi && s.at(j) != Letter::B) ++j;
    if (j > hi) return "no B left in " + where;
    for (; j > lo; --j) {
      // s.at(j - 1) is C: letters in [lo, j) are not B.
      const auto bc = s.find_bc(j + 1, hi - 1);
      if (!bc) return "no BC window right of " + std::to_string(j + 1) + " in " + where;
      s.apply(RewriteMove::symm_exchange(j, *bc + 1));
    }
  }
  if (s.at(hi) != Letter::C) {
    int j = hi;
    while (j > lo && s.at(j) != Letter::C) --j;
    if (j == lo) return "no C left in " + where;
    for (; j < hi; ++j) {
      const auto bc = s.find_bc(lo + 1, j - 2);
      if (!bc) return "no BC window left of " + std::to_string(j + 1) + " in " + where;
      s.apply(RewriteMove::symm_exchange(*bc + 1, j + 1));
    }
  }
  for (int step = 0; step < q; ++step) {
    const int ab = lo - step - 1;   // window (ab, ab+1) reads AB
    const int ca = hi + step;       // window (ca, ca+1) reads CA
    const auto bc = s.find_bc(lo + 1, hi - 2);
    if (!bc) {
      return "no BC window for Step2 " + std::to_string(step + 1) + " of " + std::to_string(q) +
             " in " + where;
    }
    s.apply(RewriteMove::step2(ab + 1, *bc + 1, ca + 1));
  }
  return std::nullopt;
}

}  // namespace

OptimizerReport optimize_max_prob(int n) {
  OptimizerReport r;
  r.params = block_params(n);
  const auto [_, p, e, q] = r.params;
  r.unmixed_fair = stage_word(n, Stage::UnmixedFair);
  r.sigma1 = stage_word(n, Stage::Sigma1);
  r.sigma2 = stage_word(n, Stage::Sigma2);
  r.m_max = m_max(n);
  r.zero_round_feasible = round_inequality(n, 0) >= 0;
  r.target_excess = target_excess(n);

  Schedule s(r.unmixed_fair);

  // unmixed -> sigma1: the last p B's of the first B block cross the first C
  // block while the last p C's of the second C block cross the second B block.
  {
    const auto b_moves = cross_right(2 * q - 1, p, q);
    const auto c_moves = cross_right(4 * q - 1, p, q);
    for (std::size_t t = 0; t < b_moves.size(); ++t) {
      s.apply(RewriteMove::symm_exchange(b_moves[t] + 1, c_moves[t] + 1));
    }
  }
  r.sigma1_after_moves = s.moves();

  // sigma1 -> sigma2: p*q Step2 moves, one swap in each of three disjoint regions.
  {
    const int len = s.size();
    const auto ab = cross_left(q, p, q);                // first p B's go in front of A^q
    const auto bc = cross_right(q + 2 * p + e - 1, p, q);  // last p B's cross C^q
    const auto ca = cross_right(len - q - 1, p, q);      // C^p crosses the back A^q
    for (std::size_t t = 0; t < ab.size(); ++t) {
      s.apply(RewriteMove::step2(ab[t] + 1, bc[t] + 1, ca[t] + 1));
    }
  }
  r.sigma2_after_moves = s.moves();

  for (int round = 0; round < r.m_max; ++round) {
    const int front = p + round;
    const int lo = front + q;
    const int hi = s.size() - q - front - 1;
    if (auto fail = run_round(s, lo, hi, q)) {
      r.finding = "round " + std::to_string(round + 1) + " of " + std::to_string(r.m_max) +
                  " stalled: " + *fail;
      break;
    }
    ++r.rounds_completed;
  }

  r.final_word = s.word();
  r.step1_moves = s.step1();
  r.step2_moves = s.step2();
  r.move_log = s.finish();
  r.achieved_counts = pair_counts(r.final_word);
  const std::int64_t total = static_cast<std::int64_t>(n) * n;
  // Balanced by construction; the excess is read off N(A>B).
  r.achieved_excess = Probability(r.achieved_counts.ab, total) - Probability(1, 2);
  r.gap = r.target_excess - r.achieved_excess;
  return r;
}

bool numerator_increases_at(std::int64_t p, std::int64_t shift, std::int64_t lin,
                            std::int64_t cst) {
  (void)shift;  // cancels in f(p+1) - f(p)
  auto radicand = [&](std::int64_t x) { return 153 * x * x + lin * x + cst; };
  // f(p+1) > f(p)  <=>  X(p+1) - X(p) - 169 < 26 sqrt(X(p)).
  const Int128 u = static_cast<Int128>(radicand(p + 1)) - radicand(p) - 169;
  return sign_of(-u, 26, radicand(p)) > 0;
}

BoundReport bound_report(std::int64_t monotone_limit) {
  BoundReport r;
  const Probability one_ninth(1, 9);
  auto entry = [&](std::string name, Surd v, std::string note) {
    BoundEntry b;
    b.name = std::move(name);
    b.value = v;
    b.enclosure = enclose(v, r.enclosure_digits);
    b.below_one_ninth = compare(v, one_ninth) < 0;
    b.note = std::move(note);
    return b;
  };
  r.discriminant_6p = 13 * 13 - 4 * 4;
  r.radicand_erratum = r.discriminant_6p != r.printed_radicand_6p;

  r.excess.push_back(entry("limit_6p_printed", {15, -1, 24, 154},
                           "n=6p family constant as printed, radicand 154"));
  r.excess.push_back(entry("limit_6p_recomputed", {15, -1, 24, 153},
                           "n=6p family constant from the discriminant 169-16=153"));
  r.excess.push_back(entry("limit_6p2", {15, -1, 24, 153}, "1/12 + (13-sqrt153)/24, n=6p+2 family"));
  r.excess.push_back(entry("limit_6p4", {15, -1, 24, 153}, "1/12 + (13-sqrt153)/24, n=6p+4 family"));
  r.excess.push_back(entry("summary_form_without_1_12", {13, -1, 24, 153},
                           "(13-sqrt153)/24 lacks the 1/12 term; the limit is (15-sqrt153)/24"));

  r.root_coefficients.push_back(entry("root_6p_printed", {13, -1, 2, 154}, "m <= this * p, as printed"));
  r.root_coefficients.push_back(
      entry("root_6p_recomputed", {13, -1, 2, 153}, "smaller root of m^2 - 13pm + 4p^2, over p"));
  for (auto& b : r.root_coefficients) b.below_one_ninth = false;

  r.limit_below_1_over_9_12 = compare(Surd{15, -1, 24, 153}, Probability(100, 912)) < 0;

  r.monotonicity_checked_to = monotone_limit;
  r.numerator_6p2_increasing = true;
  r.numerator_6p4_increasing = true;
  for (std::int64_t p = 1; p < monotone_limit; ++p) {
    if (!numerator_increases_at(p, 4, 108, 20)) r.numerator_6p2_increasing = false;
    if (!numerator_increases_at(p, 8, 216, 80)) r.numerator_6p4_increasing = false;
  }
  return r;
}

}  // namespace ntdice
