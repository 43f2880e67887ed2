#include "ntdice/word_algebra.hpp"

#include <array>
#include <vector>

#include "ntdice/errors.hpp"

namespace ntdice {

DiceWord concat(const DiceWord& w1, const DiceWord& w2) {
  require_complete(w1);
  require_complete(w2);
  return w1 + w2;
}

ConcatPrediction predict_counts(const PairCounts& c1, const PairCounts& c2) {
  ConcatPrediction out;
  out.m = c1.n;
  out.n = c2.n;
  const std::int64_t cross = static_cast<std::int64_t>(c1.n) * c2.n;
  out.predicted.n = c1.n + c2.n;
  out.predicted.ab = c1.ab + c2.ab + cross;
  out.predicted.bc = c1.bc + c2.bc + cross;
  out.predicted.ca = c1.ca + c2.ca + cross;
  return out;
}

Probability combined_probability(int m, std::int64_t n_ab, int n, std::int64_t t_ab) {
  const std::int64_t mm = static_cast<std::int64_t>(m) * m;
  const std::int64_t nn = static_cast<std::int64_t>(n) * n;
  const std::int64_t side = static_cast<std::int64_t>(m) + n;
  if (side == 0) return Probability(1, 2);
  // Excess form: 1/2 + ((n_ab - m^2/2) + (t_ab - n^2/2)) / (m+n)^2.
  const Probability excess = (Probability(n_ab) - Probability(mm, 2)) +
                             (Probability(t_ab) - Probability(nn, 2));
  return Probability(1, 2) + excess / (side * side);
}

IrreducibilityReport is_irreducible(const DiceWord& w) {
  const Verdict whole = classify(w);
  if (!whole.balanced || !whole.nontransitive) {
    throw DomainError("irreducibility is only defined for balanced non-transitive words: " +
                      w.str());
  }
  // Prefix pair counts are built with the same running tallies as pair_counts,
  // so every candidate split costs O(1) after one pass.
  const std::size_t len = w.size();
  std::array<std::int64_t, 3> seen{0, 0, 0};
  PairCounts prefix;
  std::vector<PairCounts> at_split;
  std::vector<std::size_t> split_len;
  for (std::size_t i = 0; i + 1 < len; ++i) {
    switch (w[i]) {
      case Letter::A: prefix.ab += seen[1]; break;
      case Letter::B: prefix.bc += seen[2]; break;
      case Letter::C: prefix.ca += seen[0]; break;
    }
    ++seen[index_of(w[i])];
    if (seen[0] == seen[1] && seen[1] == seen[2]) {
      prefix.n = static_cast<int>(seen[0]);
      at_split.push_back(prefix);
      split_len.push_back(i + 1);
    }
  }

  IrreducibilityReport report;
  for (std::size_t k = 0; k < at_split.size(); ++k) {
    const Verdict left = classify(at_split[k]);
    if (!left.balanced || !left.nontransitive) continue;
    // Suffix counts follow from the concatenation law.
    const std::int64_t cross = static_cast<std::int64_t>(at_split[k].n) * (whole.counts.n - at_split[k].n);
    PairCounts right;
    right.n = whole.counts.n - at_split[k].n;
    right.ab = whole.counts.ab - at_split[k].ab - cross;
    right.bc = whole.counts.bc - at_split[k].bc - cross;
    right.ca = whole.counts.ca - at_split[k].ca - cross;
    const Verdict rv = classify(right);
    if (rv.balanced && rv.nontransitive) {
      report.irreducible = false;
      report.witness_split = split_len[k];
      return report;
    }
  }
  return report;
}

}  // namespace ntdice
