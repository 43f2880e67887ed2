#include "ntdice/enumeration.hpp"

#include <atomic>
#include <mutex>
#include <thread>
#include <unordered_map>

#include "ntdice/errors.hpp"

namespace ntdice {

bool EnumFilter::matches(const PairCounts& c) const {
  // Integer form of classify(); this runs once per generated word.
  const std::int64_t total = c.total();
  if (balanced && !(c.ab == c.bc && c.bc == c.ca)) return false;
  if (nontransitive && !(2 * c.ab > total && 2 * c.bc > total && 2 * c.ca > total)) return false;
  if (fair && !(2 * c.ab == total && 2 * c.bc == total && 2 * c.ca == total)) return false;
  if (target_counts && (target_counts->ab != c.ab || target_counts->bc != c.bc ||
                        target_counts->ca != c.ca)) {
    return false;
  }
  return true;
}

std::uint64_t word_count(int n) {
  // Product of binomials C(3n, n) * C(2n, n), each built incrementally so
  // every intermediate stays integral.
  auto binom = [](std::uint64_t a, std::uint64_t b) {
    std::uint64_t r = 1;
    for (std::uint64_t i = 1; i <= b; ++i) r = r * (a - b + i) / i;
    return r;
  };
  const auto k = static_cast<std::uint64_t>(n);
  return binom(3 * k, k) * binom(2 * k, k);
}

namespace {

// Words are packed two bits per letter, first letter in the most significant
// position, so numeric order on equal-length words is lexicographic order.
DiceWord unpack(std::uint64_t packed, int len) {
  std::vector<Letter> letters(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    letters[static_cast<std::size_t>(i)] = static_cast<Letter>(packed & 3u);
    packed >>= 2;
  }
  return DiceWord(std::move(letters));
}

struct Accumulator {
  std::uint64_t total = 0;
  std::uint64_t balanced = 0;
  std::uint64_t balanced_nontransitive = 0;
  std::uint64_t fair = 0;
  std::int64_t best = -1;
  std::vector<std::uint64_t> witnesses;
  /// Indexed by the common count of a balanced word.
  std::vector<std::uint64_t> histogram;

  void merge(const Accumulator& o) {
    total += o.total;
    balanced += o.balanced;
    balanced_nontransitive += o.balanced_nontransitive;
    fair += o.fair;
    for (std::size_t i = 0; i < histogram.size(); ++i) histogram[i] += o.histogram[i];
    if (o.best > best) {
      best = o.best;
      witnesses = o.witnesses;
    } else if (o.best == best && best >= 0) {
      // Partitions merge in lexicographic order, so appending keeps the
      // smallest witnesses first.
      for (std::uint64_t w : o.witnesses) {
        if (witnesses.size() >= kWitnessCap) break;
        witnesses.push_back(w);
      }
    }
  }
};

struct ScanState {
  int remaining[3];
  std::int64_t seen[3];
  std::int64_t ab, bc, ca;
  std::uint64_t packed;
};

class Scanner {
 public:
  Scanner(int n, const EnumFilter& filter, const WordConsumer& consumer, std::mutex* lock)
      : n_(n), len_(3 * n), nn_(static_cast<std::int64_t>(n) * n), filter_(filter),
        consumer_(consumer), lock_(lock) {}

  void run(const ScanState& start, Accumulator& acc) {
    acc_ = &acc;
    descend(start);
  }

 private:
  void leaf(std::int64_t ab, std::int64_t bc, std::int64_t ca, std::uint64_t packed) {
    Accumulator& acc = *acc_;
    ++acc.total;
    if (ab == bc && bc == ca) {
      ++acc.balanced;
      ++acc.histogram[static_cast<std::size_t>(ab)];
      if (2 * ab > nn_) {
        ++acc.balanced_nontransitive;
        if (ab > acc.best) {
          acc.best = ab;
          acc.witnesses.assign(1, packed);
        } else if (ab == acc.best && acc.witnesses.size() < kWitnessCap) {
          acc.witnesses.push_back(packed);
        }
      } else if (2 * ab == nn_) {
        ++acc.fair;
      }
    }
    if (consumer_) {
      const PairCounts c{n_, ab, bc, ca};
      if (filter_.matches(c)) {
        const DiceWord w = unpack(packed, len_);
        if (lock_ != nullptr) {
          std::lock_guard<std::mutex> guard(*lock_);
          consumer_(w, c);
        } else {
          consumer_(w, c);
        }
      }
    }
  }

  void descend(const ScanState& s) {
    const int ra = s.remaining[0], rb = s.remaining[1], rc = s.remaining[2];
    // A single remaining letter kind completes the word in one step.
    if (rb == 0 && rc == 0) {
      std::uint64_t packed = s.packed;
      for (int i = 0; i < ra; ++i) packed = (packed << 2) | 0u;
      leaf(s.ab + ra * s.seen[1], s.bc, s.ca, packed);
      return;
    }
    if (ra == 0 && rc == 0) {
      std::uint64_t packed = s.packed;
      for (int i = 0; i < rb; ++i) packed = (packed << 2) | 1u;
      leaf(s.ab, s.bc + rb * s.seen[2], s.ca, packed);
      return;
    }
    if (ra == 0 && rb == 0) {
      std::uint64_t packed = s.packed;
      for (int i = 0; i < rc; ++i) packed = (packed << 2) | 2u;
      leaf(s.ab, s.bc, s.ca + rc * s.seen[0], packed);
      return;
    }
    if (ra > 0) {
      ScanState t = s;
      --t.remaining[0];
      t.ab += s.seen[1];
      ++t.seen[0];
      t.packed = (s.packed << 2) | 0u;
      descend(t);
    }
    if (rb > 0) {
      ScanState t = s;
      --t.remaining[1];
      t.bc += s.seen[2];
      ++t.seen[1];
      t.packed = (s.packed << 2) | 1u;
      descend(t);
    }
    if (rc > 0) {
      ScanState t = s;
      --t.remaining[2];
      t.ca += s.seen[0];
      ++t.seen[2];
      t.packed = (s.packed << 2) | 2u;
      descend(t);
    }
  }

  int n_;
  int len_;
  std::int64_t nn_;
  const EnumFilter& filter_;
  const WordConsumer& consumer_;
  std::mutex* lock_;
  Accumulator* acc_ = nullptr;
};

ScanState push(const ScanState& s, int letter) {
  ScanState t = s;
  --t.remaining[letter];
  switch (letter) {
    case 0: t.ab += s.seen[1]; break;
    case 1: t.bc += s.seen[2]; break;
    default: t.ca += s.seen[0]; break;
  }
  ++t.seen[letter];
  t.packed = (s.packed << 2) | static_cast<std::uint64_t>(letter);
  return t;
}

// All valid prefixes of the shortest length giving at least `want` partitions.
std::vector<ScanState> partitions(int n, std::size_t want) {
  std::vector<ScanState> level{ScanState{{n, n, n}, {0, 0, 0}, 0, 0, 0, 0}};
  for (int depth = 0; depth < 3 * n && level.size() < want; ++depth) {
    std::vector<ScanState> next;
    for (const ScanState& s : level) {
      for (int letter = 0; letter < 3; ++letter) {
        if (s.remaining[letter] > 0) next.push_back(push(s, letter));
      }
    }
    level = std::move(next);
  }
  return level;
}

void check_range(int n, int lo, const EnumOptions& options) {
  if (n < lo || n > kMaxEnumerationSides) {
    throw DomainError("exhaustive scan supports " + std::to_string(lo) + " <= n <= " +
                      std::to_string(kMaxEnumerationSides) + ", got " + std::to_string(n));
  }
  if (n == kMaxEnumerationSides && !options.long_run) {
    throw DomainError("n = 7 scans 399,072,960 words; pass the long-run flag to proceed");
  }
}

}  // namespace

EnumStats enumerate(int n, const EnumFilter& filter, const WordConsumer& consumer,
                    const EnumOptions& options) {
  check_range(n, 1, options);
  const unsigned workers = std::max(1u, options.workers);
  const auto parts = partitions(n, 64u * workers);
  const std::size_t hist_size = static_cast<std::size_t>(n) * n + 1;

  std::vector<Accumulator> accs(parts.size());
  for (auto& a : accs) a.histogram.assign(hist_size, 0);

  std::mutex consumer_lock;
  std::mutex* lock = options.serialize_consumer ? &consumer_lock : nullptr;
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    Scanner scanner(n, filter, consumer, lock);
    for (std::size_t i = next.fetch_add(1); i < parts.size(); i = next.fetch_add(1)) {
      scanner.run(parts[i], accs[i]);
    }
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
  }

  Accumulator total;
  total.histogram.assign(hist_size, 0);
  for (const auto& a : accs) total.merge(a);

  EnumStats stats;
  stats.n = n;
  const std::int64_t nn = static_cast<std::int64_t>(n) * n;
  stats.total_words = total.total;
  stats.count_balanced = total.balanced;
  stats.count_balanced_nontransitive = total.balanced_nontransitive;
  stats.count_fair = total.fair;
  if (total.best >= 0) {
    stats.max_prob = Probability(total.best, nn);
    for (std::uint64_t w : total.witnesses) stats.witnesses.push_back(unpack(w, 3 * n));
  }
  for (std::size_t c = 0; c < total.histogram.size(); ++c) {
    if (total.histogram[c] != 0) {
      stats.histogram[Probability(static_cast<std::int64_t>(c), nn)] = total.histogram[c];
    }
  }
  return stats;
}

MaxProbability max_probability(int n, const EnumOptions& options) {
  check_range(n, 2, options);
  EnumStats stats = enumerate(n, {}, {}, options);
  return {stats.max_prob, std::move(stats.witnesses)};
}

bool is_block_product(std::string_view word) {
  if (word.empty() || word.size() % 6 != 0) return false;
  for (std::size_t b = 0; b < word.size(); b += 6) {
    const char x = word[b], y = word[b + 1], z = word[b + 2];
    if (x == y || y == z || x == z) return false;
    if (word[b + 3] != z || word[b + 4] != y || word[b + 5] != x) return false;
  }
  return true;
}

bool is_uniform_block_product(std::string_view word) {
  if (!is_block_product(word)) return false;
  for (std::size_t b = 6; b < word.size(); b += 6) {
    if (word.compare(b, 6, word, 0, 6) != 0) return false;
  }
  return true;
}

namespace {

constexpr std::size_t kCounterexampleCap = 10;

// Resolves every fair word against one target predicate. A finished search
// settles the start word's whole similarity class: the graph is undirected,
// so everything visited shares the start's verdict.
void resolve_all(const std::vector<DiceWord>& words,
                 const std::function<bool(const std::string&)>& is_target, std::size_t budget,
                 ReachabilityTally& tally) {
  std::unordered_map<std::string, SearchStatus> known;
  for (const DiceWord& w : words) {
    const std::string key = w.str();
    auto it = known.find(key);
    SearchStatus status;
    if (it != known.end()) {
      status = it->second;
    } else {
      SearchOutcome out = search_similar(w, is_target, budget, /*keep_visited=*/true);
      status = out.status;
      if (status == SearchStatus::BudgetExceeded) {
        known.emplace(key, status);
      } else {
        for (auto& v : out.visited) known.emplace(std::move(v), status);
      }
    }
    switch (status) {
      case SearchStatus::Found: ++tally.reachable; break;
      case SearchStatus::NotReachable:
        ++tally.not_reachable;
        if (tally.counterexamples.size() < kCounterexampleCap) tally.counterexamples.push_back(w);
        break;
      case SearchStatus::BudgetExceeded: ++tally.unresolved; break;
    }
  }
}

}  // namespace

FairConjectureReport verify_fair_conjecture(int n, std::size_t bfs_budget,
                                            const EnumOptions& options) {
  check_range(n, 1, options);
  FairConjectureReport report;
  report.n = n;

  std::vector<DiceWord> fair_words;
  EnumFilter filter;
  filter.fair = true;
  enumerate(n, filter, [&](const DiceWord& w, const PairCounts&) { fair_words.push_back(w); },
            options);
  std::sort(fair_words.begin(), fair_words.end());
  report.fair_words_found = fair_words.size();
  report.parity_ok = n % 2 == 0 || fair_words.empty();

  constexpr int kSimilarityMaxSides = 4;
  if (n <= kSimilarityMaxSides) {
    report.similarity_checked = true;
    resolve_all(fair_words, [](const std::string& s) { return is_uniform_block_product(s); },
                bfs_budget, report.same_perm);
    resolve_all(fair_words, [](const std::string& s) { return is_block_product(s); }, bfs_budget,
                report.mixed_perm);
  }
  return report;
}

}  // namespace ntdice
