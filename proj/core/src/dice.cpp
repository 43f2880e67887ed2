#include "ntdice/dice.hpp"

#include <algorithm>
#include <charconv>
#include <sstream>

#include "ntdice/errors.hpp"

namespace ntdice {

std::string to_string(const Probability& p) {
  if (p.denominator() == 1) return std::to_string(p.numerator());
  return std::to_string(p.numerator()) + "/" + std::to_string(p.denominator());
}

Probability parse_probability(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::int64_t v = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
      throw FormatError("bad rational: \"" + std::string(text) + "\"");
    }
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return Probability(parse_int(text));
  const std::int64_t den = parse_int(text.substr(slash + 1));
  if (den <= 0) throw FormatError("bad rational: \"" + std::string(text) + "\"");
  return Probability(parse_int(text.substr(0, slash)), den);
}

DiceWord::DiceWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
  for (Letter l : letters_) ++counts_[index_of(l)];
}

std::string DiceWord::str() const {
  std::string s;
  s.reserve(letters_.size());
  for (Letter l : letters_) s.push_back(to_char(l));
  return s;
}

DiceWord DiceWord::operator+(const DiceWord& rhs) const {
  std::vector<Letter> out = letters_;
  out.insert(out.end(), rhs.letters_.begin(), rhs.letters_.end());
  return DiceWord(std::move(out));
}

DiceWord DiceWord::repeated(int times) const {
  std::vector<Letter> out;
  out.reserve(letters_.size() * static_cast<std::size_t>(std::max(times, 0)));
  for (int i = 0; i < times; ++i) out.insert(out.end(), letters_.begin(), letters_.end());
  return DiceWord(std::move(out));
}

const std::set<int>& DiceSet::die(Letter l) const noexcept {
  switch (l) {
    case Letter::A: return a;
    case Letter::B: return b;
    case Letter::C: break;
  }
  return c;
}

DiceWord parse_word(std::string_view text) {
  std::vector<Letter> letters;
  letters.reserve(text.size());
  for (std::size_t i = 0; i < text.size(); ++i) {
    switch (text[i]) {
      case 'A': letters.push_back(Letter::A); break;
      case 'B': letters.push_back(Letter::B); break;
      case 'C': letters.push_back(Letter::C); break;
      default: {
        std::ostringstream msg;
        msg << "illegal character '" << text[i] << "' at position " << (i + 1);
        throw FormatError(msg.str());
      }
    }
  }
  return DiceWord(std::move(letters));
}

void require_complete(const DiceWord& w) {
  if (w.is_complete()) return;
  std::ostringstream msg;
  msg << "incomplete word: counts " << w.count(Letter::A) << ',' << w.count(Letter::B) << ','
      << w.count(Letter::C);
  throw DomainError(msg.str());
}

void validate(const DiceSet& d) {
  if (d.n <= 0) throw ValidationError("dice set needs n >= 1, got " + std::to_string(d.n));
  const int labels = 3 * d.n;
  std::vector<char> owner(static_cast<std::size_t>(labels) + 1, 0);
  for (Letter l : kLetters) {
    const auto& die = d.die(l);
    if (static_cast<int>(die.size()) != d.n) {
      throw ValidationError("die " + std::string(1, to_char(l)) + " has " +
                            std::to_string(die.size()) + " labels, expected " +
                            std::to_string(d.n));
    }
    for (int label : die) {
      if (label < 1 || label > labels) {
        throw ValidationError("label " + std::to_string(label) + " on die " +
                              std::string(1, to_char(l)) + " is outside 1.." +
                              std::to_string(labels));
      }
      if (owner[label] != 0) {
        throw ValidationError("label " + std::to_string(label) + " appears on both die " +
                              std::string(1, owner[label]) + " and die " +
                              std::string(1, to_char(l)));
      }
      owner[label] = to_char(l);
    }
  }
}

DiceWord word_from_dice(const DiceSet& d) {
  validate(d);
  std::vector<Letter> letters(static_cast<std::size_t>(3 * d.n));
  for (Letter l : kLetters) {
    for (int label : d.die(l)) letters[label - 1] = l;
  }
  return DiceWord(std::move(letters));
}

DiceSet dice_from_word(const DiceWord& w) {
  require_complete(w);
  DiceSet d;
  d.n = w.sides();
  for (std::size_t i = 0; i < w.size(); ++i) {
    const int label = static_cast<int>(i) + 1;
    switch (w[i]) {
      case Letter::A: d.a.insert(label); break;
      case Letter::B: d.b.insert(label); break;
      case Letter::C: d.c.insert(label); break;
    }
  }
  return d;
}

PairCounts pair_counts(const DiceWord& w) {
  require_complete(w);
  PairCounts out;
  out.n = w.sides();
  std::int64_t seen_a = 0, seen_b = 0, seen_c = 0;
  for (Letter l : w.letters()) {
    switch (l) {
      case Letter::A:
        out.ab += seen_b;
        ++seen_a;
        break;
      case Letter::B:
        out.bc += seen_c;
        ++seen_b;
        break;
      case Letter::C:
        out.ca += seen_a;
        ++seen_c;
        break;
    }
  }
  return out;
}

Verdict classify(const PairCounts& c) {
  Verdict v;
  v.counts = c;
  const std::int64_t total = c.total();
  if (total == 0) {
    // Empty word: no rolls to compare.
    v.p_ab = v.p_bc = v.p_ca = Probability(0);
    return v;
  }
  v.p_ab = Probability(c.ab, total);
  v.p_bc = Probability(c.bc, total);
  v.p_ca = Probability(c.ca, total);
  v.balanced = c.ab == c.bc && c.bc == c.ca;
  v.nontransitive = 2 * c.ab > total && 2 * c.bc > total && 2 * c.ca > total;
  v.fair = 2 * c.ab == total && 2 * c.bc == total && 2 * c.ca == total;
  return v;
}

Verdict classify(const DiceWord& w) { return classify(pair_counts(w)); }

}  // namespace ntdice
