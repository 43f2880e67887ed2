#include "ntdice/serialization.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "ntdice/errors.hpp"

namespace ntdice {
namespace {

using Json = nlohmann::ordered_json;

Json parse(std::string_view text, std::string_view what) {
  try {
    return Json::parse(text.begin(), text.end());
  } catch (const Json::parse_error& e) {
    throw FormatError(std::string(what) + ": " + e.what());
  }
}

// Wraps field access so missing keys and wrong types surface as FormatError.
template <typename T>
T field(const Json& j, const char* key, std::string_view what) {
  try {
    return j.at(key).get<T>();
  } catch (const Json::exception& e) {
    throw FormatError(std::string(what) + ": field \"" + key + "\": " + e.what());
  }
}

Json rational(const Probability& p) { return to_string(p); }

Json optional_rational(const std::optional<Probability>& p) {
  return p ? rational(*p) : Json(nullptr);
}

Json counts_array(const PairCounts& c) { return Json::array({c.ab, c.bc, c.ca}); }

Json surd_json(const Surd& s) { return Json{{"a", s.a}, {"b", s.b}, {"c", s.c}, {"d", s.d}}; }

Json bound_entry(const BoundEntry& e, int digits) {
  return Json{{"name", e.name},
              {"value", surd_json(e.value)},
              {"enclosure",
               {{"lo", rational(e.enclosure.lo)},
                {"hi", rational(e.enclosure.hi)},
                {"lo_decimal", to_decimal(e.enclosure.lo, digits, false)},
                {"hi_decimal", to_decimal(e.enclosure.hi, digits, true)}}},
              {"below_one_ninth", e.below_one_ninth},
              {"note", e.note}};
}

Json dice_word_list(const std::vector<DiceWord>& words) {
  Json out = Json::array();
  for (const auto& w : words) out.push_back(w.str());
  return out;
}

}  // namespace

std::string dice_set_to_json(const DiceSet& d) {
  Json j{{"n", d.n},
         {"A", Json(std::vector<int>(d.a.begin(), d.a.end()))},
         {"B", Json(std::vector<int>(d.b.begin(), d.b.end()))},
         {"C", Json(std::vector<int>(d.c.begin(), d.c.end()))}};
  return j.dump();
}

DiceSet dice_set_from_json(std::string_view text) {
  constexpr std::string_view what = "dice set";
  const Json j = parse(text, what);
  DiceSet d;
  d.n = field<int>(j, "n", what);
  auto labels = [&](const char* key) {
    const auto v = field<std::vector<int>>(j, key, what);
    std::set<int> s(v.begin(), v.end());
    if (s.size() != v.size()) {
      throw ValidationError(std::string("die ") + key + " lists a label twice");
    }
    return s;
  };
  d.a = labels("A");
  d.b = labels("B");
  d.c = labels("C");
  validate(d);
  return d;
}

std::string verdict_to_json(const Verdict& v) {
  Json j{{"n", v.counts.n}, {"counts", counts_array(v.counts)}};
  j["p"] = v.balanced ? rational(v.p_ab) : Json(nullptr);
  if (!v.balanced) {
    j["p_pairs"] = Json{{"ab", rational(v.p_ab)}, {"bc", rational(v.p_bc)}, {"ca", rational(v.p_ca)}};
  }
  j["balanced"] = v.balanced;
  j["nontransitive"] = v.nontransitive;
  j["fair"] = v.fair;
  return j.dump();
}

std::string move_path_to_json(const MovePath& path) {
  Json moves = Json::array();
  for (const auto& m : path.moves) {
    moves.push_back(
        Json{{"kind", std::string(to_string(m.kind))}, {"i", m.i}, {"j", m.j}, {"k", m.k}});
  }
  return Json{{"start", path.start.str()}, {"moves", std::move(moves)}, {"end", path.end.str()}}
      .dump();
}

MovePath move_path_from_json(std::string_view text) {
  constexpr std::string_view what = "move path";
  const Json j = parse(text, what);
  MovePath path;
  path.start = parse_word(field<std::string>(j, "start", what));
  path.end = parse_word(field<std::string>(j, "end", what));
  const Json moves = field<Json>(j, "moves", what);
  if (!moves.is_array()) throw FormatError("move path: \"moves\" must be an array");
  for (const auto& m : moves) {
    RewriteMove mv;
    mv.kind = parse_move_kind(field<std::string>(m, "kind", what));
    mv.i = field<int>(m, "i", what);
    mv.j = field<int>(m, "j", what);
    mv.k = field<int>(m, "k", what);
    path.moves.push_back(mv);
  }
  if (!path.start.empty() && path.start.count(Letter::C) == 0) {
    verify_two_letter_path(path);
  } else {
    verify_path(path);
  }
  return path;
}

std::string stats_to_json(const EnumStats& s) {
  Json hist = Json::array();
  for (const auto& [p, count] : s.histogram) hist.push_back(Json{{"p", rational(p)}, {"count", count}});
  Json j{{"format_version", kStatsFormatVersion},
         {"n", s.n},
         {"total_words", s.total_words},
         {"count_balanced", s.count_balanced},
         {"count_balanced_nontransitive", s.count_balanced_nontransitive},
         {"count_fair", s.count_fair},
         {"max_prob", optional_rational(s.max_prob)},
         {"witnesses", dice_word_list(s.witnesses)},
         {"histogram", std::move(hist)}};
  return j.dump();
}

EnumStats stats_from_json(std::string_view text) {
  constexpr std::string_view what = "stats file";
  const Json j = parse(text, what);
  const int version = field<int>(j, "format_version", what);
  if (version != kStatsFormatVersion) {
    throw FormatError("stats file: format_version " + std::to_string(version) + ", expected " +
                      std::to_string(kStatsFormatVersion));
  }
  EnumStats s;
  s.n = field<int>(j, "n", what);
  s.total_words = field<std::uint64_t>(j, "total_words", what);
  s.count_balanced = field<std::uint64_t>(j, "count_balanced", what);
  s.count_balanced_nontransitive = field<std::uint64_t>(j, "count_balanced_nontransitive", what);
  s.count_fair = field<std::uint64_t>(j, "count_fair", what);
  const Json max_prob = field<Json>(j, "max_prob", what);
  if (!max_prob.is_null()) s.max_prob = parse_probability(field<std::string>(j, "max_prob", what));
  for (const auto& w : field<std::vector<std::string>>(j, "witnesses", what)) {
    s.witnesses.push_back(parse_word(w));
  }
  const Json hist = field<Json>(j, "histogram", what);
  if (!hist.is_array()) throw FormatError("stats file: \"histogram\" must be an array");
  for (const auto& entry : hist) {
    s.histogram[parse_probability(field<std::string>(entry, "p", what))] =
        field<std::uint64_t>(entry, "count", what);
  }

  if (s.n < 1) throw FormatError("stats file: n must be positive");
  if (s.total_words != word_count(s.n)) {
    throw IntegrityError("stats file: total_words does not match n = " + std::to_string(s.n));
  }
  for (const auto& w : s.witnesses) {
    const bool ok = static_cast<int>(w.size()) == 3 * s.n && w.is_complete() && [&] {
      const Verdict v = classify(w);
      return v.balanced && v.nontransitive && s.max_prob && v.p_ab == *s.max_prob;
    }();
    if (!ok) throw IntegrityError("stats file: witness " + w.str() + " does not re-verify");
  }
  if (!s.witnesses.empty() == !s.max_prob) {
    throw IntegrityError("stats file: max_prob and witnesses disagree");
  }
  return s;
}

void cache_stats(const EnumStats& stats, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << stats_to_json(stats) << '\n';
  if (!out) throw IoError("write failed: " + path.string());
}

EnumStats load_stats(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return stats_from_json(buf.str());
}

std::string optimizer_report_to_json(const OptimizerReport& r, bool include_moves) {
  const Probability half(1, 2);
  const Probability ninth(1, 9);
  Json j{{"n", r.params.n},
         {"p", r.params.p},
         {"e", r.params.e},
         {"q", r.params.q},
         {"m_max", r.m_max},
         {"zero_round_feasible", r.zero_round_feasible},
         {"rounds_completed", r.rounds_completed},
         {"target_excess", rational(r.target_excess)},
         {"achieved_counts", counts_array(r.achieved_counts)},
         {"achieved_p", rational(r.achieved_excess + half)},
         {"achieved_excess", rational(r.achieved_excess)},
         {"achieved_excess_decimal", to_decimal(r.achieved_excess, 12, false)},
         {"gap", rational(r.gap)},
         {"below_one_ninth", compare(r.achieved_excess, ninth) < 0},
         {"stages",
          {{"unmixed_fair", r.unmixed_fair.str()},
           {"sigma1", r.sigma1.str()},
           {"sigma2", r.sigma2.str()},
           {"final", r.final_word.str()}}},
         {"moves",
          {{"total", r.move_log.moves.size()},
           {"step1", r.step1_moves},
           {"step2", r.step2_moves},
           {"sigma1_after", r.sigma1_after_moves},
           {"sigma2_after", r.sigma2_after_moves}}},
         {"finding", r.finding ? Json(*r.finding) : Json(nullptr)}};
  if (include_moves) j["move_log"] = Json::parse(move_path_to_json(r.move_log));
  return j.dump();
}

std::string bound_report_to_json(const BoundReport& r) {
  Json excess = Json::array();
  for (const auto& e : r.excess) excess.push_back(bound_entry(e, r.enclosure_digits));
  Json roots = Json::array();
  for (const auto& e : r.root_coefficients) {
    Json entry = bound_entry(e, r.enclosure_digits);
    entry.erase("below_one_ninth");
    roots.push_back(std::move(entry));
  }
  Json j{{"enclosure_digits", r.enclosure_digits},
         {"excess", std::move(excess)},
         {"root_coefficients", std::move(roots)},
         {"discriminant_6p", r.discriminant_6p},
         {"printed_radicand_6p", r.printed_radicand_6p},
         {"radicand_erratum", r.radicand_erratum},
         {"limit_below_1_over_9_12", r.limit_below_1_over_9_12},
         {"monotonicity",
          {{"checked_to", r.monotonicity_checked_to},
           {"numerator_6p2_increasing", r.numerator_6p2_increasing},
           {"numerator_6p4_increasing", r.numerator_6p4_increasing}}}};
  return j.dump();
}

}  // namespace ntdice
