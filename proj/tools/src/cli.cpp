#include "ntdice_cli/cli.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "ntdice/constructions.hpp"
#include "ntdice/enumeration.hpp"
#include "ntdice/errors.hpp"
#include "ntdice/rewriting.hpp"
#include "ntdice/serialization.hpp"
#include "ntdice/word_algebra.hpp"

namespace ntdice::cli {
namespace {

using Json = nlohmann::ordered_json;

const std::vector<CommandInfo>& commands() {
  static const std::vector<CommandInfo> table{
      {"analyze", "classify", {"parse_word", "pair_counts", "find_step2_sites"}},
      {"dice2word", "word_from_dice", {}},
      {"word2dice", "dice_from_word", {}},
      {"concat", "concat", {"predict_counts", "combined_probability"}},
      {"irreducible", "is_irreducible", {}},
      {"construct", "construct_irreducible", {}},
      {"near-half", "construct_near_half", {}},
      {"optimize", "optimize_max_prob", {"stage_word", "m_max", "apply_move"}},
      {"bounds", "bound_report", {}},
      {"enumerate", "enumerate", {"cache_stats", "load_stats"}},
      {"scan-max", "max_probability", {}},
      {"verify-fair", "verify_fair_conjecture", {}},
      {"similar", "similar", {}},
      {"normalize2", "normalize_two_letter_fair", {}},
  };
  return table;
}

struct Args {
  std::vector<std::string> words;
  std::string dice;
  int n = 0;
  int m = 0;
  bool json = false;
  std::string out_path;
  std::size_t budget = kDefaultSearchBudget;
  unsigned workers = 1;
  bool long_run = false;
  std::vector<std::string> filter;
  bool list = false;
  bool sites = false;
  std::int64_t limit = 1'000'000;
};

void row(std::ostream& out, std::string_view label, const std::string& value) {
  out << std::left << std::setw(22) << label << value << '\n';
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }

Json counts_json(const PairCounts& c) { return Json::array({c.ab, c.bc, c.ca}); }

Json move_json(const RewriteMove& m) {
  return Json{{"kind", std::string(to_string(m.kind))}, {"i", m.i}, {"j", m.j}, {"k", m.k}};
}

Json words_json(const std::vector<DiceWord>& words) {
  Json a = Json::array();
  for (const auto& w : words) a.push_back(w.str());
  return a;
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot write " + path);
  f << text << '\n';
  if (!f) throw IoError("write failed: " + path);
}

std::string read_source(const std::string& spec) {
  if (!spec.empty() && spec.front() == '{') return spec;
  std::ifstream f(spec, std::ios::binary);
  if (!f) throw IoError("cannot read " + spec);
  std::ostringstream buf;
  buf << f.rdbuf();
  return buf.str();
}

EnumOptions enum_options(const Args& a) {
  EnumOptions o;
  o.workers = a.workers;
  o.long_run = a.long_run;
  return o;
}

void print_counts(std::ostream& out, const PairCounts& c) {
  const Verdict v = classify(c);
  row(out, "N(A>B)", std::to_string(c.ab) + "  P = " + to_string(v.p_ab));
  row(out, "N(B>C)", std::to_string(c.bc) + "  P = " + to_string(v.p_bc));
  row(out, "N(C>A)", std::to_string(c.ca) + "  P = " + to_string(v.p_ca));
}

void cmd_analyze(const Args& a, std::ostream& out) {
  const DiceWord w = parse_word(a.words.at(0));
  if (a.sites) {
    require_complete(w);
    const auto sites = find_step2_sites(w);
    if (a.json) {
      Json s = Json::array();
      for (const auto& m : sites) s.push_back(move_json(m));
      out << Json{{"word", w.str()}, {"sites", std::move(s)}}.dump() << '\n';
    } else {
      row(out, "word", w.str());
      row(out, "step2 sites", std::to_string(sites.size()));
      for (const auto& m : sites) out << "  " << describe(m) << '\n';
    }
    return;
  }
  const Verdict v = classify(w);
  if (a.json) {
    out << verdict_to_json(v) << '\n';
    return;
  }
  row(out, "word", w.str());
  row(out, "sides", std::to_string(v.counts.n));
  print_counts(out, v.counts);
  row(out, "balanced", yes_no(v.balanced));
  row(out, "non-transitive", yes_no(v.nontransitive));
  row(out, "fair", yes_no(v.fair));
}

void cmd_dice2word(const Args& a, std::ostream& out) {
  const DiceWord w = word_from_dice(dice_set_from_json(read_source(a.dice)));
  if (a.json) {
    out << Json{{"n", w.sides()}, {"word", w.str()}}.dump() << '\n';
  } else {
    out << w.str() << '\n';
  }
}

void cmd_word2dice(const Args& a, std::ostream& out) {
  const DiceSet d = dice_from_word(parse_word(a.words.at(0)));
  if (a.json) {
    out << dice_set_to_json(d) << '\n';
    return;
  }
  for (Letter l : kLetters) {
    std::string labels;
    for (int x : d.die(l)) labels += (labels.empty() ? "" : " ") + std::to_string(x);
    row(out, std::string(1, to_char(l)), labels);
  }
}

void cmd_concat(const Args& a, std::ostream& out) {
  const DiceWord w1 = parse_word(a.words.at(0));
  const DiceWord w2 = parse_word(a.words.at(1));
  const DiceWord joined = concat(w1, w2);
  const PairCounts c1 = pair_counts(w1);
  const PairCounts c2 = pair_counts(w2);
  const PairCounts actual = pair_counts(joined);
  const ConcatPrediction pred = predict_counts(c1, c2);
  const Probability p_ab = combined_probability(c1.n, c1.ab, c2.n, c2.ab);
  const bool holds = pred.predicted == actual;
  if (a.json) {
    out << Json{{"word", joined.str()},
                {"m", pred.m},
                {"n", pred.n},
                {"counts", counts_json(actual)},
                {"predicted", counts_json(pred.predicted)},
                {"law_holds", holds},
                {"p_ab", to_string(p_ab)}}
               .dump()
        << '\n';
    return;
  }
  row(out, "word", joined.str());
  row(out, "sides", std::to_string(pred.m) + " + " + std::to_string(pred.n));
  print_counts(out, actual);
  row(out, "predicted", std::to_string(pred.predicted.ab) + ", " + std::to_string(pred.predicted.bc) +
                            ", " + std::to_string(pred.predicted.ca));
  row(out, "law holds", yes_no(holds));
  row(out, "P(A>B) from factors", to_string(p_ab));
}

void cmd_irreducible(const Args& a, std::ostream& out) {
  const DiceWord w = parse_word(a.words.at(0));
  const IrreducibilityReport r = is_irreducible(w);
  Json factors = nullptr;
  if (r.witness_split) {
    const std::string s = w.str();
    factors = Json::array({s.substr(0, *r.witness_split), s.substr(*r.witness_split)});
  }
  if (a.json) {
    out << Json{{"word", w.str()},
                {"irreducible", r.irreducible},
                {"witness_split", r.witness_split ? Json(*r.witness_split) : Json(nullptr)},
                {"factors", factors}}
               .dump()
        << '\n';
    return;
  }
  row(out, "word", w.str());
  row(out, "irreducible", yes_no(r.irreducible));
  if (r.witness_split) {
    row(out, "split", factors[0].get<std::string>() + " | " + factors[1].get<std::string>());
  }
}

void cmd_construct(const Args& a, std::ostream& out) {
  const DiceWord w = construct_irreducible(a.n);
  const Verdict v = classify(w);
  const bool irreducible = is_irreducible(w).irreducible;
  if (a.json) {
    out << Json{{"n", a.n},
                {"word", w.str()},
                {"counts", counts_json(v.counts)},
                {"p", to_string(v.p_ab)},
                {"irreducible", irreducible}}
               .dump()
        << '\n';
    return;
  }
  row(out, "word", w.str());
  row(out, "sides", std::to_string(a.n));
  print_counts(out, v.counts);
  row(out, "irreducible", yes_no(irreducible));
}

void cmd_near_half(const Args& a, std::ostream& out) {
  const DiceWord w = construct_near_half(a.m);
  const Verdict v = classify(w);
  const Probability excess = v.p_ab - Probability(1, 2);
  if (a.json) {
    out << Json{{"m", a.m},
                {"n", v.counts.n},
                {"word", w.str()},
                {"counts", counts_json(v.counts)},
                {"p", to_string(v.p_ab)},
                {"excess", to_string(excess)},
                {"excess_decimal", to_decimal(excess, 12, false)}}
               .dump()
        << '\n';
    return;
  }
  row(out, "word", w.str());
  row(out, "sides", std::to_string(v.counts.n));
  print_counts(out, v.counts);
  row(out, "excess", to_string(excess) + "  (~" + to_decimal(excess, 12, false) + ")");
}

void cmd_optimize(const Args& a, std::ostream& out) {
  const OptimizerReport r = optimize_max_prob(a.n);
  // Replay the log one move at a time before reporting anything.
  DiceWord w = r.move_log.start;
  for (const auto& mv : r.move_log.moves) w = apply_move(w, mv);
  if (!(w == r.final_word)) throw IntegrityError("optimizer move log does not replay");
  if (!a.out_path.empty()) write_file(a.out_path, move_path_to_json(r.move_log));
  if (a.json) {
    out << optimizer_report_to_json(r) << '\n';
    return;
  }
  row(out, "sides", std::to_string(r.params.n) + "  (p = " + std::to_string(r.params.p) +
                        ", e = " + std::to_string(r.params.e) + ")");
  row(out, "unmixed fair", r.unmixed_fair.str());
  row(out, "sigma1", r.sigma1.str());
  row(out, "sigma2", r.sigma2.str());
  row(out, "final", r.final_word.str());
  row(out, "m_max", std::to_string(r.m_max) + (r.zero_round_feasible ? "" : "  (inequality fails at m = 0)"));
  row(out, "rounds", std::to_string(r.rounds_completed));
  row(out, "moves", std::to_string(r.move_log.moves.size()) + "  (step1 " +
                        std::to_string(r.step1_moves) + ", step2 " + std::to_string(r.step2_moves) + ")");
  row(out, "target excess", to_string(r.target_excess));
  row(out, "achieved excess", to_string(r.achieved_excess) + "  (~" +
                                  to_decimal(r.achieved_excess, 12, false) + ")");
  row(out, "gap", to_string(r.gap));
  if (r.finding) row(out, "finding", *r.finding);
}

void cmd_bounds(const Args& a, std::ostream& out) {
  if (a.limit < 1) throw DomainError("monotonicity limit must be positive");
  const BoundReport r = bound_report(a.limit);
  if (a.json) {
    out << bound_report_to_json(r) << '\n';
    return;
  }
  auto entry = [&](const BoundEntry& e, bool verdict) {
    std::string value = to_string(e.value) + "  in [" +
                        to_decimal(e.enclosure.lo, r.enclosure_digits, false) + ", " +
                        to_decimal(e.enclosure.hi, r.enclosure_digits, true) + "]";
    if (verdict) value += e.below_one_ninth ? "  < 1/9" : "  >= 1/9";
    row(out, e.name, value);
    if (!e.note.empty()) out << "  " << e.note << '\n';
  };
  for (const auto& e : r.excess) entry(e, true);
  for (const auto& e : r.root_coefficients) entry(e, false);
  row(out, "discriminant (6p)", std::to_string(r.discriminant_6p) + "  printed radicand " +
                                    std::to_string(r.printed_radicand_6p) +
                                    (r.radicand_erratum ? "  (mismatch)" : ""));
  row(out, "limit < 1/9.12", yes_no(r.limit_below_1_over_9_12));
  row(out, "monotone to p", std::to_string(r.monotonicity_checked_to) + "  (6p+2 " +
                                yes_no(r.numerator_6p2_increasing) + ", 6p+4 " +
                                yes_no(r.numerator_6p4_increasing) + ")");
}

EnumFilter parse_filter(const std::vector<std::string>& names) {
  EnumFilter f;
  for (const auto& name : names) {
    if (name == "balanced") f.balanced = true;
    else if (name == "nontransitive") f.nontransitive = true;
    else if (name == "fair") f.fair = true;
    else throw CLI::ValidationError("--filter", "unknown filter " + name);
  }
  return f;
}

void print_stats(const EnumStats& s, std::ostream& out) {
  row(out, "sides", std::to_string(s.n));
  row(out, "words", std::to_string(s.total_words));
  row(out, "balanced", std::to_string(s.count_balanced));
  row(out, "balanced non-trans.", std::to_string(s.count_balanced_nontransitive));
  row(out, "fair", std::to_string(s.count_fair));
  row(out, "max probability", s.max_prob ? to_string(*s.max_prob) : "none");
  for (const auto& w : s.witnesses) row(out, "  witness", w.str());
  for (const auto& [p, count] : s.histogram) row(out, "  P = " + to_string(p), std::to_string(count));
}

void cmd_enumerate(const Args& a, std::ostream& out) {
  const EnumFilter filter = parse_filter(a.filter);
  if (a.list) {
    if (a.json) throw CLI::ValidationError("--list", "cannot be combined with --json");
    const auto stats = enumerate(a.n, filter, [&](const DiceWord& w, const PairCounts& c) {
      out << w.str() << ' ' << c.ab << ' ' << c.bc << ' ' << c.ca << '\n';
    }, enum_options(a));
    if (!a.out_path.empty()) cache_stats(stats, a.out_path);
    return;
  }

  std::optional<std::filesystem::path> cache_file;
  if (const char* dir = std::getenv(kCacheDirEnv); dir != nullptr && *dir != '\0') {
    cache_file = std::filesystem::path(dir) / ("stats-n" + std::to_string(a.n) + ".json");
  }
  EnumStats stats;
  bool from_cache = false;
  if (cache_file && std::filesystem::exists(*cache_file)) {
    stats = load_stats(*cache_file);
    if (stats.n != a.n) throw IntegrityError("cache file " + cache_file->string() + " holds n = " + std::to_string(stats.n));
    from_cache = true;
  } else {
    stats = enumerate(a.n, {}, {}, enum_options(a));
    if (cache_file) {
      std::filesystem::create_directories(cache_file->parent_path());
      cache_stats(stats, *cache_file);
    }
  }
  if (!a.out_path.empty()) cache_stats(stats, a.out_path);
  if (a.json) {
    out << stats_to_json(stats) << '\n';
    return;
  }
  print_stats(stats, out);
  if (from_cache) row(out, "source", cache_file->string());
}

void cmd_scan_max(const Args& a, std::ostream& out) {
  const MaxProbability r = max_probability(a.n, enum_options(a));
  const Probability bound = Probability(1, 2) + Probability(1, 9);
  const bool below = r.value && compare(*r.value, bound) < 0;
  if (a.json) {
    out << Json{{"n", a.n},
                {"max_prob", r.value ? Json(to_string(*r.value)) : Json(nullptr)},
                {"bound", to_string(bound)},
                {"below_bound", r.value ? Json(below) : Json(nullptr)},
                {"witnesses", words_json(r.witnesses)}}
               .dump()
        << '\n';
    return;
  }
  row(out, "sides", std::to_string(a.n));
  row(out, "max probability", r.value ? to_string(*r.value) : "none (no balanced non-transitive word)");
  if (r.value) row(out, "below 11/18", yes_no(below));
  for (const auto& w : r.witnesses) row(out, "  witness", w.str());
}

Json tally_json(const ReachabilityTally& t) {
  return Json{{"reachable", t.reachable},
              {"not_reachable", t.not_reachable},
              {"unresolved", t.unresolved},
              {"counterexamples", words_json(t.counterexamples)}};
}

void cmd_verify_fair(const Args& a, std::ostream& out) {
  const FairConjectureReport r = verify_fair_conjecture(a.n, a.budget, enum_options(a));
  if (a.json) {
    out << Json{{"n", r.n},
                {"fair_words_found", r.fair_words_found},
                {"parity_ok", r.parity_ok},
                {"similarity_checked", r.similarity_checked},
                {"same_perm", tally_json(r.same_perm)},
                {"mixed_perm", tally_json(r.mixed_perm)}}
               .dump()
        << '\n';
    return;
  }
  row(out, "sides", std::to_string(r.n));
  row(out, "fair words", std::to_string(r.fair_words_found));
  row(out, "parity ok", yes_no(r.parity_ok));
  if (!r.similarity_checked) {
    row(out, "similarity", "not checked (n > 4)");
    return;
  }
  auto tally = [&](std::string_view label, const ReachabilityTally& t) {
    row(out, label, std::to_string(t.reachable) + " reachable, " + std::to_string(t.not_reachable) +
                        " not reachable, " + std::to_string(t.unresolved) + " unresolved");
    for (const auto& w : t.counterexamples) row(out, "  not reachable", w.str());
  };
  tally("same permutation", r.same_perm);
  tally("mixed permutations", r.mixed_perm);
}

void cmd_similar(const Args& a, std::ostream& out) {
  const DiceWord w1 = parse_word(a.words.at(0));
  const DiceWord w2 = parse_word(a.words.at(1));
  const SearchOutcome r = similar(w1, w2, a.budget);
  if (r.path && !a.out_path.empty()) write_file(a.out_path, move_path_to_json(*r.path));
  if (a.json) {
    out << Json{{"status", std::string(to_string(r.status))},
                {"states", r.states},
                {"length", r.path ? Json(r.path->moves.size()) : Json(nullptr)},
                {"path", r.path ? Json::parse(move_path_to_json(*r.path)) : Json(nullptr)}}
               .dump()
        << '\n';
    return;
  }
  row(out, "status", std::string(to_string(r.status)));
  row(out, "states", std::to_string(r.states));
  if (!r.path) return;
  row(out, "length", std::to_string(r.path->moves.size()));
  DiceWord w = r.path->start;
  out << "  " << w.str() << '\n';
  for (const auto& mv : r.path->moves) {
    w = apply_move(w, mv);
    out << "  " << w.str() << "   " << describe(mv) << '\n';
  }
}

void cmd_normalize2(const Args& a, std::ostream& out) {
  const MovePath path = normalize_two_letter_fair(parse_word(a.words.at(0)));
  if (!a.out_path.empty()) write_file(a.out_path, move_path_to_json(path));
  if (a.json) {
    out << Json{{"word", path.start.str()},
                {"target", path.end.str()},
                {"length", path.moves.size()},
                {"path", Json::parse(move_path_to_json(path))}}
               .dump()
        << '\n';
    return;
  }
  DiceWord w = path.start;
  out << "  " << w.str() << "   N(A>B) = " << two_letter_ab(w) << '\n';
  for (const auto& mv : path.moves) {
    w = apply_two_letter_move(w, mv);
    out << "  " << w.str() << "   N(A>B) = " << two_letter_ab(w) << "   " << describe(mv) << '\n';
  }
}

}  // namespace

std::span<const CommandInfo> command_table() { return commands(); }

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact analysis of non-transitive dice words", "ntdice"};
  app.require_subcommand(1);
  Args a;

  using Handler = void (*)(const Args&, std::ostream&);
  std::vector<std::pair<CLI::App*, Handler>> handlers;
  auto add = [&](std::string_view name, std::string_view help, Handler h) {
    CLI::App* sub = app.add_subcommand(std::string(name), std::string(help));
    sub->add_flag("--json", a.json, "Emit one line of JSON");
    handlers.emplace_back(sub, h);
    return sub;
  };
  auto word_arg = [&](CLI::App* sub, int count) {
    sub->add_option(count == 1 ? "word" : "words", a.words, count == 1 ? "Word over A, B, C" : "Two words over A, B, C")
        ->required()
        ->expected(count);
  };
  auto sides = [&](CLI::App* sub, int lo) {
    sub->add_option("--n", a.n, "Sides per die")->required()->check(CLI::Range(lo, 1'000'000));
  };
  auto scan_opts = [&](CLI::App* sub) {
    sub->add_option("--workers", a.workers, "Worker threads")->check(CLI::Range(1u, 1024u));
    sub->add_flag("--long-run", a.long_run, "Allow the n = 7 scan");
  };
  auto out_opt = [&](CLI::App* sub, std::string_view what) {
    sub->add_option("--out", a.out_path, std::string(what));
  };
  auto budget_opt = [&](CLI::App* sub) {
    sub->add_option("--budget", a.budget, "Maximum BFS states")->check(CLI::PositiveNumber);
  };

  auto* analyze = add("analyze", "Pair counts and verdict of a word", cmd_analyze);
  word_arg(analyze, 1);
  analyze->add_flag("--sites", a.sites, "List disjoint AB, BC, CA window triples instead");

  auto* d2w = add("dice2word", "Word of a dice set given as JSON text or a file", cmd_dice2word);
  d2w->add_option("dice", a.dice, "JSON object or path to one")->required();

  word_arg(add("word2dice", "Dice set of a word", cmd_word2dice), 1);
  word_arg(add("concat", "Concatenate two words and check the count law", cmd_concat), 2);
  word_arg(add("irreducible", "Check whether a word splits into two balanced non-transitive factors",
               cmd_irreducible),
           1);
  sides(add("construct", "Irreducible balanced non-transitive word", cmd_construct), 3);

  auto* near = add("near-half", "Word with 2m+1 sides and probability just above 1/2", cmd_near_half);
  near->add_option("--m", a.m, "Family index")->required()->check(CLI::Range(1, 1'000'000));

  auto* opt = add("optimize", "Run the staged maximum-probability construction", cmd_optimize);
  sides(opt, 6);
  out_opt(opt, "Write the move log as a JSON move path");

  auto* bounds = add("bounds", "Limit constants and their comparison with 1/9", cmd_bounds);
  bounds->add_option("--limit", a.limit, "Monotonicity sweep bound on p");

  auto* en = add("enumerate", "Exhaustive statistics over all words with n sides", cmd_enumerate);
  sides(en, 1);
  scan_opts(en);
  out_opt(en, "Write the stats file here");
  en->add_option("--filter", a.filter, "balanced, nontransitive, fair (all must hold)")->delimiter(',');
  en->add_flag("--list", a.list, "Print matching words with their counts");

  auto* sm = add("scan-max", "Largest probability of a balanced non-transitive word", cmd_scan_max);
  sides(sm, 2);
  scan_opts(sm);

  auto* vf = add("verify-fair", "Parity and similarity checks over all fair words", cmd_verify_fair);
  sides(vf, 1);
  scan_opts(vf);
  budget_opt(vf);

  auto* sim = add("similar", "Shortest rewrite path between two words", cmd_similar);
  word_arg(sim, 2);
  budget_opt(sim);
  out_opt(sim, "Write the path as JSON");

  auto* norm = add("normalize2", "Normalize a fair two-letter word to ABBA blocks", cmd_normalize2);
  word_arg(norm, 1);
  out_opt(norm, "Write the path as JSON");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
    for (auto& [sub, handler] : handlers) {
      if (sub->parsed()) handler(a, out);
    }
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitOk;
}

}  // namespace ntdice::cli
