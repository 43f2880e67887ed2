#pragma once

// JSON interchange formats. Every function emits compact JSON with a fixed
// key order, so equal values always serialize to identical bytes.

#include <string>
#include <string_view>

#include "ntdice/constructions.hpp"
#include "ntdice/dice.hpp"
#include "ntdice/enumeration.hpp"
#include "ntdice/rewriting.hpp"

namespace ntdice {

/// {"n":3,"A":[...],"B":[...],"C":[...]}, labels ascending.
std::string dice_set_to_json(const DiceSet& d);
/// Throws FormatError on malformed JSON, ValidationError on a bad partition.
DiceSet dice_set_from_json(std::string_view text);

/// {"n","counts":[ab,bc,ca],"p","balanced","nontransitive","fair"}. "p" is
/// null for an unbalanced word, which also gets "p_pairs":{"ab","bc","ca"}.
std::string verdict_to_json(const Verdict& v);

/// {"start","moves":[{"kind","i","j","k"}],"end"}.
std::string move_path_to_json(const MovePath& path);
/// Parses and replays the path (two-letter rules when the start word has no
/// C). Throws FormatError or PreconditionError.
MovePath move_path_from_json(std::string_view text);

std::string stats_to_json(const EnumStats& stats);
/// Throws FormatError or IntegrityError.
EnumStats stats_from_json(std::string_view text);

/// The move log is large for big n and only included on request.
std::string optimizer_report_to_json(const OptimizerReport& r, bool include_moves = false);
std::string bound_report_to_json(const BoundReport& r);

}  // namespace ntdice
