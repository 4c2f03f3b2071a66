#ifndef CRU_CALLSIGN_HPP
#define CRU_CALLSIGN_HPP

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace cru {

// A word-tokenized utterance or utterance fragment. Tokens are lowercase
// and contain no whitespace.
using SpokenForm = std::vector<std::string>;

// Standard-format flight identifier: a 3-letter airline designator followed
// by an alphanumeric number whose first character is a digit (e.g. DLH83K).
struct IcaoCallsign {
  std::string designator;  // [A-Z]{3}, or empty for a partial (number-only) result
  std::string number;      // [0-9][A-Z0-9]{0,3}

  std::string canonical() const { return designator + number; }
  bool partial() const { return designator.empty(); }

  auto operator<=>(const IcaoCallsign&) const = default;
};

// Parses the canonical text form. Throws MalformedCallsign when the input
// does not match the grammar. Lowercase input is accepted and uppercased.
IcaoCallsign parse_icao(std::string_view text);

// Non-throwing variant of parse_icao.
std::optional<IcaoCallsign> try_parse_icao(std::string_view text);

bool valid_designator(std::string_view text);
bool valid_callsign_number(std::string_view text);

// True when two call-sign numbers are confusable under airline call-sign
// similarity rules: identical, within one character edit, or one a
// subsequence of the other. Scheduling avoids such pairs within one airline
// in the same airspace, and simulated surveillance honors that.
bool confusable_numbers(std::string_view a, std::string_view b);

}  // namespace cru

#endif  // CRU_CALLSIGN_HPP
