#ifndef CRU_VARIANTS_HPP
#define CRU_VARIANTS_HPP

#include <compare>
#include <optional>
#include <string>
#include <vector>

#include "cru/callsign.hpp"
#include "cru/registry.hpp"

namespace cru {

// How a call-sign is realized in speech.
enum class VariantKind {
  Full,              // telephony name + per-character number
  NoIdentifier,      // number only
  IdentifierOnly,    // telephony name only
  GroupedNumber,     // tens / exact hundreds / exact thousands grouping
  SpelledDesignator, // raw designator spelling ("dlh") + number
  ShortenedNumber,   // leading digit of the number dropped (augmentation only)
};

const char* to_string(VariantKind kind);
std::optional<VariantKind> variant_kind_from_string(const std::string& name);

// All six kinds, in declaration order.
const std::vector<VariantKind>& all_variant_kinds();

struct SpokenVariant {
  SpokenForm tokens;
  VariantKind kind;

  auto operator<=>(const SpokenVariant&) const = default;
};

// Deduplicated, deterministically ordered spoken realizations of a call-sign
// for the requested kinds. Per-character digits use the NATO digit words with
// both "zero" and "oh" for 0, so a kind can contribute several variants.
// Kinds that do not apply to the given number (e.g. GroupedNumber on "8K")
// contribute nothing. Throws UnknownDesignator when a designator-bearing kind
// is requested and the registry lacks the designator.
std::vector<SpokenVariant> expand_to_spoken(const IcaoCallsign& cs, const AirlineRegistry& reg,
                                            const std::vector<VariantKind>& kinds);

// Inverse of expand_to_spoken on Full, GroupedNumber and SpelledDesignator
// variants. Returns nullopt for identifier-only spans and for anything that
// does not parse. Number-only spans yield a partial call-sign (empty
// designator) when partial mode is enabled, nullopt otherwise.
std::optional<IcaoCallsign> spoken_to_icao(const SpokenForm& tokens, const AirlineRegistry& reg,
                                           bool partial = false);

// Token sequence -> call-sign number string ("seven two kilo" -> "72K").
// Grouped tens, exact hundreds and exact thousands are expanded before digit
// mapping. Fails on unknown tokens, ambiguous tens groupings and strings that
// violate the number grammar.
std::optional<std::string> parse_number_tokens(const SpokenForm& tokens, std::size_t start,
                                               std::size_t end);

}  // namespace cru

#endif  // CRU_VARIANTS_HPP
