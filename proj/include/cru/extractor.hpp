#ifndef CRU_EXTRACTOR_HPP
#define CRU_EXTRACTOR_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "cru/callsign.hpp"
#include "cru/registry.hpp"
#include "cru/variants.hpp"

namespace cru {

// Candidate call-sign location within a transcript. end is exclusive.
struct Span {
  std::size_t start = 0;
  std::size_t end = 0;
  VariantKind kind = VariantKind::Full;
  SpokenForm tokens;

  std::size_t length() const { return end - start; }
  auto operator<=>(const Span&) const = default;
};

// Candidate call-sign spans, ordered by (start ascending, length descending).
// Telephony-anchored and spelled-designator spans extend through number
// material under a hard 4-character number cap; bare number runs of >= 2
// tokens are emitted as NoIdentifier hypotheses. Overlaps are allowed.
std::vector<Span> extract_spans(const SpokenForm& transcript, const AirlineRegistry& reg);

// Context-free recognition: parse of the highest-priority parsable span.
// Identifier-anchored spans beat bare-number spans; earlier spans beat later
// ones. Returns nullopt when nothing parses.
std::optional<IcaoCallsign> vanilla_recognize(const SpokenForm& transcript,
                                              const AirlineRegistry& reg);

}  // namespace cru

#endif  // CRU_EXTRACTOR_HPP
