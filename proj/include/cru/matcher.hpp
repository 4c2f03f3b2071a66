#ifndef CRU_MATCHER_HPP
#define CRU_MATCHER_HPP

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "cru/callsign.hpp"
#include "cru/registry.hpp"
#include "cru/variants.hpp"

namespace cru {

// Call-signs of aircraft present in the airspace. Order irrelevant,
// duplicates permitted.
struct SurveillanceSnapshot {
  std::vector<IcaoCallsign> callsigns;
};

// Substitution cost multiplier for two different spellings of the same
// telephony word (see MatchConfig::char_aware_substitution). Non-zero so an
// aliased window never scores exactly 1.
inline constexpr double kTelephonyAliasCost = 0.1;

struct MatchConfig {
  double threshold = 0.5;  // similarity cutoff in [0,1]
  double sub_cost = 1.0;
  double del_cost = 1.0;
  // Insertions (stray transcript tokens inside the window) are cheaper than
  // deletions by default, so a candidate that keeps its identifier matched
  // across an inserted token outranks one that drops the identifier outright.
  double ins_cost = 0.5;
  // Multiplier on edits touching number material (digit/NATO/grouped words).
  // Kept at 1.0 by default: over-weighting digits makes a single-digit
  // deletion in the transcript costlier than swapping the whole airline
  // name, which picks the wrong candidate in the deletion-recovery case.
  double digit_weight = 1.0;
  // Phonetically informed substitution cost. Two telephony tokens (digit,
  // NATO, or grouped-tens words, including known ASR near-spellings) cost
  // kTelephonyAliasCost when they name the same word ("key" for "kilo") and
  // full price otherwise: the spelling alphabet is designed for phonetic
  // distinctness, so residual character overlap between different telephony
  // words ("foxtrot"/"x-ray") is spurious. All other substitutions scale by
  // normalized character edit distance ("urkish" for "turkish" stays cheap).
  bool char_aware_substitution = true;
  // NoIdentifier is deliberately absent: a bare-number expansion of a
  // distractor that happens to contain the corrupted number would score a
  // perfect window and mask the true candidate.
  std::vector<VariantKind> kinds = {VariantKind::Full, VariantKind::GroupedNumber,
                                    VariantKind::SpelledDesignator};
};

// Window-normalized similarity: 1 - min over contiguous transcript windows of
// the weighted token edit distance to the variant, divided by the weighted
// variant length. Clipped to [0,1]; exactly 1 iff some window equals the
// variant.
double similarity(const SpokenForm& transcript, const SpokenForm& variant,
                  const MatchConfig& cfg);

struct SimilarityDetail {
  double score = 0.0;
  std::size_t win_start = 0;
  std::size_t win_end = 0;
};

SimilarityDetail similarity_detail(const SpokenForm& transcript, const SpokenForm& variant,
                                   const MatchConfig& cfg);

struct CandidateScore {
  IcaoCallsign candidate;
  double score = 0.0;
  VariantKind kind = VariantKind::Full;
  std::size_t win_start = 0;
  std::size_t win_end = 0;
  bool skipped = false;  // designator missing from the registry
};

enum class MatchDecision { Matched, BelowThreshold, EmptySurveillance };

const char* to_string(MatchDecision decision);

struct MatchTrace {
  std::vector<CandidateScore> candidates;  // one per deduplicated call-sign
  MatchDecision decision = MatchDecision::EmptySurveillance;
  std::optional<IcaoCallsign> chosen;
  double best_score = 0.0;
};

// Surveillance-context recognition: score every surveillance call-sign's
// spoken expansions against the transcript and return the best candidate if
// it clears the threshold; otherwise fall back to vanilla recognition. Ties
// prefer a Full best variant, then the lexicographically smallest canonical
// form. Unknown designators are skipped and recorded in the trace.
std::pair<std::optional<IcaoCallsign>, MatchTrace> recognize_with_context(
    const SpokenForm& transcript, const SurveillanceSnapshot& sur, const AirlineRegistry& reg,
    const MatchConfig& cfg);

}  // namespace cru

#endif  // CRU_MATCHER_HPP
