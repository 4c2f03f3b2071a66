#include "cru/extractor.hpp"

#include <algorithm>

#include "cru/phonetic.hpp"

namespace cru {

namespace {

// Character contribution of a number token towards the 4-character cap.
std::size_t number_chars(const std::string& token) {
  if (digit_for(token)) return 1;
  if (letter_for(token)) return 1;
  if (tens_value(token)) return 2;
  if (is_hundred_word(token)) return 2;
  if (is_thousand_word(token)) return 3;
  return 0;
}

// Maximal-munch extension through number material starting at pos, bounded
// by the 4-character number cap. Returns the exclusive end index.
std::size_t extend_number(const SpokenForm& tokens, std::size_t pos) {
  std::size_t chars = 0;
  std::size_t i = pos;
  while (i < tokens.size() && is_number_word(tokens[i])) {
    std::size_t c = number_chars(tokens[i]);
    if (chars + c > 4) break;
    chars += c;
    ++i;
  }
  return i;
}

SpokenForm slice(const SpokenForm& tokens, std::size_t start, std::size_t end) {
  return SpokenForm(tokens.begin() + static_cast<long>(start),
                    tokens.begin() + static_cast<long>(end));
}

}  // namespace

std::vector<Span> extract_spans(const SpokenForm& transcript, const AirlineRegistry& reg) {
  std::vector<Span> spans;

  for (std::size_t i = 0; i < transcript.size(); ++i) {
    if (auto match = reg.match_telephony(transcript, i)) {
      std::size_t anchor_end = i + match->length;
      std::size_t end = extend_number(transcript, anchor_end);
      if (end > anchor_end) {
        spans.push_back({i, end, VariantKind::Full, slice(transcript, i, end)});
      } else {
        spans.push_back({i, anchor_end, VariantKind::IdentifierOnly,
                         slice(transcript, i, anchor_end)});
      }
    } else if (reg.designator_for_spelling(transcript[i])) {
      std::size_t end = extend_number(transcript, i + 1);
      if (end > i + 1) {
        spans.push_back({i, end, VariantKind::SpelledDesignator, slice(transcript, i, end)});
      }
    }
  }

  // Maximal bare number runs of length >= 2 as NoIdentifier hypotheses.
  std::size_t i = 0;
  while (i < transcript.size()) {
    if (!is_number_word(transcript[i])) {
      ++i;
      continue;
    }
    std::size_t run_end = i;
    while (run_end < transcript.size() && is_number_word(transcript[run_end])) ++run_end;
    if (run_end - i >= 2) {
      spans.push_back({i, run_end, VariantKind::NoIdentifier, slice(transcript, i, run_end)});
    }
    i = run_end;
  }

  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    if (a.start != b.start) return a.start < b.start;
    if (a.length() != b.length()) return a.length() > b.length();
    return a.kind < b.kind;
  });
  return spans;
}

std::optional<IcaoCallsign> vanilla_recognize(const SpokenForm& transcript,
                                              const AirlineRegistry& reg) {
  auto spans = extract_spans(transcript, reg);
  // Identifier-anchored spans outrank bare number runs regardless of position.
  for (int pass = 0; pass < 2; ++pass) {
    for (const Span& span : spans) {
      bool anchored = span.kind != VariantKind::NoIdentifier;
      if (anchored != (pass == 0)) continue;
      if (auto cs = spoken_to_icao(span.tokens, reg)) return cs;
    }
  }
  return std::nullopt;
}

}  // namespace cru
