#include "cru/variants.hpp"

#include <algorithm>
#include <cctype>

#include "cru/errors.hpp"
#include "cru/phonetic.hpp"

namespace cru {

namespace {

bool is_digit_char(char c) { return c >= '0' && c <= '9'; }

// All per-character spellings of a number suffix (cartesian over the
// zero/oh choice).
std::vector<SpokenForm> char_spellings(const std::string& number) {
  std::vector<SpokenForm> out{{}};
  for (char c : number) {
    std::vector<std::string> options;
    if (is_digit_char(c)) {
      options = words_for_digit(c);
    } else {
      options = {word_for_letter(c)};
    }
    std::vector<SpokenForm> next;
    next.reserve(out.size() * options.size());
    for (const auto& prefix : out) {
      for (const auto& opt : options) {
        SpokenForm form = prefix;
        form.push_back(opt);
        next.push_back(std::move(form));
      }
    }
    out = std::move(next);
  }
  return out;
}

// Grouped renderings of a number: tens for a leading 20-99 pair, exact
// hundreds (d00) and exact thousands (d000). Empty when no grouping applies.
std::vector<SpokenForm> grouped_spellings(const std::string& number) {
  std::vector<SpokenForm> out;
  const std::size_t len = number.size();
  if (len == 4 && number[0] >= '1' && number.compare(1, 3, "000") == 0) {
    out.push_back({word_for_digit(number[0]), "thousand"});
    return out;
  }
  if (len == 3 && number[0] >= '1' && number.compare(1, 2, "00") == 0) {
    out.push_back({word_for_digit(number[0]), "hundred"});
    return out;
  }
  if (len >= 2 && is_digit_char(number[0]) && is_digit_char(number[1])) {
    int value = (number[0] - '0') * 10 + (number[1] - '0');
    if (value >= 20) {
      bool bare_tens = number[1] == '0';
      // "seventy two" would be ambiguous with 702; only group x0 when no
      // digit follows.
      if (!(bare_tens && len > 2 && is_digit_char(number[2]))) {
        for (const auto& rest : char_spellings(number.substr(2))) {
          SpokenForm form{tens_word(value)};
          form.insert(form.end(), rest.begin(), rest.end());
          out.push_back(std::move(form));
        }
      }
    }
  }
  return out;
}

std::string lower(const std::string& s) {
  std::string out = s;
  for (char& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return out;
}

}  // namespace

const char* to_string(VariantKind kind) {
  switch (kind) {
    case VariantKind::Full: return "full";
    case VariantKind::NoIdentifier: return "no-identifier";
    case VariantKind::IdentifierOnly: return "identifier-only";
    case VariantKind::GroupedNumber: return "grouped-number";
    case VariantKind::SpelledDesignator: return "spelled-designator";
    case VariantKind::ShortenedNumber: return "shortened-number";
  }
  return "?";
}

std::optional<VariantKind> variant_kind_from_string(const std::string& name) {
  for (VariantKind k : all_variant_kinds()) {
    if (name == to_string(k)) return k;
  }
  return std::nullopt;
}

const std::vector<VariantKind>& all_variant_kinds() {
  static const std::vector<VariantKind> kinds = {
      VariantKind::Full,          VariantKind::NoIdentifier,
      VariantKind::IdentifierOnly, VariantKind::GroupedNumber,
      VariantKind::SpelledDesignator, VariantKind::ShortenedNumber,
  };
  return kinds;
}

std::vector<SpokenVariant> expand_to_spoken(const IcaoCallsign& cs, const AirlineRegistry& reg,
                                            const std::vector<VariantKind>& kinds) {
  bool designator_kind_requested = false;
  for (VariantKind k : kinds) {
    if (k != VariantKind::NoIdentifier) designator_kind_requested = true;
  }
  if (designator_kind_requested && !reg.has(cs.designator)) {
    throw UnknownDesignator("unknown airline designator: " + cs.designator);
  }

  std::vector<SpokenVariant> out;
  auto add_with_names = [&](const std::vector<SpokenForm>& suffixes, VariantKind kind) {
    for (const auto& name : reg.telephony_names(cs.designator)) {
      for (const auto& suffix : suffixes) {
        SpokenForm form = name;
        form.insert(form.end(), suffix.begin(), suffix.end());
        out.push_back({std::move(form), kind});
      }
    }
  };

  for (VariantKind kind : kinds) {
    switch (kind) {
      case VariantKind::Full:
        add_with_names(char_spellings(cs.number), kind);
        break;
      case VariantKind::NoIdentifier:
        for (auto& form : char_spellings(cs.number)) out.push_back({std::move(form), kind});
        break;
      case VariantKind::IdentifierOnly:
        add_with_names({{}}, kind);
        break;
      case VariantKind::GroupedNumber:
        add_with_names(grouped_spellings(cs.number), kind);
        break;
      case VariantKind::SpelledDesignator:
        for (const auto& suffix : char_spellings(cs.number)) {
          SpokenForm form{lower(cs.designator)};
          form.insert(form.end(), suffix.begin(), suffix.end());
          out.push_back({std::move(form), kind});
        }
        break;
      case VariantKind::ShortenedNumber:
        if (cs.number.size() >= 2 && is_digit_char(cs.number[1])) {
          add_with_names(char_spellings(cs.number.substr(1)), kind);
        }
        break;
    }
  }

  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::optional<std::string> parse_number_tokens(const SpokenForm& tokens, std::size_t start,
                                               std::size_t end) {
  std::string number;
  std::size_t i = start;
  while (i < end) {
    const std::string& tok = tokens[i];
    if (auto d = digit_for(tok)) {
      if (i + 1 < end && is_thousand_word(tokens[i + 1])) {
        number += *d;
        number += "000";
        i += 2;
      } else if (i + 1 < end && is_hundred_word(tokens[i + 1])) {
        number += *d;
        number += "00";
        i += 2;
      } else {
        number += *d;
        ++i;
      }
      continue;
    }
    if (auto tens = tens_value(tok)) {
      // A bare tens word followed by a digit word reads two ways (72 vs 702);
      // reject rather than guess.
      if (is_bare_tens(tok) && i + 1 < end && digit_for(tokens[i + 1])) return std::nullopt;
      number += *tens;
      ++i;
      continue;
    }
    if (auto l = letter_for(tok)) {
      number += *l;
      ++i;
      continue;
    }
    return std::nullopt;
  }
  if (!valid_callsign_number(number)) return std::nullopt;
  return number;
}

std::optional<IcaoCallsign> spoken_to_icao(const SpokenForm& tokens, const AirlineRegistry& reg,
                                           bool partial) {
  if (tokens.empty()) return std::nullopt;

  std::string designator;
  std::size_t number_start = 0;
  if (auto match = reg.match_telephony(tokens, 0)) {
    designator = match->designator;
    number_start = match->length;
  } else if (auto spelled = reg.designator_for_spelling(tokens[0])) {
    designator = *spelled;
    number_start = 1;
  }

  if (!designator.empty() && number_start == tokens.size()) {
    return std::nullopt;  // identifier only: the number is unrecoverable
  }

  auto number = parse_number_tokens(tokens, number_start, tokens.size());
  if (!number) return std::nullopt;

  if (designator.empty()) {
    if (!partial) return std::nullopt;
    return IcaoCallsign{"", *number};
  }
  return IcaoCallsign{designator, *number};
}

}  // namespace cru
