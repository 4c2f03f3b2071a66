#ifndef CRU_PHONETIC_HPP
#define CRU_PHONETIC_HPP

#include <optional>
#include <string>
#include <vector>

namespace cru {

// NATO phonetic alphabet and spoken-number word tables.
//
// Canonical output words follow the ICAO spelling ("alfa", "juliett",
// "x-ray"); a few common transcript spellings are accepted as input
// aliases ("alpha", "juliet", "xray", "niner").

// Spoken words for a digit character; '0' yields {"zero", "oh"}.
const std::vector<std::string>& words_for_digit(char digit);

// Canonical spoken word for a digit character ("zero" for '0').
const std::string& word_for_digit(char digit);

// NATO word for an uppercase letter ('K' -> "kilo").
const std::string& word_for_letter(char letter);

// Digit character for a spoken word, accepting aliases ("oh", "niner").
std::optional<char> digit_for(const std::string& token);

// Uppercase letter for a NATO word, accepting aliases.
std::optional<char> letter_for(const std::string& token);

// Grouped-tens word for a value in [20, 99]: 72 -> "seventy-two", 70 -> "seventy".
std::string tens_word(int value);

// Two-digit string for a grouped-tens token ("seventy-two" -> "72",
// "seventy" -> "70"); nullopt when the token is not a tens word.
std::optional<std::string> tens_value(const std::string& token);

// True for a bare tens word without a units part ("seventy" but not
// "seventy-two").
bool is_bare_tens(const std::string& token);

bool is_hundred_word(const std::string& token);
bool is_thousand_word(const std::string& token);

// True when the token is call-sign number material: a digit word, a NATO
// word, a grouped-tens word, or "hundred"/"thousand".
bool is_number_word(const std::string& token);

// Canonical telephony word for a token that is a digit/NATO/tens word,
// an accepted alias ("niner", "alpha"), or a common ASR near-spelling of
// one ("fore" -> "four", "zoo" -> "zulu"). Everyday words that merely
// sound like telephony words ("to", "for", "or") are deliberately not
// mapped. Returns nullopt for anything else.
std::optional<std::string> telephony_canonical(const std::string& token);

}  // namespace cru

#endif  // CRU_PHONETIC_HPP
