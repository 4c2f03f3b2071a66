#include "cru/phonetic.hpp"

#include <array>
#include <map>
#include <stdexcept>

namespace cru {

namespace {

const std::array<std::vector<std::string>, 10> kDigitWords = {{
    {"zero", "oh"},
    {"one"},
    {"two"},
    {"three"},
    {"four"},
    {"five"},
    {"six"},
    {"seven"},
    {"eight"},
    {"nine"},
}};

const std::array<std::string, 26> kNatoWords = {
    "alfa",    "bravo",  "charlie", "delta", "echo",   "foxtrot", "golf",
    "hotel",   "india",  "juliett", "kilo",  "lima",   "mike",    "november",
    "oscar",   "papa",   "quebec",  "romeo", "sierra", "tango",   "uniform",
    "victor",  "whiskey", "x-ray",  "yankee", "zulu"};

const std::map<std::string, char>& digit_lookup() {
  static const std::map<std::string, char> table = [] {
    std::map<std::string, char> t;
    for (int d = 0; d <= 9; ++d) {
      for (const auto& w : kDigitWords[static_cast<std::size_t>(d)]) {
        t[w] = static_cast<char>('0' + d);
      }
    }
    t["niner"] = '9';  // ICAO pronunciation alias
    return t;
  }();
  return table;
}

const std::map<std::string, char>& letter_lookup() {
  static const std::map<std::string, char> table = [] {
    std::map<std::string, char> t;
    for (int i = 0; i < 26; ++i) {
      t[kNatoWords[static_cast<std::size_t>(i)]] = static_cast<char>('A' + i);
    }
    t["alpha"] = 'A';
    t["juliet"] = 'J';
    t["xray"] = 'X';
    t["whisky"] = 'W';
    return t;
  }();
  return table;
}

const std::array<std::string, 8> kTensWords = {
    "twenty", "thirty", "forty", "fifty", "sixty", "seventy", "eighty", "ninety"};

}  // namespace

const std::vector<std::string>& words_for_digit(char digit) {
  if (digit < '0' || digit > '9') throw std::invalid_argument("not a digit");
  return kDigitWords[static_cast<std::size_t>(digit - '0')];
}

const std::string& word_for_digit(char digit) { return words_for_digit(digit)[0]; }

const std::string& word_for_letter(char letter) {
  if (letter < 'A' || letter > 'Z') throw std::invalid_argument("not an uppercase letter");
  return kNatoWords[static_cast<std::size_t>(letter - 'A')];
}

std::optional<char> digit_for(const std::string& token) {
  auto it = digit_lookup().find(token);
  if (it == digit_lookup().end()) return std::nullopt;
  return it->second;
}

std::optional<char> letter_for(const std::string& token) {
  auto it = letter_lookup().find(token);
  if (it == letter_lookup().end()) return std::nullopt;
  return it->second;
}

std::string tens_word(int value) {
  if (value < 20 || value > 99) throw std::invalid_argument("tens word range is [20,99]");
  std::string word = kTensWords[static_cast<std::size_t>(value / 10 - 2)];
  int units = value % 10;
  if (units != 0) {
    word += '-';
    word += word_for_digit(static_cast<char>('0' + units));
  }
  return word;
}

std::optional<std::string> tens_value(const std::string& token) {
  auto dash = token.find('-');
  std::string tens = dash == std::string::npos ? token : token.substr(0, dash);
  int tens_digit = -1;
  for (int i = 0; i < 8; ++i) {
    if (kTensWords[static_cast<std::size_t>(i)] == tens) {
      tens_digit = i + 2;
      break;
    }
  }
  if (tens_digit < 0) return std::nullopt;
  if (dash == std::string::npos) {
    return std::string{static_cast<char>('0' + tens_digit), '0'};
  }
  auto units = digit_for(token.substr(dash + 1));
  if (!units || *units == '0') return std::nullopt;  // "seventy-zero" is not a word
  return std::string{static_cast<char>('0' + tens_digit), *units};
}

bool is_bare_tens(const std::string& token) {
  for (const auto& w : kTensWords) {
    if (w == token) return true;
  }
  return false;
}

bool is_hundred_word(const std::string& token) { return token == "hundred"; }

bool is_thousand_word(const std::string& token) { return token == "thousand"; }

bool is_number_word(const std::string& token) {
  return digit_for(token).has_value() || letter_for(token).has_value() ||
         tens_value(token).has_value() || is_hundred_word(token) || is_thousand_word(token);
}

namespace {

// Common ASR near-spellings of telephony words. Only spellings that are not
// themselves telephony words and are unlikely to occur as ordinary command
// vocabulary are listed ("to"/"for"/"or"/"fix" are excluded on purpose).
const std::map<std::string, std::string>& near_spelling_lookup() {
  static const std::map<std::string, std::string> table = [] {
    std::map<std::string, std::string> t;
    auto add = [&](const std::string& canonical, std::initializer_list<std::string> aliases) {
      for (const auto& a : aliases) t[a] = canonical;
    };
    add("zero", {"hero"});
    add("one", {"won", "wun"});
    add("two", {"too"});
    add("three", {"tree", "free"});
    add("four", {"fore"});
    add("five", {"fife"});
    add("six", {"sick"});
    add("seven", {"heaven", "sever"});
    add("eight", {"ate", "late"});
    add("nine", {"wine"});
    add("alfa", {"alva"});
    add("bravo", {"brother", "bravos"});
    add("charlie", {"charly", "early"});
    add("delta", {"delia", "deta"});
    add("echo", {"ecko", "hecho"});
    add("foxtrot", {"fox", "foxtrott"});
    add("golf", {"golfer"});
    add("hotel", {"motel", "hotels"});
    add("india", {"indian", "indigo"});
    add("juliett", {"julia"});
    add("kilo", {"key", "keelo"});
    add("lima", {"leema", "lena"});
    add("mike", {"bike", "might"});
    add("november", {"remember", "movember"});
    add("oscar", {"oskar", "scar"});
    add("papa", {"pepper", "pappa"});
    add("quebec", {"kebek", "quebeck"});
    add("romeo", {"romea", "rodeo"});
    add("sierra", {"serra", "sara"});
    add("tango", {"tengo", "mango"});
    add("uniform", {"unicorn", "uniforms"});
    add("victor", {"victa", "victory"});
    add("whiskey", {"whisk"});
    add("x-ray", {"ray"});
    add("yankee", {"yanky", "yank"});
    add("zulu", {"sulu", "zoo"});
    for (const auto& w : kTensWords) {
      if (w != "eighty") t[w.substr(0, w.size() - 1)] = w;  // "sevent" -> "seventy"
    }
    return t;
  }();
  return table;
}

}  // namespace

std::optional<std::string> telephony_canonical(const std::string& token) {
  if (auto d = digit_for(token)) return word_for_digit(*d);
  if (auto l = letter_for(token)) return word_for_letter(*l);
  if (auto v = tens_value(token)) {
    return tens_word((v->at(0) - '0') * 10 + (v->at(1) - '0'));
  }
  if (is_hundred_word(token) || is_thousand_word(token)) return token;
  auto it = near_spelling_lookup().find(token);
  if (it != near_spelling_lookup().end()) return it->second;
  return std::nullopt;
}

}  // namespace cru
