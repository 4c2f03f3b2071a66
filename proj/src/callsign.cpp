#include "cru/callsign.hpp"

#include <algorithm>
#include <cctype>

#include "cru/errors.hpp"

namespace cru {

namespace {

std::string upper(std::string_view s) {
  std::string out;
  out.reserve(s.size());
  for (char c : s) out.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  return out;
}

}  // namespace

bool valid_designator(std::string_view text) {
  if (text.size() != 3) return false;
  for (char c : text) {
    if (c < 'A' || c > 'Z') return false;
  }
  return true;
}

bool valid_callsign_number(std::string_view text) {
  if (text.empty() || text.size() > 4) return false;
  if (text[0] < '0' || text[0] > '9') return false;
  for (char c : text.substr(1)) {
    bool digit = c >= '0' && c <= '9';
    bool alpha = c >= 'A' && c <= 'Z';
    if (!digit && !alpha) return false;
  }
  return true;
}

std::optional<IcaoCallsign> try_parse_icao(std::string_view text) {
  std::string up = upper(text);
  if (up.size() < 4) return std::nullopt;
  std::string designator = up.substr(0, 3);
  std::string number = up.substr(3);
  if (!valid_designator(designator) || !valid_callsign_number(number)) return std::nullopt;
  return IcaoCallsign{std::move(designator), std::move(number)};
}

IcaoCallsign parse_icao(std::string_view text) {
  if (text.empty()) throw MalformedCallsign("empty call-sign text");
  auto cs = try_parse_icao(text);
  if (!cs) throw MalformedCallsign("not a valid ICAO call-sign: " + std::string(text));
  return *cs;
}

namespace {

bool is_subsequence(std::string_view needle, std::string_view haystack) {
  std::size_t i = 0;
  for (char c : haystack) {
    if (i < needle.size() && needle[i] == c) ++i;
  }
  return i == needle.size();
}

std::size_t char_distance(std::string_view a, std::string_view b) {
  std::vector<std::size_t> row(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) row[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    std::size_t diag = row[0];
    row[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      std::size_t up = row[j];
      std::size_t cost = a[i - 1] == b[j - 1] ? 0 : 1;
      row[j] = std::min({row[j] + 1, row[j - 1] + 1, diag + cost});
      diag = up;
    }
  }
  return row[b.size()];
}

}  // namespace

bool confusable_numbers(std::string_view a, std::string_view b) {
  if (a == b) return true;
  if (char_distance(a, b) <= 1) return true;
  return a.size() <= b.size() ? is_subsequence(a, b) : is_subsequence(b, a);
}

}  // namespace cru
