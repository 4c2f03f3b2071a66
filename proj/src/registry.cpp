#include "cru/registry.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <sstream>

#include "cru/errors.hpp"

namespace cru {

namespace {

SpokenForm tokenize_lower(const std::string& text) {
  SpokenForm tokens;
  std::istringstream in(text);
  std::string tok;
  while (in >> tok) {
    for (char& c : tok) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    tokens.push_back(tok);
  }
  return tokens;
}

}  // namespace

void AirlineRegistry::add(const std::string& designator, const std::string& telephony) {
  if (!valid_designator(designator)) {
    throw ConfigError("invalid airline designator: " + designator);
  }
  SpokenForm name = tokenize_lower(telephony);
  if (name.empty()) {
    throw ConfigError("empty telephony name for " + designator);
  }
  auto it = reverse_.find(name);
  if (it != reverse_.end()) {
    if (it->second != designator) {
      throw RegistryConflict("telephony name '" + telephony + "' claimed by both " +
                             it->second + " and " + designator);
    }
    return;  // duplicate row, ignore
  }
  reverse_.emplace(name, designator);
  names_[designator].push_back(name);
  max_name_tokens_ = std::max(max_name_tokens_, name.size());
}

AirlineRegistry AirlineRegistry::from_tsv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open airline registry: " + path);
  AirlineRegistry reg;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos) {
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected DESIGNATOR<TAB>name");
    }
    reg.add(line.substr(0, tab), line.substr(tab + 1));
  }
  if (reg.size() == 0) throw ConfigError("airline registry is empty: " + path);
  return reg;
}

bool AirlineRegistry::has(const std::string& designator) const {
  return names_.count(designator) != 0;
}

const std::vector<SpokenForm>& AirlineRegistry::telephony_names(
    const std::string& designator) const {
  auto it = names_.find(designator);
  if (it == names_.end()) throw UnknownDesignator("unknown airline designator: " + designator);
  return it->second;
}

std::optional<AirlineRegistry::NameMatch> AirlineRegistry::match_telephony(
    const SpokenForm& tokens, std::size_t pos) const {
  std::size_t remaining = tokens.size() > pos ? tokens.size() - pos : 0;
  std::size_t longest = std::min(max_name_tokens_, remaining);
  for (std::size_t len = longest; len >= 1; --len) {
    SpokenForm candidate(tokens.begin() + static_cast<long>(pos),
                         tokens.begin() + static_cast<long>(pos + len));
    auto it = reverse_.find(candidate);
    if (it != reverse_.end()) return NameMatch{it->second, len};
    if (len == 1) break;
  }
  return std::nullopt;
}

std::optional<std::string> AirlineRegistry::designator_for_spelling(
    const std::string& token) const {
  if (token.size() != 3) return std::nullopt;
  std::string up;
  for (char c : token) {
    if (c < 'a' || c > 'z') return std::nullopt;
    up.push_back(static_cast<char>(std::toupper(static_cast<unsigned char>(c))));
  }
  if (!has(up)) return std::nullopt;
  return up;
}

std::vector<std::string> AirlineRegistry::designators() const {
  std::vector<std::string> out;
  out.reserve(names_.size());
  for (const auto& [d, _] : names_) out.push_back(d);
  return out;
}

}  // namespace cru
