#ifndef CRU_REGISTRY_HPP
#define CRU_REGISTRY_HPP

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "cru/callsign.hpp"

namespace cru {

// Airline designator <-> telephony name table. Telephony names are lowercase
// and may span multiple tokens ("air france"). Names must be unique across
// designators; conflicting rows are rejected at load time.
class AirlineRegistry {
 public:
  // Throws RegistryConflict when the telephony name is already claimed by a
  // different designator, ConfigError on malformed inputs.
  void add(const std::string& designator, const std::string& telephony);

  // TSV rows: DESIGNATOR<TAB>telephony name. '#' lines and blanks ignored.
  static AirlineRegistry from_tsv(const std::string& path);

  bool has(const std::string& designator) const;
  std::size_t size() const { return names_.size(); }

  // Telephony names registered for a designator, in insertion order.
  // Throws UnknownDesignator.
  const std::vector<SpokenForm>& telephony_names(const std::string& designator) const;

  struct NameMatch {
    std::string designator;
    std::size_t length;  // tokens consumed
  };

  // Longest telephony-name match starting at tokens[pos].
  std::optional<NameMatch> match_telephony(const SpokenForm& tokens, std::size_t pos) const;

  // Designator for a 3-letter lowercase spelling ("dlh" -> DLH), if registered.
  std::optional<std::string> designator_for_spelling(const std::string& token) const;

  std::vector<std::string> designators() const;

 private:
  std::map<std::string, std::vector<SpokenForm>> names_;   // designator -> names
  std::map<SpokenForm, std::string> reverse_;              // name tokens -> designator
  std::size_t max_name_tokens_ = 0;
};

}  // namespace cru

#endif  // CRU_REGISTRY_HPP
