#ifndef CRU_ERRORS_HPP
#define CRU_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cru {

struct CruError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct MalformedCallsign : CruError {
  using CruError::CruError;
};

struct UnknownDesignator : CruError {
  using CruError::CruError;
};

struct RegistryConflict : CruError {
  using CruError::CruError;
};

struct LengthMismatch : CruError {
  using CruError::CruError;
};

struct EmptyReference : CruError {
  using CruError::CruError;
};

struct CalibrationFailed : CruError {
  using CruError::CruError;
};

struct ConfigError : CruError {
  using CruError::CruError;
};

struct ProviderUnavailable : CruError {
  using CruError::CruError;
};

struct QuotaExceeded : CruError {
  using CruError::CruError;
};

struct MalformedResponse : CruError {
  using CruError::CruError;
};

}  // namespace cru

#endif  // CRU_ERRORS_HPP
