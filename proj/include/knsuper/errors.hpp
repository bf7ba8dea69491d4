#pragma once

#include <stdexcept>
#include <string>

namespace knsuper {

// Root of every error thrown by the library. `kind()` is a stable
// machine-readable tag used by the CLI reports.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define KNSUPER_DEFINE_ERROR(Name)                                  \
  class Name : public Error {                                       \
   public:                                                          \
    explicit Name(const std::string& what) : Error(#Name, what) {}  \
  };

KNSUPER_DEFINE_ERROR(DivisionByZero)
KNSUPER_DEFINE_ERROR(PoleAtSpecialization)
KNSUPER_DEFINE_ERROR(IncompatibleConfig)
KNSUPER_DEFINE_ERROR(StrayPole)
KNSUPER_DEFINE_ERROR(WeightMismatch)
KNSUPER_DEFINE_ERROR(InvalidFamilyForConfig)
KNSUPER_DEFINE_ERROR(ParityMismatch)
KNSUPER_DEFINE_ERROR(NonHomogeneousInput)
KNSUPER_DEFINE_ERROR(UnknownGenerator)
KNSUPER_DEFINE_ERROR(UnderdeterminedInterior)
KNSUPER_DEFINE_ERROR(NotFiniteDimensional)
KNSUPER_DEFINE_ERROR(ConfigError)
KNSUPER_DEFINE_ERROR(ResidualNonzero)
KNSUPER_DEFINE_ERROR(ParseError)
KNSUPER_DEFINE_ERROR(TypeError)

#undef KNSUPER_DEFINE_ERROR

}  // namespace knsuper
