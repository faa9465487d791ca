#pragma once

#include <stdexcept>
#include <string>

namespace reeb {

/// Base for all domain errors. `name()` is the stable machine-readable
/// identifier surfaced by the CLI's structured error objects.
class Error : public std::runtime_error {
public:
    Error(std::string name, const std::string& message)
        : std::runtime_error(message), name_(std::move(name)) {}
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

#define REEB_DEFINE_ERROR(TYPE)                                           \
    class TYPE : public Error {                                           \
    public:                                                               \
        explicit TYPE(const std::string& message) : Error(#TYPE, message) {} \
    }

REEB_DEFINE_ERROR(IndistinguishableAtPrecision);
REEB_DEFINE_ERROR(MixedRegistries);
REEB_DEFINE_ERROR(DivisionByZero);
REEB_DEFINE_ERROR(NonPositiveInput);
REEB_DEFINE_ERROR(InvalidRegistry);
REEB_DEFINE_ERROR(InvalidSpectrum);
REEB_DEFINE_ERROR(InvalidSeifertInvariants);
REEB_DEFINE_ERROR(InvalidLensParameters);
REEB_DEFINE_ERROR(PreconditionViolated);
REEB_DEFINE_ERROR(InvalidModel);
REEB_DEFINE_ERROR(ManifoldMismatch);
REEB_DEFINE_ERROR(NotBesse);
REEB_DEFINE_ERROR(InvalidOrbitSet);
REEB_DEFINE_ERROR(ParseError);

#undef REEB_DEFINE_ERROR

}  // namespace reeb
