#pragma once

#include <stdexcept>
#include <string>

namespace convexa {

// Typed error hierarchy. The names mirror the error contracts of the public
// operations; the CLI maps them to structured stderr JSON and exit codes.
struct Error : std::runtime_error {
  std::string code;
  Error(std::string c, const std::string& msg)
      : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

#define CONVEXA_ERROR(Name)                                  \
  struct Name : Error {                                      \
    explicit Name(const std::string& msg) : Error(#Name, msg) {} \
  }

CONVEXA_ERROR(InvalidPoint);
CONVEXA_ERROR(NonUniqueGeodesic);
CONVEXA_ERROR(PointNotOnSegment);
CONVEXA_ERROR(ArmsOverlap);
CONVEXA_ERROR(BadEndpoints);
CONVEXA_ERROR(NotATree);
CONVEXA_ERROR(DegenerateBounds);
CONVEXA_ERROR(NotConnected);
CONVEXA_ERROR(CannotCover);
CONVEXA_ERROR(NoChain);
CONVEXA_ERROR(HullNotFinitelyRepresentable);
CONVEXA_ERROR(NotLocallyOpen);
CONVEXA_ERROR(NotEtale);
CONVEXA_ERROR(HypothesisFailed);
CONVEXA_ERROR(ResolutionTooCoarse);
CONVEXA_ERROR(SchemaError);
CONVEXA_ERROR(InternalError);

#undef CONVEXA_ERROR

}  // namespace convexa
