#pragma once

#include <stdexcept>
#include <string>

namespace dfforge {

/// Base of every error raised by the library. `kind()` is the stable name used in
/// reports and CLI diagnostics.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(kind + ": " + what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define DFFORGE_ERROR(Name)                                                  \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(#Name, what) {}         \
  }

DFFORGE_ERROR(RegionError);
DFFORGE_ERROR(NumericalError);
DFFORGE_ERROR(DomainError);
DFFORGE_ERROR(NoConvergence);
DFFORGE_ERROR(DegenerateGradient);
DFFORGE_ERROR(SamplingError);
DFFORGE_ERROR(InteriorError);
DFFORGE_ERROR(HypothesisError);
DFFORGE_ERROR(TransversalityError);
DFFORGE_ERROR(ProjectionAmbiguous);
DFFORGE_ERROR(TubeError);
DFFORGE_ERROR(ParamError);
DFFORGE_ERROR(PlacementError);
DFFORGE_ERROR(SeriesMissing);
DFFORGE_ERROR(UsageError);

#undef DFFORGE_ERROR

}  // namespace dfforge
