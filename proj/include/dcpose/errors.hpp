#pragma once

#include <stdexcept>
#include <string>

namespace dcpose {

// Base for all domain errors so callers can catch one type at module
// boundaries (the CLI turns these into per-file diagnostics).
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define DCPOSE_ERROR_TYPE(Name)                                  \
  struct Name : Error {                                          \
    explicit Name(const std::string& msg) : Error(#Name ": " + msg) {} \
  }

DCPOSE_ERROR_TYPE(NonPositiveDepth);
DCPOSE_ERROR_TYPE(NotARotation);
DCPOSE_ERROR_TYPE(EmptyRender);
DCPOSE_ERROR_TYPE(DegenerateBBox);
DCPOSE_ERROR_TYPE(TooManyRegions);
DCPOSE_ERROR_TYPE(ShapeMismatch);
DCPOSE_ERROR_TYPE(TooFewCorrespondences);
DCPOSE_ERROR_TYPE(NoConsensus);
DCPOSE_ERROR_TYPE(NoValidLines);
DCPOSE_ERROR_TYPE(DivergedPose);
DCPOSE_ERROR_TYPE(SourceFailure);
DCPOSE_ERROR_TYPE(NoHypotheses);
DCPOSE_ERROR_TYPE(AllHypothesesFailed);
DCPOSE_ERROR_TYPE(ZeroGtTranslation);
DCPOSE_ERROR_TYPE(EmptyInput);
DCPOSE_ERROR_TYPE(IoError);
DCPOSE_ERROR_TYPE(ParseError);

#undef DCPOSE_ERROR_TYPE

}  // namespace dcpose
