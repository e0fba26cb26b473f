#include "adapt/errors.hpp"

namespace adapt {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DimensionMismatch: return "dimension mismatch";
    case ErrorKind::ShapeMismatch: return "shape mismatch";
    case ErrorKind::EmptyDomain: return "empty domain";
    case ErrorKind::NonFiniteEntry: return "non-finite entry";
    case ErrorKind::ZeroCount: return "zero count";
    case ErrorKind::SingularPoint: return "singular point";
    case ErrorKind::StepTooLarge: return "step too large";
    case ErrorKind::NonFiniteObjective: return "non-finite objective";
    case ErrorKind::RankDeficiency: return "rank deficiency";
    case ErrorKind::UnlabeledSource: return "unlabeled source sample";
    case ErrorKind::DegenerateData: return "degenerate data";
    case ErrorKind::ParseError: return "parse error";
    case ErrorKind::InconsistentWidth: return "inconsistent row width";
    case ErrorKind::EmptyTrainingSet: return "empty training set";
    case ErrorKind::AnchorDimensionMismatch: return "anchor dimension mismatch";
    case ErrorKind::InvalidArgument: return "invalid argument";
  }
  return "unknown error";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message),
      kind_(kind),
      message_(message) {}

void fail(ErrorKind kind, const std::string& message) { throw Error(kind, message); }

void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) fail(kind, message);
}

}  // namespace adapt
