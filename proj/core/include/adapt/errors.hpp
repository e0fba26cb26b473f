#pragma once

#include <stdexcept>
#include <string>

namespace adapt {

enum class ErrorKind {
  DimensionMismatch,
  ShapeMismatch,
  EmptyDomain,
  NonFiniteEntry,
  ZeroCount,
  SingularPoint,
  StepTooLarge,
  NonFiniteObjective,
  RankDeficiency,
  UnlabeledSource,
  DegenerateData,
  ParseError,
  InconsistentWidth,
  EmptyTrainingSet,
  AnchorDimensionMismatch,
  InvalidArgument,
};

const char* to_string(ErrorKind kind);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message);
  ErrorKind kind() const noexcept { return kind_; }
  // The message without the kind prefix baked into what().
  const std::string& message() const noexcept { return message_; }

 private:
  ErrorKind kind_;
  std::string message_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

// Throws Error(kind, message) unless the condition holds.
void require(bool condition, ErrorKind kind, const std::string& message);

}  // namespace adapt
