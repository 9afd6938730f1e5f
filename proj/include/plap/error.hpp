#pragma once

#include <optional>
#include <stdexcept>
#include <string>

namespace plap {

enum class ErrorKind {
  InvalidArgument,
  NonConcaveData,
  BadRadius,
  NonConvexPolygon,
  ResolutionTooCoarse,
  OutsideDomain,
  DegeneratePoint,
  IncompleteStencil,
  SupportViolation,
  NonMonotone,
  StripTooWide,
  WrongBranch,
  GradientBoundViolated,
  CflViolation,
  NegativeHeight,
  DegenerateFront,
  StencilFailure,
  ConvexityLost,
  NotStrictlyNegative,
  InitialNestingViolated,
  ParseError,
  SchemaError,
  RangeError,
  IoError,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& msg, std::optional<double> time = std::nullopt);

  ErrorKind kind() const { return kind_; }
  // Simulated time of the failing step, when the error came from a solver.
  std::optional<double> time() const { return time_; }
  const std::string& detail() const { return detail_; }

  Error at_time(double t) const { return Error(kind_, detail_, t); }

 private:
  ErrorKind kind_;
  std::string detail_;
  std::optional<double> time_;
};

}  // namespace plap
