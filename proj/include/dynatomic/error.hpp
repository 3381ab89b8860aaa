#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace dynatomic {

enum class ErrorKind {
  InvalidArgument,
  DegreeMismatch,
  NotPeriodic,
  ZeroAngle,
  NotMaximal,
  PeriodOne,
  BoundaryHit,
  SpecialAngle,
  NotCandidate,
  PeriodDrop,
  NotPrimitive,
  NotExactPeriod,
  BudgetExceeded,
  NonConvergence,
  MultiplierMismatch,
  ClusterAmbiguous,
  Bifurcation,
  NewtonDivergence,
  DoublePoleAtZero,
  NearCriticalValue,
  DoublePoleInRegion,
  RegionNotCompactlyContained,
  NotParabolic,
  MultiplierOne,
  PoleCollision,
  UnmatchedRoot,
  LabelConflict,
  TrackingAmbiguity,
  StepUnderflow,
  Internal,
};

std::string_view to_string(ErrorKind kind);

/// All library failures are reported through this exception; `kind()` is the
/// machine-readable reason.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

}  // namespace dynatomic
