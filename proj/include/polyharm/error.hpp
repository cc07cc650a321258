#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace polyharm {

enum class ErrorCode {
  MixedDimension,
  DuplicateSimplex,
  Disconnected,
  DanglingVertexRef,
  UnknownSimplex,
  UnknownVertex,
  NotSPD,
  PointOffComplex,
  DegenerateSimplex,
  PoleAtPoint,
  BallLeavesSimplex,
  NonpositiveEpsilon,
  TargetMetricSingular,
  ChartBoundary,
  NotAdmissible,
  SingularSystem,
  MissingBoundaryValues,
  NonConvergence,
  ImageLeftChart,
  DimensionMismatch,
  NotHolomorphic,
  NotKahler,
  NotACovering,
  DegreeMismatch,
  ZeroDenominatorPolynomial,
  UnknownSpec,
  InvalidArgument,
  FileFormat,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Raised by the nonlinear harmonic map solver; keeps the residual history.
class NonConvergenceError : public Error {
 public:
  NonConvergenceError(const std::string& what, std::vector<double> history);

  const std::vector<double>& history() const noexcept { return history_; }

 private:
  std::vector<double> history_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace polyharm
