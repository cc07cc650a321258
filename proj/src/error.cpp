#include "polyharm/error.hpp"

namespace polyharm {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::MixedDimension: return "MixedDimension";
    case ErrorCode::DuplicateSimplex: return "DuplicateSimplex";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::DanglingVertexRef: return "DanglingVertexRef";
    case ErrorCode::UnknownSimplex: return "UnknownSimplex";
    case ErrorCode::UnknownVertex: return "UnknownVertex";
    case ErrorCode::NotSPD: return "NotSPD";
    case ErrorCode::PointOffComplex: return "PointOffComplex";
    case ErrorCode::DegenerateSimplex: return "DegenerateSimplex";
    case ErrorCode::PoleAtPoint: return "PoleAtPoint";
    case ErrorCode::BallLeavesSimplex: return "BallLeavesSimplex";
    case ErrorCode::NonpositiveEpsilon: return "NonpositiveEpsilon";
    case ErrorCode::TargetMetricSingular: return "TargetMetricSingular";
    case ErrorCode::ChartBoundary: return "ChartBoundary";
    case ErrorCode::NotAdmissible: return "NotAdmissible";
    case ErrorCode::SingularSystem: return "SingularSystem";
    case ErrorCode::MissingBoundaryValues: return "MissingBoundaryValues";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::ImageLeftChart: return "ImageLeftChart";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotHolomorphic: return "NotHolomorphic";
    case ErrorCode::NotKahler: return "NotKahler";
    case ErrorCode::NotACovering: return "NotACovering";
    case ErrorCode::DegreeMismatch: return "DegreeMismatch";
    case ErrorCode::ZeroDenominatorPolynomial: return "ZeroDenominatorPolynomial";
    case ErrorCode::UnknownSpec: return "UnknownSpec";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::FileFormat: return "FileFormat";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

NonConvergenceError::NonConvergenceError(const std::string& what, std::vector<double> history)
    : Error(ErrorCode::NonConvergence, what), history_(std::move(history)) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace polyharm
