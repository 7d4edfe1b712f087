#include "solgeo/error.hpp"

namespace solgeo {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::DegenerateTangent: return "degenerate-tangent";
    case ErrorCode::ZeroLengthCurve: return "zero-length-curve";
    case ErrorCode::OutOfRange: return "out-of-range";
    case ErrorCode::BvpDivergence: return "bvp-divergence";
    case ErrorCode::DegenerateTriangle: return "degenerate-triangle";
    case ErrorCode::NoSignChange: return "no-sign-change";
    case ErrorCode::EndpointExcluded: return "endpoint-excluded";
    case ErrorCode::DegenerateConfiguration: return "degenerate-configuration";
  }
  return "unknown";
}

}  // namespace solgeo
