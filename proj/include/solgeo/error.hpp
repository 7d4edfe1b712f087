#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace solgeo {

enum class ErrorCode {
  InvalidArgument,
  DegenerateTangent,
  ZeroLengthCurve,
  OutOfRange,
  BvpDivergence,
  DegenerateTriangle,
  NoSignChange,
  EndpointExcluded,
  DegenerateConfiguration,
};

/// Stable kebab-case identifier, used in structured CLI errors.
std::string_view to_string(ErrorCode code);

class SolError : public std::runtime_error {
 public:
  SolError(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// No shooting start converged; carries the smallest endpoint mismatch seen.
class BvpDivergence : public SolError {
 public:
  BvpDivergence(const std::string& message, double best_residual)
      : SolError(ErrorCode::BvpDivergence, message), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace solgeo
