#pragma once

#include <stdexcept>
#include <string>

namespace spinlink {

enum class ErrorCode {
  invalid_argument,
  invalid_chain_length,
  size_mismatch,
  norm_violation,
  complex_vacuum_amplitude,
  eigensolver_failure,
  no_arrival,
  sender_receiver_overlap,
  incomplete_extraction,
  ill_conditioned,
  infeasible_target,
  zero_norm_target,
  invalid_target,
  unsupported_sender_size,
  io,
};

const char* to_string(ErrorCode code);

// Base of every error raised by the library. The code decides how the CLI
// maps a failure onto an exit status.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class NormViolation : public Error {
 public:
  explicit NormViolation(double deviation);

  // Signed deviation of the squared norm from one.
  double deviation() const noexcept { return deviation_; }

 private:
  double deviation_;
};

// No start of a multi-start solve reached the acceptance tolerance.
class InfeasibleTarget : public Error {
 public:
  InfeasibleTarget(const std::string& what, double best_residual)
      : Error(ErrorCode::infeasible_target, what), best_residual_(best_residual) {}

  double best_residual() const noexcept { return best_residual_; }

 private:
  double best_residual_;
};

}  // namespace spinlink
