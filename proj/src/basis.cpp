#include "spinlink/basis.hpp"

#include <cmath>

#include <fmt/format.h>

#include "spinlink/error.hpp"

namespace spinlink {

const char* to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::invalid_argument: return "invalid-argument";
    case ErrorCode::invalid_chain_length: return "invalid-chain-length";
    case ErrorCode::size_mismatch: return "size-mismatch";
    case ErrorCode::norm_violation: return "norm-violation";
    case ErrorCode::complex_vacuum_amplitude: return "complex-vacuum-amplitude";
    case ErrorCode::eigensolver_failure: return "eigensolver-failure";
    case ErrorCode::no_arrival: return "no-arrival";
    case ErrorCode::sender_receiver_overlap: return "sender-receiver-overlap";
    case ErrorCode::incomplete_extraction: return "incomplete-extraction";
    case ErrorCode::ill_conditioned: return "ill-conditioned";
    case ErrorCode::infeasible_target: return "infeasible-target";
    case ErrorCode::zero_norm_target: return "zero-norm-target";
    case ErrorCode::invalid_target: return "invalid-target";
    case ErrorCode::unsupported_sender_size: return "unsupported-sender-size";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

NormViolation::NormViolation(double deviation)
    : Error(ErrorCode::norm_violation,
            fmt::format("squared norm deviates from 1 by {:.3e} (sum = {:.15g})", deviation, 1.0 + deviation)),
      deviation_(deviation) {}

ExcitationBasis::ExcitationBasis(int n_nodes) : n_nodes_(n_nodes) {
  if (n_nodes < 2) {
    throw Error(ErrorCode::invalid_chain_length, fmt::format("chain needs at least 2 nodes, got {}", n_nodes));
  }
  pairs_.reserve(spinlink::pair_count(n_nodes));
  for (int n = 1; n < n_nodes; ++n) {
    for (int m = n + 1; m <= n_nodes; ++m) pairs_.push_back({n, m});
  }
}

std::size_t ExcitationBasis::pair_index(int n, int m) const {
  if (n < 1 || m > n_nodes_ || n >= m) {
    throw Error(ErrorCode::invalid_argument, fmt::format("invalid pair ({},{}) for {} nodes", n, m, n_nodes_));
  }
  return spinlink::pair_index(n, m, n_nodes_);
}

NodePair ExcitationBasis::pair(std::size_t index) const {
  if (index >= pairs_.size()) {
    throw Error(ErrorCode::invalid_argument, fmt::format("pair index {} out of range", index));
  }
  return pairs_[index];
}

std::size_t ExcitationBasis::single_state(int k) const {
  if (k < 1 || k > n_nodes_) throw Error(ErrorCode::invalid_argument, fmt::format("node {} out of range", k));
  return static_cast<std::size_t>(k);
}

std::size_t ExcitationBasis::pair_state(int n, int m) const {
  return 1 + static_cast<std::size_t>(n_nodes_) + pair_index(n, m);
}

ExcitationBasis build_basis(int n_nodes) {
  if (n_nodes < 4) {
    throw Error(ErrorCode::invalid_chain_length,
                fmt::format("chain of {} nodes cannot host a 4-node sender and a 2-node receiver", n_nodes));
  }
  return ExcitationBasis(n_nodes);
}

SenderState::SenderState(int n)
    : n_sender(n), single(static_cast<std::size_t>(n), 0.0), pair(spinlink::pair_count(n), 0.0) {
  if (n < 1) throw Error(ErrorCode::invalid_argument, "sender needs at least one node");
}

SenderState SenderState::vacuum(int n_sender) {
  SenderState s(n_sender);
  s.a0 = 1.0;
  return s;
}

double SenderState::norm_squared() const {
  double sum = std::norm(a0);
  for (const auto& v : single) sum += std::norm(v);
  for (const auto& v : pair) sum += std::norm(v);
  return sum;
}

std::vector<double> to_real_vector(const SenderState& s) {
  std::vector<double> x;
  x.reserve(1 + 2 * (s.single.size() + s.pair.size()));
  x.push_back(s.a0.real());
  for (const auto& v : s.single) {
    x.push_back(v.real());
    x.push_back(v.imag());
  }
  for (const auto& v : s.pair) {
    x.push_back(v.real());
    x.push_back(v.imag());
  }
  return x;
}

SenderState from_real_vector(std::span<const double> x, int n_sender) {
  SenderState s(n_sender);
  const std::size_t expected = 1 + 2 * (s.single.size() + s.pair.size());
  if (x.size() != expected) {
    throw Error(ErrorCode::size_mismatch, fmt::format("expected {} reals, got {}", expected, x.size()));
  }
  std::size_t i = 0;
  s.a0 = x[i++];
  for (auto& v : s.single) {
    v = {x[i], x[i + 1]};
    i += 2;
  }
  for (auto& v : s.pair) {
    v = {x[i], x[i + 1]};
    i += 2;
  }
  return s;
}

void validate_sender_state(const SenderState& s) {
  if (s.single.size() != static_cast<std::size_t>(s.n_sender) || s.pair.size() != pair_count(s.n_sender)) {
    throw Error(ErrorCode::size_mismatch, "sender amplitude arrays do not match the sender size");
  }
  if (s.a0.imag() != 0.0) {
    throw Error(ErrorCode::complex_vacuum_amplitude, fmt::format("a0 must be real, has imaginary part {}", s.a0.imag()));
  }
  const double deviation = s.norm_squared() - 1.0;
  if (std::abs(deviation) > kNormTolerance) throw NormViolation(deviation);
}

}  // namespace spinlink
