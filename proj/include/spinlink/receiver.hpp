#pragma once

#include <array>
#include <initializer_list>
#include <vector>

#include <Eigen/Dense>

#include "spinlink/basis.hpp"
#include "spinlink/dynamics.hpp"
#include "spinlink/line_params.hpp"

namespace spinlink {

/// Two-qubit state of nodes N-1, N in the basis {|0>, |N-1>, |N>, |(N-1)N>}.
struct ReceiverState {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();

  double trace_deviation() const;
  double hermiticity_error() const;
  double min_eigenvalue() const;
  // Hermitian and unit trace within `tol`, eigenvalues >= -psd_tol.
  bool is_valid(double tol = 1e-10, double psd_tol = 1e-9) const;
};

// Evaluates the line parameters from propagator columns. Requires the pair
// block and n_sender <= N - 2.
LineParams compute_line_params(const TransferAmplitudes& amps, int n_sender);

// Receiver state for sender state `s`; rho_00 is the complement of the other
// diagonal entries. The sender state is not validated here.
ReceiverState assemble_rho(const LineParams& params, const SenderState& s);

// Same bilinear form with rho_00 = |s|^2 - (other diagonals), so the result
// scales as |s|^2 for unnormalised s.
Eigen::Matrix4cd assemble_rho_homogeneous(const LineParams& params, const SenderState& s);

// Evolves the state in the full excitation basis and traces out nodes
// 1..N-2 by summing over their excitation patterns.
ReceiverState partial_trace_oracle(const SenderState& s, const TransferAmplitudes& amps, const ExcitationBasis& basis);

struct FamilyRange {
  std::size_t count = 0;
  double min_abs = 0.0;
  double max_abs = 0.0;
};

struct FamilyReport {
  std::vector<Family> tags;  // one per parameter, canonical order
  std::array<FamilyRange, 3> ranges{};

  const FamilyRange& range(Family f) const { return ranges[static_cast<std::size_t>(f)]; }
};

// Members of the near-unity and intermediate families; everything else is
// Family III. Defined for a four-node sender.
std::span<const ParamKey> family_one_keys();
std::span<const ParamKey> family_two_keys();

FamilyReport classify_families(const LineParams& params);

// Copy of params with every entry outside `keep` set to zero.
LineParams keep_families(const LineParams& params, const FamilyReport& report, std::initializer_list<Family> keep);

// Full pipeline for one chain: blocks, spectra, propagator columns of the
// sender and the line parameters at time t.
LineParams line_params_for_chain(const ChainSpec& spec, double t, int n_sender = 4);

}  // namespace spinlink
