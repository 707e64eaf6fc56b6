#pragma once

#include <iosfwd>

#include <Eigen/Dense>

#include "spinlink/basis.hpp"
#include "spinlink/hamiltonian.hpp"

namespace spinlink {

// Eigen-decompositions of the one- and two-excitation blocks, H = V diag(e) V^T.
struct SpectralData {
  int n_nodes = 0;
  Eigen::VectorXd e1;
  Eigen::MatrixXd v1;
  Eigen::VectorXd e2;  // empty when the pair block was not built
  Eigen::MatrixXd v2;

  bool has_pairs() const noexcept { return e2.size() > 0; }
};

SpectralData diagonalize(const HamiltonianBlocks& blocks);

/// Transition amplitudes <i|exp(-iHt)|k> and <ij|exp(-iHt)|nm> at time t.
///
/// Only the columns of the source nodes 1..n_sources (and the pairs among
/// them) are stored: p1 is N x S and p2 is C(N,2) x C(S,2), with source pairs
/// in lexicographic order. With S = N both matrices are the full propagators.
struct TransferAmplitudes {
  double t = 0.0;
  int n_nodes = 0;
  int n_sources = 0;
  bool negative_time = false;
  Eigen::MatrixXcd p1;
  Eigen::MatrixXcd p2;

  bool is_full() const noexcept { return n_sources == n_nodes; }

  // 1-based nodes; the source side must lie within 1..n_sources.
  cplx single(int i, int k) const;
  cplx pair(int i, int j, int n, int m) const;
};

// Full N x N and C(N,2) x C(N,2) propagators; requires the pair block.
TransferAmplitudes propagators(const SpectralData& spectral, double t);

// Propagator columns for sources on nodes 1..n_sources only. The pair block is
// skipped when the spectral data has none.
TransferAmplitudes propagators(const SpectralData& spectral, double t, int n_sources);

struct EvolvedState {
  double f0 = 0.0;
  Eigen::VectorXcd f_single;  // f_i(t), i = 1..N
  Eigen::VectorXcd f_double;  // f_ij(t), lexicographic pairs

  double norm_squared() const;
};

EvolvedState evolve(const SenderState& s, const TransferAmplitudes& amps);

// CSV rows (row_label, col_label, re, im); labels are "i" for single
// excitations and "(n,m)" for pairs. Both blocks are written.
void write_amplitudes_csv(std::ostream& out, const TransferAmplitudes& amps);

}  // namespace spinlink
