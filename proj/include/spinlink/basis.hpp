#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace spinlink {

using cplx = std::complex<double>;

// Two excited nodes, 1-based, first < second.
struct NodePair {
  int first = 0;
  int second = 0;

  friend bool operator==(const NodePair&, const NodePair&) = default;
};

// Number of unordered node pairs of an n-node chain.
constexpr std::size_t pair_count(int n_nodes) {
  return n_nodes < 2 ? 0 : static_cast<std::size_t>(n_nodes) * static_cast<std::size_t>(n_nodes - 1) / 2;
}

// Lexicographic position of the pair (n, m), 1 <= n < m <= n_nodes.
constexpr std::size_t pair_index(int n, int m, int n_nodes) {
  const auto nn = static_cast<std::size_t>(n - 1);
  return nn * static_cast<std::size_t>(n_nodes) - nn * (nn + 1) / 2 + static_cast<std::size_t>(m - n - 1);
}

/// Zero-, one- and two-excitation basis of an N-node chain.
///
/// Layout of the full subspace index: 0 is the vacuum, 1..N are the single
/// excitations |k>, and N+1.. are the pairs |nm> in lexicographic order.
/// Node labels are 1-based.
class ExcitationBasis {
 public:
  explicit ExcitationBasis(int n_nodes);

  int n_nodes() const noexcept { return n_nodes_; }
  std::size_t dimension() const noexcept { return 1 + static_cast<std::size_t>(n_nodes_) + pairs_.size(); }
  std::size_t pair_count() const noexcept { return pairs_.size(); }

  // Throws on n >= m or nodes out of range.
  std::size_t pair_index(int n, int m) const;
  NodePair pair(std::size_t index) const;
  std::span<const NodePair> pairs() const noexcept { return pairs_; }

  std::size_t single_state(int k) const;
  std::size_t pair_state(int n, int m) const;

 private:
  int n_nodes_;
  std::vector<NodePair> pairs_;
};

// Requires n_nodes >= 4 so a 4-node sender and a 2-node receiver fit.
ExcitationBasis build_basis(int n_nodes);

/// Pure initial state of the sender: a0|0> + sum a_i|i> + sum a_nm|nm>.
///
/// `single` holds a_1..a_{N_S}; `pair` holds a_nm for n < m <= N_S in
/// lexicographic order. a0 is physically real; it is stored as complex so that
/// externally supplied states can be checked.
struct SenderState {
  int n_sender = 4;
  cplx a0 = 0.0;
  std::vector<cplx> single;
  std::vector<cplx> pair;

  explicit SenderState(int n_sender = 4);

  static SenderState vacuum(int n_sender = 4);

  cplx& a(int k) { return single.at(static_cast<std::size_t>(k - 1)); }
  cplx a(int k) const { return single.at(static_cast<std::size_t>(k - 1)); }
  cplx& a(int n, int m) { return pair.at(spinlink::pair_index(n, m, n_sender)); }
  cplx a(int n, int m) const { return pair.at(spinlink::pair_index(n, m, n_sender)); }

  double norm_squared() const;
};

// N_S^2 + N_S real scalars once a0 is real; one of them is fixed by normalization.
constexpr int real_parameter_count(int n_sender) { return n_sender * n_sender + n_sender; }

// Packs (a0, Re/Im a_i, Re/Im a_nm) into N_S^2 + N_S + 1 reals, and back.
std::vector<double> to_real_vector(const SenderState& s);
SenderState from_real_vector(std::span<const double> x, int n_sender);

inline constexpr double kNormTolerance = 1e-12;

// Throws NormViolation or a complex_vacuum_amplitude Error.
void validate_sender_state(const SenderState& s);

}  // namespace spinlink
