#pragma once

#include <cstdint>
#include <random>

#include <Eigen/Dense>

#include "spinlink/basis.hpp"
#include "spinlink/hamiltonian.hpp"

namespace oracle {

// XY chain on the full 2^N space; bit i-1 of a state index is node i.
class FullSpaceChain {
 public:
  explicit FullSpaceChain(const spinlink::ChainSpec& spec);

  int n_nodes() const { return n_; }
  const Eigen::MatrixXd& hamiltonian() const { return h_; }

  // exp(-iHt) applied to the embedded sender state.
  Eigen::VectorXcd evolve(const spinlink::SenderState& s, double t) const;

  // State of nodes N-1, N in the order {|0>, |N-1>, |N>, |(N-1)N>}.
  Eigen::Matrix4cd receiver_rho(const spinlink::SenderState& s, double t) const;

 private:
  int n_;
  Eigen::MatrixXd h_;
  Eigen::VectorXd energies_;
  Eigen::MatrixXd vectors_;
};

// Normalised sender state with a real non-negative a0 and Gaussian components.
spinlink::SenderState random_sender(std::mt19937_64& rng, int n_sender = 4);

}  // namespace oracle
