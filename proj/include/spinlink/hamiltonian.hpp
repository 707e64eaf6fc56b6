#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "spinlink/basis.hpp"

namespace spinlink {

/// Nearest-neighbour XY chain described by its N-1 bond couplings.
///
/// Bond b (1-based) joins nodes b and b+1. The boundary-controlled layout is
/// [delta1, delta2, D_3, ..., D_{N-3}, delta2, delta1]; the D_i are the bulk
/// bonds and default to 1.
class ChainSpec {
 public:
  static ChainSpec uniform(int n_nodes, double coupling = 1.0);
  // Requires n_nodes >= 7; `bulk` is empty (all ones) or has n_nodes - 5 entries.
  static ChainSpec boundary_controlled(int n_nodes, double delta1, double delta2, std::vector<double> bulk = {});
  static ChainSpec from_bonds(std::vector<double> bonds);

  int n_nodes() const noexcept { return static_cast<int>(bonds_.size()) + 1; }
  std::span<const double> bonds() const noexcept { return bonds_; }
  double bond(int b) const { return bonds_.at(static_cast<std::size_t>(b - 1)); }

  double delta1() const { return bonds_.front(); }
  double delta2() const { return bonds_.at(1); }
  std::vector<double> bulk() const;

  // True when the bonds mirror around the chain centre.
  bool is_mirror_symmetric() const;

  friend bool operator==(const ChainSpec&, const ChainSpec&) = default;

 private:
  explicit ChainSpec(std::vector<double> bonds);

  std::vector<double> bonds_;
};

// Bulk bonds are those with index 3..N-3.
constexpr int bulk_bond_count(int n_nodes) { return n_nodes - 5; }
constexpr int kMinBoundaryControlledNodes = 7;

void to_json(nlohmann::json& j, const ChainSpec& spec);
void from_json(const nlohmann::json& j, ChainSpec& spec);
ChainSpec chain_from_json(const nlohmann::json& j);

enum class BlockSelection { single_excitation, both };

struct HamiltonianBlocks {
  Eigen::MatrixXd h1;  // N x N
  Eigen::MatrixXd h2;  // C(N,2) x C(N,2); empty for BlockSelection::single_excitation
  ChainSpec spec;
};

HamiltonianBlocks build_blocks(const ChainSpec& spec, const ExcitationBasis& basis,
                               BlockSelection selection = BlockSelection::both);

// D_i = 1 + epsilon * deltas[i - 3] on the bulk bonds; boundary pairs untouched.
ChainSpec apply_disorder(const ChainSpec& spec, double epsilon, std::span<const double> deltas);

}  // namespace spinlink
