#include "spinlink/hamiltonian.hpp"

#include <cmath>

#include <fmt/format.h>

#include "spinlink/error.hpp"

namespace spinlink {

ChainSpec::ChainSpec(std::vector<double> bonds) : bonds_(std::move(bonds)) {
  if (bonds_.empty()) throw Error(ErrorCode::invalid_chain_length, "chain needs at least one bond");
  for (std::size_t b = 0; b < bonds_.size(); ++b) {
    if (!(bonds_[b] > 0.0) || !std::isfinite(bonds_[b])) {
      throw Error(ErrorCode::invalid_argument, fmt::format("bond {} has non-positive coupling {}", b + 1, bonds_[b]));
    }
  }
}

ChainSpec ChainSpec::uniform(int n_nodes, double coupling) {
  if (n_nodes < 2) throw Error(ErrorCode::invalid_chain_length, fmt::format("{} nodes", n_nodes));
  return ChainSpec(std::vector<double>(static_cast<std::size_t>(n_nodes - 1), coupling));
}

ChainSpec ChainSpec::boundary_controlled(int n_nodes, double delta1, double delta2, std::vector<double> bulk) {
  if (n_nodes < kMinBoundaryControlledNodes) {
    throw Error(ErrorCode::invalid_chain_length,
                fmt::format("boundary-controlled layout needs at least {} nodes, got {}", kMinBoundaryControlledNodes,
                            n_nodes));
  }
  const auto n_bulk = static_cast<std::size_t>(bulk_bond_count(n_nodes));
  if (bulk.empty()) bulk.assign(n_bulk, 1.0);
  if (bulk.size() != n_bulk) {
    throw Error(ErrorCode::size_mismatch, fmt::format("expected {} bulk couplings, got {}", n_bulk, bulk.size()));
  }
  std::vector<double> bonds;
  bonds.reserve(static_cast<std::size_t>(n_nodes - 1));
  bonds.push_back(delta1);
  bonds.push_back(delta2);
  bonds.insert(bonds.end(), bulk.begin(), bulk.end());
  bonds.push_back(delta2);
  bonds.push_back(delta1);
  return ChainSpec(std::move(bonds));
}

ChainSpec ChainSpec::from_bonds(std::vector<double> bonds) { return ChainSpec(std::move(bonds)); }

std::vector<double> ChainSpec::bulk() const {
  if (n_nodes() < kMinBoundaryControlledNodes) return {};
  return {bonds_.begin() + 2, bonds_.end() - 2};
}

bool ChainSpec::is_mirror_symmetric() const {
  for (std::size_t b = 0; b < bonds_.size() / 2; ++b) {
    if (bonds_[b] != bonds_[bonds_.size() - 1 - b]) return false;
  }
  return true;
}

void to_json(nlohmann::json& j, const ChainSpec& spec) {
  const auto bonds = spec.bonds();
  const bool boundary_form = spec.n_nodes() >= kMinBoundaryControlledNodes && bonds[0] == bonds[bonds.size() - 1] &&
                             bonds[1] == bonds[bonds.size() - 2];
  if (boundary_form) {
    j = nlohmann::json{{"n", spec.n_nodes()}, {"delta1", spec.delta1()}, {"delta2", spec.delta2()},
                       {"bulk", spec.bulk()}};
  } else {
    j = nlohmann::json{{"n", spec.n_nodes()}, {"bonds", std::vector<double>(bonds.begin(), bonds.end())}};
  }
}

ChainSpec chain_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    if (j.contains("bonds")) {
      auto bonds = j.at("bonds").get<std::vector<double>>();
      if (bonds.size() + 1 != static_cast<std::size_t>(n)) {
        throw Error(ErrorCode::size_mismatch, fmt::format("{} bonds do not fit {} nodes", bonds.size(), n));
      }
      return ChainSpec::from_bonds(std::move(bonds));
    }
    std::vector<double> bulk;
    if (j.contains("bulk")) bulk = j.at("bulk").get<std::vector<double>>();
    return ChainSpec::boundary_controlled(n, j.at("delta1").get<double>(), j.at("delta2").get<double>(),
                                          std::move(bulk));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, fmt::format("malformed chain spec: {}", e.what()));
  }
}

void from_json(const nlohmann::json& j, ChainSpec& spec) { spec = chain_from_json(j); }

HamiltonianBlocks build_blocks(const ChainSpec& spec, const ExcitationBasis& basis, BlockSelection selection) {
  const int n = spec.n_nodes();
  if (n != basis.n_nodes()) {
    throw Error(ErrorCode::size_mismatch, fmt::format("chain has {} nodes, basis {}", n, basis.n_nodes()));
  }

  // (I_x I_x + I_y I_y) = (I^+ I^- + I^- I^+)/2 moves one excitation across
  // the bond with amplitude J/2.
  Eigen::MatrixXd h1 = Eigen::MatrixXd::Zero(n, n);
  for (int b = 1; b < n; ++b) {
    const double hop = 0.5 * spec.bond(b);
    h1(b - 1, b) = hop;
    h1(b, b - 1) = hop;
  }

  Eigen::MatrixXd h2;
  if (selection == BlockSelection::both) {
    const auto dim = static_cast<Eigen::Index>(basis.pair_count());
    h2 = Eigen::MatrixXd::Zero(dim, dim);
    // Hard-core: a move onto an occupied node is absent because pairs keep n < m.
    for (Eigen::Index row = 0; row < dim; ++row) {
      const auto [first, second] = basis.pair(static_cast<std::size_t>(row));
      auto couple = [&](int moved_from, int moved_to, int other) {
        if (moved_to < 1 || moved_to > n || moved_to == other) return;
        const int lo = std::min(moved_to, other);
        const int hi = std::max(moved_to, other);
        const auto col = static_cast<Eigen::Index>(basis.pair_index(lo, hi));
        h2(row, col) = 0.5 * spec.bond(std::min(moved_from, moved_to));
      };
      couple(first, first - 1, second);
      couple(first, first + 1, second);
      couple(second, second - 1, first);
      couple(second, second + 1, first);
    }
  }
  return {std::move(h1), std::move(h2), spec};
}

ChainSpec apply_disorder(const ChainSpec& spec, double epsilon, std::span<const double> deltas) {
  const int n = spec.n_nodes();
  if (n < kMinBoundaryControlledNodes) {
    throw Error(ErrorCode::invalid_chain_length, "disorder applies to boundary-controlled chains of at least 7 nodes");
  }
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::invalid_argument, fmt::format("epsilon must be >= 0, got {}", epsilon));
  if (deltas.size() != static_cast<std::size_t>(bulk_bond_count(n))) {
    throw Error(ErrorCode::size_mismatch,
                fmt::format("expected {} disorder values, got {}", bulk_bond_count(n), deltas.size()));
  }
  std::vector<double> bonds(spec.bonds().begin(), spec.bonds().end());
  for (std::size_t i = 0; i < deltas.size(); ++i) {
    if (!(std::abs(deltas[i]) <= 1.0)) {
      throw Error(ErrorCode::invalid_argument, fmt::format("disorder value {} outside [-1, 1]", deltas[i]));
    }
    bonds[i + 2] = 1.0 + epsilon * deltas[i];
  }
  return ChainSpec::from_bonds(std::move(bonds));
}

}  // namespace spinlink
