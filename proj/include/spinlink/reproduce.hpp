#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "spinlink/disorder.hpp"
#include "spinlink/line_params.hpp"

namespace spinlink {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  std::vector<std::string> details;
};

// Parameters of the published boundary-controlled chain (N = 20 or 60) at its
// published t0. Cached per process.
const LineParams& published_chain_params(int n_nodes);

CriterionResult check_boundary_optimization(std::span<const int> sizes, int threads = 0);
CriterionResult check_family_one(std::span<const int> sizes);
CriterionResult check_family_two(std::span<const int> sizes);
CriterionResult check_appendix();
CriterionResult check_probe_closure(std::uint64_t seed);

struct WernerReproduction {
  CriterionResult result;
  std::vector<WernerControl> controls;  // full-parameter solutions, p = 0, 0.1, ..., 0.8
};

WernerReproduction check_werner_creation(std::uint64_t seed, int threads = 0);
CriterionResult check_disorder(std::span<const WernerControl> controls, std::uint64_t seed,
                               int n_chains = kDefaultChainCount, int threads = 0);

struct ReproduceOptions {
  int n_nodes = 20;
  std::uint64_t seed = 7;
  int threads = 0;
  int n_chains = kDefaultChainCount;
  bool include_disorder = true;
};

// Runs every check that applies to n_nodes (the appendix, Werner and
// disorder checks exist only for N = 20).
std::vector<CriterionResult> reproduce_paper(const ReproduceOptions& options);

void print_report(std::ostream& out, std::span<const CriterionResult> results);

}  // namespace spinlink
