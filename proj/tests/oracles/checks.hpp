#pragma once

#include <string>
#include <vector>

namespace oracle {

struct CheckLine {
  bool ok = false;
  std::string text;
};

// assemble_rho against partial_trace_oracle on random states (N = 7, 10, 20)
// and partial_trace_oracle against full 2^N evolution (N <= 10).
std::vector<CheckLine> oracle_equivalence(int states_per_size = 100, int full_space_instances = 12);

// Unitarity and composition of the propagators, validity of receiver states,
// the free-fermion spectrum identity, mirror symmetry of |p1| and
// reproducibility under fixed seeds.
std::vector<CheckLine> invariant_suite();

}  // namespace oracle
