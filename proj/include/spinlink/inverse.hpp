#pragma once

#include <cstdint>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "spinlink/line_params.hpp"
#include "spinlink/receiver.hpp"

namespace spinlink {

/// Desired receiver density matrix A.
struct TargetState {
  Eigen::Matrix4cd A = Eigen::Matrix4cd::Zero();

  // diag((1-p)/4, (1+p)/4, (1+p)/4, (1-p)/4) with -p/2 between |N-1> and |N>.
  static TargetState werner(double p);

  // Throws invalid_target unless A is Hermitian, unit-trace and PSD, or when
  // allow_nonphysical is set.
  void validate(bool allow_nonphysical = false) const;
};

// {"werner": p} or {"re": [[...]], "im": [[...]]}.
TargetState target_from_json(const nlohmann::json& j);

// ||rho - A||_F / ||A||_F.
double discrepancy(const Eigen::Matrix4cd& rho, const TargetState& target);

enum class SolutionSelection {
  first_converged,     // lowest start index among converged starts
  closest_reference,   // converged start with the smallest discrepancy on the reference parameters
};

struct InverseOptions {
  int starts = 64;
  std::uint64_t seed = 1;
  double tolerance = 1e-10;  // max equation violation accepted as a solution
  int max_iterations = 300;
  int threads = 0;
  SolutionSelection selection = SolutionSelection::first_converged;
  // Parameters of the physical chain, when the solve runs on approximate ones.
  const LineParams* reference = nullptr;
};

struct InverseSolution {
  SenderState a;
  double residual = 0.0;       // max |equation violation| at a, recomputed from the solution
  double discrepancy = 0.0;    // against the target, on the solving parameters
  double rounded_discrepancy = 0.0;  // same with controls rounded to 5 decimals
  double reference_discrepancy = -1.0;  // on options.reference, or -1
  // solve_werner with a reference: reference discrepancy of every converged start, in start order.
  std::vector<double> start_reference_discrepancies;
  int start = -1;
  int converged_starts = 0;
};

// Rounds every control to `decimals` places.
SenderState round_controls(const SenderState& s, int decimals = 5);

// Real pair amplitudes only (a0 = a_i = 0); six equations for six unknowns.
// Throws InfeasibleTarget when no start reaches options.tolerance.
InverseSolution solve_werner(const LineParams& params, double p, const InverseOptions& options = {});

// Six Werner residuals at real pair controls x (pairs in lexicographic order).
std::array<double, 6> werner_residuals(const LineParams& params, double p, std::span<const double> x);

// Least squares on all N_S^2 + N_S + 1 reals of the sender state, kept on the
// unit sphere. Default 32 starts. Always returns the best start found.
InverseSolution solve_general(const LineParams& params, const TargetState& target, InverseOptions options = {});

struct FeasibilityResult {
  double boundary = 0.0;  // midpoint of [last_feasible, first_infeasible]
  double last_feasible = 0.0;
  double first_infeasible = 0.0;
  std::vector<double> grid;
  std::vector<bool> feasible;
};

inline constexpr double kFeasibilityTolerance = 1e-8;

// Classifies each grid p as feasible when solve_werner reaches 1e-8, then
// bisects between the last feasible and the first infeasible grid point.
FeasibilityResult feasibility_scan(const LineParams& params, std::span<const double> p_grid, double resolution = 1e-4,
                                   InverseOptions options = {});

}  // namespace spinlink
