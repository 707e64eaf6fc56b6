#include "spinlink/inverse.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <fmt/format.h>

#include "spinlink/error.hpp"
#include "spinlink/parallel.hpp"

namespace spinlink {
namespace {

using Eigen::MatrixXd;
using Eigen::VectorXd;

struct LmResult {
  VectorXd x;
  double max_abs = std::numeric_limits<double>::infinity();
};

// Levenberg-Marquardt with a scaled identity damping. `eval(x, r, J)` fills
// the residual and Jacobian. With `unit_sphere` every accepted iterate is
// projected back onto |x| = 1.
template <class Eval>
LmResult levenberg_marquardt(Eval&& eval, VectorXd x, int max_iterations, double tolerance, bool unit_sphere) {
  if (unit_sphere) x.normalize();
  VectorXd r;
  MatrixXd jac;
  eval(x, r, jac);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  for (int iter = 0; iter < max_iterations && r.cwiseAbs().maxCoeff() >= tolerance; ++iter) {
    const MatrixXd h = jac.transpose() * jac;
    const VectorXd g = jac.transpose() * r;
    bool accepted = false;
    while (lambda < 1e12) {
      MatrixXd damped = h;
      damped.diagonal().array() += lambda * std::max(1.0, h.diagonal().maxCoeff());
      VectorXd trial = x - damped.ldlt().solve(g);
      if (unit_sphere) trial.normalize();
      VectorXd r_trial;
      MatrixXd j_trial;
      eval(trial, r_trial, j_trial);
      const double c_trial = r_trial.squaredNorm();
      if (std::isfinite(c_trial) && c_trial < cost) {
        x = std::move(trial);
        r = std::move(r_trial);
        jac = std::move(j_trial);
        cost = c_trial;
        lambda = std::max(lambda / 3.0, 1e-15);
        accepted = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!accepted) break;
  }
  return {x, r.cwiseAbs().maxCoeff()};
}

VectorXd random_unit_vector(Eigen::Index n, std::uint64_t seed, int start) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(start)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal;
  VectorXd x(n);
  for (Eigen::Index i = 0; i < n; ++i) x[i] = normal(rng);
  return x.normalized();
}

SenderState pair_controls(std::span<const double> x, int n_sender) {
  SenderState s(n_sender);
  for (std::size_t a = 0; a < s.pair.size(); ++a) s.pair[a] = x[a];
  return s;
}

void werner_system(const LineParams& params, double p, const VectorXd& x, VectorXd& r, MatrixXd& jac) {
  const auto c = static_cast<int>(x.size());
  cplx f{0.0, 0.0}, q_mm{0.0, 0.0}, q_mn{0.0, 0.0}, q_nn{0.0, 0.0};
  Eigen::VectorXcd g_mm = Eigen::VectorXcd::Zero(c), g_mn = Eigen::VectorXcd::Zero(c), g_nn = Eigen::VectorXcd::Zero(c);
  for (int a = 0; a < c; ++a) {
    f += params.p_pair(a) * x[a];
    for (int b = 0; b < c; ++b) {
      q_mm += params.P_mm(a, b) * x[a] * x[b];
      q_mn += params.P_mN(a, b) * x[a] * x[b];
      q_nn += params.P_NN(a, b) * x[a] * x[b];
      g_mm[a] += (params.P_mm(a, b) + params.P_mm(b, a)) * x[b];
      g_mn[a] += (params.P_mN(a, b) + params.P_mN(b, a)) * x[b];
      g_nn[a] += (params.P_NN(a, b) + params.P_NN(b, a)) * x[b];
    }
  }
  r.resize(6);
  r << std::norm(f) - (1.0 - p) / 4.0, q_mm.real() - (1.0 + p) / 4.0, q_nn.real() - (1.0 + p) / 4.0,
      q_mn.real() + p / 2.0, q_mn.imag(), x.squaredNorm() - 1.0;
  jac.resize(6, c);
  for (int a = 0; a < c; ++a) {
    jac(0, a) = 2.0 * (std::conj(f) * params.p_pair(a)).real();
    jac(1, a) = g_mm[a].real();
    jac(2, a) = g_nn[a].real();
    jac(3, a) = g_mn[a].real();
    jac(4, a) = g_mn[a].imag();
    jac(5, a) = 2.0 * x[a];
  }
}

// Hermitian 4x4 as 16 reals: diagonal, then Re/Im of the upper triangle.
VectorXd flatten(const Eigen::Matrix4cd& m) {
  VectorXd v(16);
  int q = 0;
  for (int i = 0; i < 4; ++i) v[q++] = m(i, i).real();
  for (int i = 0; i < 4; ++i) {
    for (int j = i + 1; j < 4; ++j) {
      v[q++] = m(i, j).real();
      v[q++] = m(i, j).imag();
    }
  }
  return v;
}

double max_entry(const Eigen::Matrix4cd& m) { return m.cwiseAbs().maxCoeff(); }

struct StartOutcome {
  VectorXd x;
  double residual = std::numeric_limits<double>::infinity();
};

// Picks the winning start; `score` ranks converged starts for closest_reference.
template <class Score>
int select_start(const std::vector<StartOutcome>& runs, double tolerance, SolutionSelection selection, Score&& score,
                 int& converged) {
  converged = 0;
  int chosen = -1;
  double best_score = std::numeric_limits<double>::infinity();
  for (int s = 0; s < static_cast<int>(runs.size()); ++s) {
    if (!(runs[static_cast<std::size_t>(s)].residual < tolerance)) continue;
    ++converged;
    if (selection == SolutionSelection::first_converged) {
      if (chosen < 0) chosen = s;
      continue;
    }
    const double v = score(runs[static_cast<std::size_t>(s)].x);
    if (v < best_score) {
      best_score = v;
      chosen = s;
    }
  }
  return chosen;
}

}  // namespace

TargetState TargetState::werner(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw Error(ErrorCode::invalid_target, fmt::format("Werner p = {} outside [0, 1]", p));
  TargetState t;
  t.A(0, 0) = t.A(3, 3) = (1.0 - p) / 4.0;
  t.A(1, 1) = t.A(2, 2) = (1.0 + p) / 4.0;
  t.A(1, 2) = t.A(2, 1) = -p / 2.0;
  return t;
}

void TargetState::validate(bool allow_nonphysical) const {
  if (allow_nonphysical) return;
  ReceiverState r{A};
  if (r.hermiticity_error() > 1e-10) throw Error(ErrorCode::invalid_target, "target is not Hermitian");
  if (r.trace_deviation() > 1e-10) throw Error(ErrorCode::invalid_target, "target trace differs from 1");
  if (r.min_eigenvalue() < -1e-9) throw Error(ErrorCode::invalid_target, "target has a negative eigenvalue");
}

TargetState target_from_json(const nlohmann::json& j) {
  try {
    if (j.contains("werner")) return TargetState::werner(j.at("werner").get<double>());
    const auto re = j.at("re").get<std::vector<std::vector<double>>>();
    const auto im = j.contains("im") ? j.at("im").get<std::vector<std::vector<double>>>()
                                     : std::vector<std::vector<double>>(4, std::vector<double>(4, 0.0));
    if (re.size() != 4 || im.size() != 4) throw Error(ErrorCode::invalid_target, "target must be 4x4");
    TargetState t;
    for (int r = 0; r < 4; ++r) {
      if (re[r].size() != 4 || im[r].size() != 4) throw Error(ErrorCode::invalid_target, "target must be 4x4");
      for (int c = 0; c < 4; ++c) t.A(r, c) = {re[r][c], im[r][c]};
    }
    return t;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_target, fmt::format("malformed target: {}", e.what()));
  }
}

double discrepancy(const Eigen::Matrix4cd& rho, const TargetState& target) {
  const double norm = target.A.norm();
  if (norm == 0.0) throw Error(ErrorCode::zero_norm_target, "target matrix has zero norm");
  return (rho - target.A).norm() / norm;
}

SenderState round_controls(const SenderState& s, int decimals) {
  const double scale = std::pow(10.0, decimals);
  auto round = [&](cplx v) { return cplx{std::round(v.real() * scale) / scale, std::round(v.imag() * scale) / scale}; };
  SenderState out = s;
  out.a0 = round(s.a0);
  for (auto& v : out.single) v = round(v);
  for (auto& v : out.pair) v = round(v);
  return out;
}

std::array<double, 6> werner_residuals(const LineParams& params, double p, std::span<const double> x) {
  if (x.size() != pair_count(params.n_sender())) {
    throw Error(ErrorCode::size_mismatch, fmt::format("{} pair controls for a {}-node sender", x.size(), params.n_sender()));
  }
  VectorXd r;
  MatrixXd jac;
  werner_system(params, p, Eigen::Map<const VectorXd>(x.data(), static_cast<Eigen::Index>(x.size())), r, jac);
  return {r[0], r[1], r[2], r[3], r[4], r[5]};
}

InverseSolution solve_werner(const LineParams& params, double p, const InverseOptions& options) {
  const TargetState target = TargetState::werner(p);
  if (options.starts < 1) throw Error(ErrorCode::invalid_argument, "at least one start is required");
  const auto c = static_cast<Eigen::Index>(pair_count(params.n_sender()));
  auto eval = [&](const VectorXd& x, VectorXd& r, MatrixXd& jac) { werner_system(params, p, x, r, jac); };

  std::vector<StartOutcome> runs(static_cast<std::size_t>(options.starts));
  parallel_for(
      runs.size(),
      [&](std::size_t s) {
        auto res = levenberg_marquardt(eval, random_unit_vector(c, options.seed, static_cast<int>(s)),
                                       options.max_iterations, options.tolerance, false);
        runs[s] = {res.x, res.max_abs};
      },
      options.threads);

  auto reference_score = [&](const VectorXd& x) {
    const LineParams& ref = options.reference != nullptr ? *options.reference : params;
    return discrepancy(assemble_rho(ref, pair_controls({x.data(), static_cast<std::size_t>(c)}, params.n_sender())).rho,
                       target);
  };
  int converged = 0;
  const int chosen = select_start(runs, options.tolerance, options.selection, reference_score, converged);
  if (chosen < 0) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& run : runs) best = std::min(best, run.residual);
    throw InfeasibleTarget(fmt::format("no Werner solution for p = {} (best residual {:.3e})", p, best), best);
  }

  const VectorXd& x = runs[static_cast<std::size_t>(chosen)].x;
  InverseSolution out;
  out.a = pair_controls({x.data(), static_cast<std::size_t>(c)}, params.n_sender());
  const auto res = werner_residuals(params, p, {x.data(), static_cast<std::size_t>(c)});
  out.residual = 0.0;
  for (double v : res) out.residual = std::max(out.residual, std::abs(v));
  out.discrepancy = discrepancy(assemble_rho(params, out.a).rho, target);
  out.rounded_discrepancy = discrepancy(assemble_rho(params, round_controls(out.a)).rho, target);
  if (options.reference != nullptr) {
    out.reference_discrepancy = discrepancy(assemble_rho(*options.reference, out.a).rho, target);
    for (const auto& run : runs) {
      if (run.residual < options.tolerance) out.start_reference_discrepancies.push_back(reference_score(run.x));
    }
  }
  out.start = chosen;
  out.converged_starts = converged;
  return out;
}

InverseSolution solve_general(const LineParams& params, const TargetState& target, InverseOptions options) {
  if (options.starts < 1) throw Error(ErrorCode::invalid_argument, "at least one start is required");
  const int ns = params.n_sender();
  const auto n = static_cast<Eigen::Index>(real_parameter_count(ns) + 1);
  const VectorXd goal = flatten(target.A);

  auto quadratic = [&](const VectorXd& x) {
    return flatten(assemble_rho_homogeneous(params, from_real_vector({x.data(), static_cast<std::size_t>(n)}, ns)));
  };
  // The receiver matrix is a real quadratic form Q in x, so the central
  // difference with unit step is its exact derivative. On |x| = 1 the
  // normalised map Q(x)/|x|^2 has derivative Q_j - 2 x_j Q.
  auto eval = [&](const VectorXd& x, VectorXd& r, MatrixXd& jac) {
    const VectorXd q = quadratic(x);
    r = q - goal;
    jac.resize(16, n);
    VectorXd step = x;
    for (Eigen::Index j = 0; j < n; ++j) {
      step[j] = x[j] + 1.0;
      const VectorXd plus = quadratic(step);
      step[j] = x[j] - 1.0;
      const VectorXd minus = quadratic(step);
      step[j] = x[j];
      jac.col(j) = 0.5 * (plus - minus) - 2.0 * x[j] * q;
    }
  };

  std::vector<StartOutcome> runs(static_cast<std::size_t>(options.starts));
  parallel_for(
      runs.size(),
      [&](std::size_t s) {
        auto res = levenberg_marquardt(eval, random_unit_vector(n, options.seed, static_cast<int>(s)),
                                       options.max_iterations, options.tolerance, true);
        runs[s] = {res.x, res.max_abs};
      },
      options.threads);

  // Lowest residual wins; the strict comparison keeps the lowest start index on ties.
  int chosen = 0;
  int converged = 0;
  for (int s = 0; s < static_cast<int>(runs.size()); ++s) {
    if (runs[static_cast<std::size_t>(s)].residual < options.tolerance) ++converged;
    if (runs[static_cast<std::size_t>(s)].residual < runs[static_cast<std::size_t>(chosen)].residual) chosen = s;
  }
  const VectorXd& x = runs[static_cast<std::size_t>(chosen)].x;
  InverseSolution out;
  out.a = from_real_vector({x.data(), static_cast<std::size_t>(n)}, ns);
  const Eigen::Matrix4cd rho = assemble_rho(params, out.a).rho;
  out.residual = max_entry(rho - target.A);
  out.discrepancy = discrepancy(rho, target);
  out.rounded_discrepancy = discrepancy(assemble_rho(params, round_controls(out.a)).rho, target);
  if (options.reference != nullptr) {
    out.reference_discrepancy = discrepancy(assemble_rho(*options.reference, out.a).rho, target);
  }
  out.start = chosen;
  out.converged_starts = converged;
  return out;
}

FeasibilityResult feasibility_scan(const LineParams& params, std::span<const double> p_grid, double resolution,
                                   InverseOptions options) {
  if (p_grid.empty()) throw Error(ErrorCode::invalid_argument, "empty p grid");
  for (std::size_t i = 1; i < p_grid.size(); ++i) {
    if (!(p_grid[i] > p_grid[i - 1])) throw Error(ErrorCode::invalid_argument, "p grid must be increasing");
  }
  if (!(resolution > 0.0)) throw Error(ErrorCode::invalid_argument, "resolution must be positive");
  options.tolerance = kFeasibilityTolerance;
  options.selection = SolutionSelection::first_converged;
  options.reference = nullptr;
  auto feasible = [&](double p) {
    try {
      solve_werner(params, p, options);
      return true;
    } catch (const InfeasibleTarget&) {
      return false;
    }
  };

  FeasibilityResult out;
  out.grid.assign(p_grid.begin(), p_grid.end());
  for (double p : p_grid) out.feasible.push_back(feasible(p));

  const auto first_bad = std::find(out.feasible.begin(), out.feasible.end(), false);
  if (first_bad == out.feasible.begin()) {
    out.last_feasible = out.first_infeasible = out.boundary = p_grid.front();
    return out;
  }
  if (first_bad == out.feasible.end()) {
    out.last_feasible = out.first_infeasible = out.boundary = p_grid.back();
    return out;
  }
  const auto i = static_cast<std::size_t>(first_bad - out.feasible.begin());
  double lo = p_grid[i - 1];
  double hi = p_grid[i];
  while (hi - lo > resolution) {
    const double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  out.last_feasible = lo;
  out.first_infeasible = hi;
  out.boundary = 0.5 * (lo + hi);
  return out;
}

}  // namespace spinlink
