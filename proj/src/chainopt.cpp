#include "spinlink/chainopt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include <fmt/format.h>

#include "spinlink/error.hpp"
#include "spinlink/kernels.hpp"
#include "spinlink/parallel.hpp"

namespace spinlink {
namespace {

constexpr std::size_t kScanChunk = 512;
constexpr double kGoldenTolerance = 1e-9;

struct EndToEnd {
  std::vector<double> weights;
  std::vector<double> energies;

  explicit EndToEnd(const SpectralData& spectral) {
    const auto n = spectral.e1.size();
    weights.resize(static_cast<std::size_t>(n));
    energies.resize(static_cast<std::size_t>(n));
    for (Eigen::Index k = 0; k < n; ++k) {
      weights[static_cast<std::size_t>(k)] = spectral.v1(n - 1, k) * spectral.v1(0, k);
      energies[static_cast<std::size_t>(k)] = spectral.e1[k];
    }
  }

  double operator()(double t) const {
    double re = 0.0;
    double im = 0.0;
    for (std::size_t k = 0; k < weights.size(); ++k) {
      re += weights[k] * std::cos(energies[k] * t);
      im -= weights[k] * std::sin(energies[k] * t);
    }
    return std::hypot(re, im);
  }
};

double golden_maximum(const EndToEnd& f, double lo, double hi, double& best_t) {
  const double ratio = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = hi - ratio * (hi - lo);
  double x2 = lo + ratio * (hi - lo);
  double f1 = f(x1);
  double f2 = f(x2);
  while (hi - lo > kGoldenTolerance) {
    if (f1 < f2) {
      lo = x1;
      x1 = x2;
      f1 = f2;
      x2 = lo + ratio * (hi - lo);
      f2 = f(x2);
    } else {
      hi = x2;
      x2 = x1;
      f2 = f1;
      x1 = hi - ratio * (hi - lo);
      f1 = f(x1);
    }
  }
  best_t = 0.5 * (lo + hi);
  return f(best_t);
}

double boundary_objective(int n_nodes, double d1, double d2, double t_max, double dt, FirstMaximum* where = nullptr) {
  const auto spectral = single_excitation_spectrum(ChainSpec::boundary_controlled(n_nodes, d1, d2));
  try {
    const auto fm = first_maximum(spectral, t_max, dt);
    if (where != nullptr) *where = fm;
    return fm.amplitude;
  } catch (const Error& e) {
    if (e.code() == ErrorCode::no_arrival) return 0.0;
    throw;
  }
}

struct Vertex {
  std::array<double, 2> x;
  double value;  // objective to maximise
};

}  // namespace

double end_to_end_amplitude(const SpectralData& spectral, double t) { return EndToEnd(spectral)(t); }

FirstMaximum first_maximum(const SpectralData& spectral, double t_max, double dt, double floor) {
  if (!(dt > 0.0) || !(t_max > dt)) {
    throw Error(ErrorCode::invalid_argument, fmt::format("scan needs dt > 0 and t_max > dt (dt={}, t_max={})", dt, t_max));
  }
  const EndToEnd f(spectral);
  const auto& kernel = kernels::active();
  const auto steps = static_cast<std::size_t>(std::floor(t_max / dt)) + 1;

  std::vector<double> chunk(kScanChunk);
  double before = -1.0;  // value at j-2
  double middle = -1.0;  // value at j-1
  for (std::size_t start = 0; start < steps; start += kScanChunk) {
    const std::size_t len = std::min(kScanChunk, steps - start);
    kernel.amplitude_scan(f.weights.data(), f.energies.data(), f.weights.size(), static_cast<double>(start) * dt, dt,
                          len, chunk.data());
    for (std::size_t i = 0; i < len; ++i) {
      const double current = chunk[i];
      const std::size_t j = start + i;
      if (j >= 2 && middle > before && middle >= current && middle > floor) {
        const double t_peak = static_cast<double>(j - 1) * dt;
        FirstMaximum out;
        out.amplitude = golden_maximum(f, t_peak - dt, t_peak + dt, out.t0);
        return out;
      }
      before = middle;
      middle = current;
    }
  }
  throw Error(ErrorCode::no_arrival,
              fmt::format("no maximum of |p_N1| above {} within t <= {}", floor, t_max));
}

SpectralData single_excitation_spectrum(const ChainSpec& spec) {
  const int n = spec.n_nodes();
  Eigen::VectorXd diagonal = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd off(n - 1);
  for (int b = 1; b < n; ++b) off[b - 1] = 0.5 * spec.bond(b);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diagonal, off, Eigen::ComputeEigenvectors);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::eigensolver_failure, "tridiagonal eigensolver did not converge");
  }
  SpectralData out;
  out.n_nodes = n;
  out.e1 = solver.eigenvalues();
  out.v1 = solver.eigenvectors();
  return out;
}

BoundaryOptimum optimize_boundary(int n_nodes, const BoundaryOptions& options) {
  const auto& box = options.box;
  if (n_nodes < kMinBoundaryControlledNodes) {
    throw Error(ErrorCode::invalid_chain_length,
                fmt::format("boundary optimisation needs at least {} nodes", kMinBoundaryControlledNodes));
  }
  if (!(box.delta1_lo > 0.0 && box.delta2_lo > 0.0 && box.delta1_hi <= 1.5 && box.delta2_hi <= 1.5 &&
        box.delta1_lo <= box.delta1_hi && box.delta2_lo <= box.delta2_hi)) {
    throw Error(ErrorCode::invalid_argument, "search box must lie within (0, 1.5]^2");
  }
  if (!(options.grid_step > 0.0)) throw Error(ErrorCode::invalid_argument, "grid step must be positive");
  const double t_max = options.t_max > 0.0 ? options.t_max : 3.0 * n_nodes;

  auto axis = [&](double lo, double hi) {
    std::vector<double> values;
    for (long i = 0;; ++i) {
      const double v = lo + static_cast<double>(i) * options.grid_step;
      if (v > hi + 1e-12) break;
      values.push_back(v);
    }
    return values;
  };
  const auto axis1 = axis(box.delta1_lo, box.delta1_hi);
  const auto axis2 = axis(box.delta2_lo, box.delta2_hi);

  std::vector<double> scores(axis1.size() * axis2.size());
  parallel_for(
      scores.size(),
      [&](std::size_t idx) {
        scores[idx] = boundary_objective(n_nodes, axis1[idx / axis2.size()], axis2[idx % axis2.size()], t_max,
                                         options.dt);
      },
      options.threads);

  // Row-major order is lexicographic in (delta1, delta2); the strict
  // comparison keeps the lexicographically smallest of tied points.
  std::size_t best_idx = 0;
  for (std::size_t idx = 1; idx < scores.size(); ++idx) {
    if (scores[idx] > scores[best_idx]) best_idx = idx;
  }

  BoundaryOptimum result;
  result.coarse_delta1 = axis1[best_idx / axis2.size()];
  result.coarse_delta2 = axis2[best_idx % axis2.size()];
  result.coarse_amplitude = scores[best_idx];
  result.evaluations = static_cast<long>(scores.size());
  if (result.coarse_amplitude <= 0.0) {
    throw Error(ErrorCode::no_arrival, "no grid point produced an arrival above the floor");
  }

  auto objective = [&](const std::array<double, 2>& x) {
    ++result.evaluations;
    if (x[0] < box.delta1_lo || x[0] > box.delta1_hi || x[1] < box.delta2_lo || x[1] > box.delta2_hi) return 0.0;
    return boundary_objective(n_nodes, x[0], x[1], t_max, options.dt);
  };

  // Nelder-Mead on the negated objective, started from the best grid point.
  std::array<Vertex, 3> simplex{};
  simplex[0] = {{result.coarse_delta1, result.coarse_delta2}, result.coarse_amplitude};
  simplex[1].x = {result.coarse_delta1 + options.grid_step, result.coarse_delta2};
  simplex[2].x = {result.coarse_delta1, result.coarse_delta2 + options.grid_step};
  simplex[1].value = objective(simplex[1].x);
  simplex[2].value = objective(simplex[2].x);

  auto combine = [](const std::array<double, 2>& a, const std::array<double, 2>& b, double weight) {
    return std::array<double, 2>{a[0] + weight * (b[0] - a[0]), a[1] + weight * (b[1] - a[1])};
  };
  for (int iter = 0; iter < 2000; ++iter) {
    std::sort(simplex.begin(), simplex.end(), [](const Vertex& a, const Vertex& b) { return a.value > b.value; });
    double spread = 0.0;
    for (int v = 1; v < 3; ++v) {
      spread = std::max({spread, std::abs(simplex[v].x[0] - simplex[0].x[0]), std::abs(simplex[v].x[1] - simplex[0].x[1])});
    }
    if (spread < options.coupling_tolerance) break;

    const std::array<double, 2> centroid{0.5 * (simplex[0].x[0] + simplex[1].x[0]),
                                         0.5 * (simplex[0].x[1] + simplex[1].x[1])};
    const auto reflected = combine(centroid, simplex[2].x, -1.0);
    const double f_reflected = objective(reflected);
    if (f_reflected > simplex[0].value) {
      const auto expanded = combine(centroid, simplex[2].x, -2.0);
      const double f_expanded = objective(expanded);
      simplex[2] = f_expanded > f_reflected ? Vertex{expanded, f_expanded} : Vertex{reflected, f_reflected};
    } else if (f_reflected > simplex[1].value) {
      simplex[2] = {reflected, f_reflected};
    } else {
      const bool outside = f_reflected > simplex[2].value;
      const auto contracted = combine(centroid, outside ? reflected : simplex[2].x, 0.5);
      const double f_contracted = objective(contracted);
      if (f_contracted > std::max(f_reflected, simplex[2].value)) {
        simplex[2] = {contracted, f_contracted};
      } else {
        for (int v = 1; v < 3; ++v) {
          simplex[v].x = combine(simplex[0].x, simplex[v].x, 0.5);
          simplex[v].value = objective(simplex[v].x);
        }
      }
    }
  }
  const auto best = *std::max_element(simplex.begin(), simplex.end(),
                                      [](const Vertex& a, const Vertex& b) { return a.value < b.value; });

  const bool refined = best.value >= result.coarse_amplitude;
  result.delta1 = refined ? best.x[0] : result.coarse_delta1;
  result.delta2 = refined ? best.x[1] : result.coarse_delta2;
  FirstMaximum fm;
  result.amplitude = boundary_objective(n_nodes, result.delta1, result.delta2, t_max, options.dt, &fm);
  result.t0 = fm.t0;
  return result;
}

}  // namespace spinlink
