#pragma once

#include "spinlink/dynamics.hpp"
#include "spinlink/hamiltonian.hpp"

namespace spinlink {

inline constexpr double kDefaultScanStep = 0.05;
inline constexpr double kArrivalFloor = 0.2;

// |p_{N;1}(t)| from the one-excitation spectrum.
double end_to_end_amplitude(const SpectralData& spectral, double t);

struct FirstMaximum {
  double t0 = 0.0;
  double amplitude = 0.0;
};

// First local maximum of |p_{N;1}(t)| above `floor` on the grid t = j*dt,
// j*dt <= t_max, refined by golden-section search to |dt| < 1e-9.
// Throws a no_arrival Error when the grid holds no such maximum.
FirstMaximum first_maximum(const SpectralData& spectral, double t_max, double dt = kDefaultScanStep,
                           double floor = kArrivalFloor);

// One-excitation spectrum only; enough for the end-to-end amplitude.
SpectralData single_excitation_spectrum(const ChainSpec& spec);

struct SearchBox {
  double delta1_lo = 0.01;
  double delta1_hi = 1.5;
  double delta2_lo = 0.01;
  double delta2_hi = 1.5;
};

struct BoundaryOptions {
  SearchBox box;
  double grid_step = 0.01;
  double t_max = 0.0;  // 0 selects 3N
  double dt = kDefaultScanStep;
  double coupling_tolerance = 1e-6;
  int threads = 0;
};

struct BoundaryOptimum {
  double delta1 = 0.0;
  double delta2 = 0.0;
  double t0 = 0.0;
  double amplitude = 0.0;
  double coarse_delta1 = 0.0;
  double coarse_delta2 = 0.0;
  double coarse_amplitude = 0.0;
  long evaluations = 0;
};

// Coarse grid over the box followed by Nelder-Mead refinement of the first
// maximum of |p_{N;1}|. Grid points without an arrival score 0.
BoundaryOptimum optimize_boundary(int n_nodes, const BoundaryOptions& options = {});

}  // namespace spinlink
