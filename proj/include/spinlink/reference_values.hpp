#pragma once

#include <array>
#include <optional>
#include <span>

#include "spinlink/line_params.hpp"

namespace spinlink {

// Published values for the boundary-controlled chains with N = 20 and
// N = 60 and a four-node sender. Used by the reproduction report and tests.

struct BoundaryPreset {
  int n_nodes = 0;
  double delta1 = 0.0;
  double delta2 = 0.0;
  double t0 = 0.0;
  double amplitude = 0.0;
};

// Throws invalid_argument for lengths other than 20 and 60.
BoundaryPreset published_preset(int n_nodes);

struct PublishedParam {
  ParamKey key;
  cplx n20;
  cplx n60;
  Family family;
};

// The 13 near-unity and 14 intermediate parameters.
std::span<const PublishedParam> published_families();

// Small parameters listed for N = 20. Some entries are stated to equal a
// partner entry (or its conjugate) instead of being listed separately.
struct AppendixEntry {
  ParamKey key;
  cplx value;
  std::optional<ParamKey> partner;
  bool partner_conjugate = false;
};

std::span<const AppendixEntry> appendix_entries();

struct FamilyWindow {
  double lo = 0.0;
  double hi = 0.0;
};

// Magnitude windows printed for N = 20: Family I, Family II, and the upper
// bound of Family III (lo = 0).
inline constexpr FamilyWindow kFamilyOneWindow20{0.9356, 0.9961};
inline constexpr FamilyWindow kFamilyTwoWindow20{0.0635, 0.0893};
inline constexpr double kFamilyThreeBound20 = 0.0193;

struct PublishedControls {
  double p = 0.0;
  std::array<double, 6> a{};  // a12, a13, a14, a23, a24, a34
  double delta = 0.0;
};

// Werner controls solved with the full parameter set (N = 20).
std::span<const PublishedControls> full_param_controls();
// Werner controls solved with Family III set to zero (N = 20).
std::span<const PublishedControls> approximate_param_controls();

inline constexpr double kPublishedFeasibilityBoundary = 0.8744;

}  // namespace spinlink
