#include "spinlink/reference_values.hpp"

#include <vector>

#include <fmt/format.h>

#include "spinlink/error.hpp"

namespace spinlink {
namespace {

ParamKey k(ParamKind kind, std::initializer_list<int> idx) { return make_key(kind, idx); }

const std::vector<PublishedParam>& families() {
  static const std::vector<PublishedParam> rows{
      {k(ParamKind::p_Nm1, {2}), {0, 0.96743}, {0, 0.91422}, Family::I},
      {k(ParamKind::p_N, {1}), {0, 0.99606}, {0, 0.99223}, Family::I},
      {k(ParamKind::p_pair, {1, 2}), {0.96361, 0}, {0.90711, 0}, Family::I},
      {k(ParamKind::P_Nm1, {3, 2, 3}), {0, 0.96707}, {0, 0.91238}, Family::I},
      {k(ParamKind::P_Nm1, {4, 2, 4}), {0, 0.96741}, {0, 0.91422}, Family::I},
      {k(ParamKind::P_N, {3, 1, 3}), {0, 0.99601}, {0, 0.99220}, Family::I},
      {k(ParamKind::P_N, {4, 1, 4}), {0, 0.98812}, {0, 0.94575}, Family::I},
      {k(ParamKind::P_NN, {1, 3, 1, 3}), {0.99246, 0}, {0.98649, 0}, Family::I},
      {k(ParamKind::P_NN, {1, 4, 1, 4}), {0.98424, 0}, {0.93841, 0}, Family::I},
      {k(ParamKind::P_mm, {2, 3, 2, 3}), {0.93561, 0}, {0.83415, 0}, Family::I},
      {k(ParamKind::P_mm, {2, 4, 2, 4}), {0.94387, 0}, {0.88263, 0}, Family::I},
      {k(ParamKind::P_mN, {2, 3, 1, 3}), {0.96361, 0}, {0.90711, 0}, Family::I},
      {k(ParamKind::P_mN, {2, 4, 1, 4}), {0.96361, 0}, {0.90711, 0}, Family::I},
      {k(ParamKind::p_Nm1, {4}), {0, -0.08929}, {0, -0.21641}, Family::II},
      {k(ParamKind::p_pair, {1, 4}), {-0.08894, 0}, {-0.21473, 0}, Family::II},
      {k(ParamKind::P_Nm1, {2, 2, 4}), {0, 0.08929}, {0, 0.21641}, Family::II},
      {k(ParamKind::P_Nm1, {3, 3, 4}), {0, 0.08925}, {0, 0.21598}, Family::II},
      {k(ParamKind::P_N, {2, 1, 2}), {0, 0.06384}, {0, 0.16292}, Family::II},
      {k(ParamKind::P_N, {4, 1, 2}), {0, 0.08604}, {0, 0.19631}, Family::II},
      {k(ParamKind::P_N, {2, 1, 4}), {0, 0.08604}, {0, 0.19631}, Family::II},
      {k(ParamKind::P_NN, {1, 2, 1, 2}), {0.06358, 0}, {0.16166, 0}, Family::II},
      {k(ParamKind::P_NN, {1, 4, 1, 2}), {0.08570, 0}, {0.19479, 0}, Family::II},
      {k(ParamKind::P_NN, {1, 2, 1, 4}), {0.08570, 0}, {0.19479, 0}, Family::II},
      {k(ParamKind::P_mm, {3, 4, 2, 3}), {0.08635, 0}, {0.19745, 0}, Family::II},
      {k(ParamKind::P_mm, {2, 3, 3, 4}), {0.08635, 0}, {0.19745, 0}, Family::II},
      {k(ParamKind::P_mN, {2, 4, 1, 2}), {0.08894, 0}, {0.21473, 0}, Family::II},
      {k(ParamKind::P_mN, {3, 4, 1, 3}), {0.08894, 0}, {0.21473, 0}, Family::II},
  };
  return rows;
}

const std::vector<AppendixEntry>& appendix() {
  static const std::vector<AppendixEntry> rows{
      {k(ParamKind::p_Nm1, {1}), {-1.007e-4, 0}, std::nullopt, false},
      {k(ParamKind::p_Nm1, {3}), {-7.168e-3, 0}, std::nullopt, false},
      {k(ParamKind::p_N, {2}), {-1.007e-4, 0}, std::nullopt, false},
      {k(ParamKind::p_N, {3}), {0, -1.928e-2}, std::nullopt, false},
      {k(ParamKind::p_N, {4}), {-3.860e-3, 0}, std::nullopt, false},
      {k(ParamKind::p_pair, {1, 3}), {0, 7.142e-3}, std::nullopt, false},
      {k(ParamKind::p_pair, {2, 3}), {1.865e-2, 0}, std::nullopt, false},
      {k(ParamKind::p_pair, {2, 4}), {0, -3.743e-3}, std::nullopt, false},
      {k(ParamKind::p_pair, {3, 4}), {1.749e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {1, 1, 2}), {0, -7.606e-3}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {2, 1, 2}), {3.665e-6, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {3, 1, 2}), {0, -1.858e-2}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {4, 1, 2}), {-3.720e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {1, 1, 3}), {-5.442e-5, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {2, 1, 3}), {0, 7.194e-7}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {3, 1, 3}), {-3.695e-5, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {4, 1, 3}), {0, 2.757e-5}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {1, 1, 4}), {0, 7.023e-4}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {2, 1, 4}), {8.958e-6, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {3, 1, 4}), {0, 1.714e-3}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {4, 1, 4}), {4.440e-4, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {1, 2, 3}), {0, 1.858e-2}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {2, 2, 3}), {-7.170e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {4, 2, 3}), {-7.199e-5, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {1, 2, 4}), {-3.729e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {3, 2, 4}), {7.216e-5, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {1, 3, 4}), {0, 1.742e-3}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {2, 3, 4}), {-1.762e-7, 0}, std::nullopt, false},
      {k(ParamKind::P_Nm1, {4, 3, 4}), {7.161e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {1, 1, 2}), {-3.665e-6, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {3, 1, 2}), {6.907e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {1, 1, 3}), {0, 1.928e-2}, std::nullopt, false},
      {k(ParamKind::P_N, {2, 1, 3}), {-6.909e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {4, 1, 3}), {6.377e-4, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {1, 1, 4}), {-3.869e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {3, 1, 4}), {-6.375e-4, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {1, 2, 3}), {1.878e-6, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {2, 2, 3}), {0, 1.236e-3}, std::nullopt, false},
      {k(ParamKind::P_N, {3, 2, 3}), {2.344e-4, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {4, 2, 3}), {0, 1.665e-3}, std::nullopt, false},
      {k(ParamKind::P_N, {1, 2, 4}), {0, 3.771e-7}, std::nullopt, false},
      {k(ParamKind::P_N, {2, 2, 4}), {-2.387e-4, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {3, 2, 4}), {0, 2.683e-5}, std::nullopt, false},
      {k(ParamKind::P_N, {4, 2, 4}), {-2.335e-4, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {1, 3, 4}), {1.762e-7, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {2, 3, 4}), {0, -1.692e-3}, std::nullopt, false},
      {k(ParamKind::P_N, {3, 3, 4}), {-3.848e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_N, {4, 3, 4}), {0, -1.912e-2}, std::nullopt, false},
      {k(ParamKind::P_NN, {1, 2, 1, 3}), {0, 6.880e-3}, std::nullopt, false},
      {k(ParamKind::P_NN, {1, 3, 1, 4}), {0, 7.096e-4}, std::nullopt, false},
      {k(ParamKind::P_NN, {1, 2, 2, 3}), {1.231e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_NN, {1, 3, 2, 3}), {0, -2.335e-4}, std::nullopt, false},
      {k(ParamKind::P_NN, {1, 4, 2, 3}), {1.659e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_NN, {2, 3, 2, 3}), {2.385e-5, 0}, std::nullopt, false},
      {k(ParamKind::P_NN, {1, 2, 2, 4}), {0, 2.377e-4}, std::nullopt, false},
      {k(ParamKind::P_NN, {1, 3, 2, 4}), {2.673e-5, 0}, std::nullopt, false},
      {k(ParamKind::P_NN, {1, 4, 2, 4}), {0, 2.326e-4}, std::nullopt, false},
      {k(ParamKind::P_NN, {2, 3, 2, 4}), {0, 4.604e-6}, std::nullopt, false},
      {k(ParamKind::P_NN, {2, 4, 2, 4}), {8.978e-7, 0}, std::nullopt, false},
      {k(ParamKind::P_NN, {1, 2, 3, 4}), {-1.685e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_NN, {1, 3, 3, 4}), {0, 3.832e-3}, std::nullopt, false},
      {k(ParamKind::P_NN, {1, 4, 3, 4}), {-1.905e-2, 0}, std::nullopt, false},
      {k(ParamKind::P_NN, {2, 3, 3, 4}), {-3.300e-5, 0}, std::nullopt, false},
      {k(ParamKind::P_NN, {2, 4, 3, 4}), {0, 4.605e-6}, std::nullopt, false},
      {k(ParamKind::P_NN, {3, 4, 3, 4}), {3.835e-4, 0}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 2, 1, 2}), {7.358e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 2, 1, 3}), {0, -5.265e-5}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 3, 1, 3}), {3.864e-7, 0}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 2, 1, 4}), {-6.795e-4, 0}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 3, 1, 4}), {0, -4.862e-6}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 4, 1, 4}), {6.275e-5, 0}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 2, 2, 3}), {-1.797e-2, 0}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 3, 2, 3}), {0, -3.574e-5}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 4, 2, 3}), {1.659e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 2, 2, 4}), {0, -3.598e-3}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 3, 2, 4}), {2.673e-5, 0}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 4, 2, 4}), {0, 4.304e-4}, std::nullopt, false},
      {k(ParamKind::P_mm, {2, 3, 2, 4}), {0, -7.098e-4}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 2, 3, 4}), {-1.685e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 3, 3, 4}), {0, -3.497e-6}, std::nullopt, false},
      {k(ParamKind::P_mm, {1, 4, 3, 4}), {1.563e-4, 0}, std::nullopt, false},
      {k(ParamKind::P_mm, {2, 4, 3, 4}), {0, -6.928e-3}, std::nullopt, false},
      {k(ParamKind::P_mm, {3, 4, 3, 4}), {8.021e-3, 0}, std::nullopt, false},
      {k(ParamKind::P_mN, {1, 2, 1, 2}), {0, 2.884e-6}, std::nullopt, false},
      {k(ParamKind::P_mN, {1, 3, 1, 3}), {0, -3.785e-5}, std::nullopt, false},
      {k(ParamKind::P_mN, {1, 4, 1, 4}), {0, 4.450e-4}, std::nullopt, false},
      {k(ParamKind::P_mN, {2, 3, 2, 3}), {0, -2.356e-4}, std::nullopt, false},
      {k(ParamKind::P_mN, {2, 4, 2, 4}), {0, 2.472e-4}, std::nullopt, false},
      {k(ParamKind::P_mN, {3, 4, 3, 4}), {0, 2.065e-4}, std::nullopt, false},
      {k(ParamKind::P_mN, {1, 3, 1, 2}), {7.220e-7, 0}, k(ParamKind::P_mN, {3, 4, 2, 4}), false},
      {k(ParamKind::P_mN, {1, 4, 1, 2}), {0, 8.994e-6}, k(ParamKind::P_mN, {3, 4, 2, 3}), true},
      {k(ParamKind::P_mN, {2, 3, 1, 2}), {0, -7.140e-3}, k(ParamKind::P_mN, {3, 4, 1, 4}), true},
      {k(ParamKind::P_mN, {1, 2, 1, 3}), {-1.865e-2, 0}, k(ParamKind::P_mN, {2, 4, 3, 4}), false},
      {k(ParamKind::P_mN, {1, 4, 1, 3}), {1.721e-3, 0}, k(ParamKind::P_mN, {2, 4, 2, 3}), false},
      {k(ParamKind::P_mN, {1, 2, 1, 4}), {0, -3.734e-3}, k(ParamKind::P_mN, {2, 3, 3, 4}), true},
      {k(ParamKind::P_mN, {1, 3, 1, 4}), {2.767e-5, 0}, k(ParamKind::P_mN, {2, 3, 2, 4}), false},
      {k(ParamKind::P_mN, {1, 2, 2, 3}), {0, 1.942e-6}, k(ParamKind::P_mN, {1, 4, 3, 4}), true},
      {k(ParamKind::P_mN, {1, 3, 2, 3}), {1.015e-8, 0}, k(ParamKind::P_mN, {1, 4, 2, 4}), false},
      {k(ParamKind::P_mN, {1, 2, 2, 4}), {-3.888e-7, 0}, k(ParamKind::P_mN, {1, 3, 3, 4}), false},
  };
  return rows;
}

const std::vector<PublishedControls>& full_controls() {
  static const std::vector<PublishedControls> rows{
      {0.0, {0.53233, 0.42337, 0.20146, 0.21791, -0.44593, 0.50046}, 4.235e-5},
      {0.1, {0.52208, 0.24658, 0.41283, 0.38198, -0.34211, 0.48296}, 2.641e-5},
      {0.2, {0.49965, 0.14204, 0.48397, 0.42820, -0.32433, 0.45540}, 1.532e-5},
      {0.3, {0.47309, 0.07861, 0.52371, 0.44462, -0.34473, 0.42334}, 3.883e-5},
      {0.4, {0.44366, 0.03642, 0.55344, 0.44645, -0.38257, 0.38713}, 1.744e-6},
      {0.5, {0.41131, 0.01047, 0.57913, 0.43460, -0.43236, 0.34571}, 2.066e-5},
      {0.6, {0.37550, 0.00361, 0.60326, 0.40331, -0.49433, 0.29673}, 2.347e-5},
      {0.7, {0.33507, 0.02962, 0.62617, 0.33516, -0.57203, 0.23496}, 6.332e-6},
      {0.8, {0.28714, 0.13374, 0.63657, 0.17462, -0.66556, 0.14487}, 1.604e-5},
  };
  return rows;
}

const std::vector<PublishedControls>& approximate_controls() {
  static const std::vector<PublishedControls> rows{
      {0.0, {0.55924, 0.00127, 0.43728, 0.47083, -0.00135, 0.52378}, 2.906e-2},
      {0.1, {0.53510, -0.04674, 0.46417, 0.49567, -0.05174, 0.49766}, 2.893e-2},
      {0.2, {0.50894, -0.09432, 0.48584, 0.51641, -0.09569, 0.46926}, 2.760e-2},
      {0.3, {0.48066, -0.13718, 0.50409, 0.53327, -0.14033, 0.43815}, 2.540e-2},
      {0.4, {0.44449, -0.30614, 0.46113, 0.57393, -0.04057, 0.40624}, 2.234e-2},
      {0.5, {0.41591, -0.22160, 0.53091, 0.55857, -0.22518, 0.36516}, 1.964e-2},
      {0.6, {0.37799, -0.26409, 0.53974, 0.56726, -0.26749, 0.32050}, 1.648e-2},
      {0.7, {0.33452, -0.30791, 0.54518, 0.57314, -0.31105, 0.26614}, 1.317e-2},
      {0.8, {0.28247, -0.35464, 0.54622, 0.57594, -0.35749, 0.19123}, 9.600e-3},
  };
  return rows;
}

}  // namespace

BoundaryPreset published_preset(int n_nodes) {
  if (n_nodes == 20) return {20, 0.550, 0.817, 26.441, 0.99606};
  if (n_nodes == 60) return {60, 0.414, 0.720, 70.203, 0.99223};
  throw Error(ErrorCode::invalid_argument, fmt::format("no published boundary couplings for N = {}", n_nodes));
}

std::span<const PublishedParam> published_families() { return families(); }
std::span<const AppendixEntry> appendix_entries() { return appendix(); }
std::span<const PublishedControls> full_param_controls() { return full_controls(); }
std::span<const PublishedControls> approximate_param_controls() { return approximate_controls(); }

}  // namespace spinlink
