#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include <nlohmann/json.hpp>

#include "spinlink/hamiltonian.hpp"
#include "spinlink/line_params.hpp"
#include "spinlink/receiver.hpp"

namespace spinlink {

inline constexpr int kDefaultChainCount = 100;

// Bulk offsets Delta_i uniform on [-1, 1]. The stream depends only on
// (seed, chain_index), so chains can be drawn in any order.
std::vector<double> draw_deltas(int count, std::uint64_t seed, std::uint64_t chain_index);

ChainSpec sample_chain(const ChainSpec& base, double epsilon, std::uint64_t seed, std::uint64_t chain_index);

struct ParamStatistics {
  LineParams unperturbed;
  std::vector<cplx> mean;
  std::vector<double> std_abs;  // sqrt(sum |P_i - <P>|^2 / (N_p - 1))
  std::vector<double> std_re;
  std::vector<double> std_im;
  std::vector<Family> tags;
};

struct WernerControl {
  double p = 0.0;
  SenderState a;
};

struct WernerStatistic {
  double p = 0.0;
  double mean_delta = 0.0;
  double std_delta = 0.0;  // sample standard deviation over the chains
  double unperturbed_delta = 0.0;
};

struct DisorderStudy {
  ChainSpec base;
  double t0 = 0.0;
  double epsilon = 0.0;
  int n_chains = kDefaultChainCount;
  std::uint64_t seed = 0;
  ParamStatistics params;
  std::vector<WernerStatistic> werner;
};

// Line parameters of chains 0..n_chains-1 at the frozen time t0.
std::vector<LineParams> sample_line_params(const ChainSpec& base, double t0, double epsilon, int n_chains,
                                           std::uint64_t seed, int threads = 0);

ParamStatistics param_statistics(const ChainSpec& base, double t0, double epsilon, int n_chains, std::uint64_t seed,
                                 int threads = 0);

std::vector<WernerStatistic> werner_robustness(const ChainSpec& base, double t0, std::span<const WernerControl> controls,
                                               double epsilon, int n_chains, std::uint64_t seed, int threads = 0);

// Both statistics from one set of sampled chains.
DisorderStudy run_disorder_study(const ChainSpec& base, double t0, double epsilon, int n_chains, std::uint64_t seed,
                                 std::span<const WernerControl> controls, int threads = 0);

// Columns: param_index,kind,indices,family,mean_re,mean_im,diff_re,diff_im,diff_abs,std,std_re,std_im
// where diff is <P(eps)> - P(0).
void write_param_statistics_csv(std::ostream& out, const ParamStatistics& stats, std::string_view provenance = {});
// Columns: p,mean_delta,std_delta,unperturbed_delta
void write_werner_csv(std::ostream& out, std::span<const WernerStatistic> stats, std::string_view provenance = {});

nlohmann::json study_to_json(const DisorderStudy& study);

}  // namespace spinlink
