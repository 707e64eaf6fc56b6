#include "spinlink/disorder.hpp"

#include <cmath>
#include <ostream>
#include <random>
#include <sstream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "spinlink/error.hpp"
#include "spinlink/inverse.hpp"
#include "spinlink/parallel.hpp"

namespace spinlink {
namespace {

void check_study_inputs(double epsilon, int n_chains) {
  if (!(epsilon >= 0.0)) throw Error(ErrorCode::invalid_argument, fmt::format("epsilon = {} must be >= 0", epsilon));
  if (n_chains < 2) throw Error(ErrorCode::invalid_argument, "a disorder study needs at least two chains");
}

void write_provenance(std::ostream& out, std::string_view provenance) {
  if (provenance.empty()) return;
  std::istringstream lines{std::string(provenance)};
  for (std::string line; std::getline(lines, line);) fmt::print(out, "# {}\n", line);
}

ParamStatistics aggregate(const LineParams& unperturbed, const std::vector<LineParams>& samples) {
  const std::size_t m = unperturbed.size();
  const double n = static_cast<double>(samples.size());
  ParamStatistics st{unperturbed, std::vector<cplx>(m), std::vector<double>(m), std::vector<double>(m),
                     std::vector<double>(m), {}};
  st.tags = classify_families(unperturbed).tags;
  for (std::size_t q = 0; q < m; ++q) {
    // Averaging the offsets from P(0) keeps eps = 0 exact.
    cplx shift{0.0, 0.0};
    for (const auto& s : samples) shift += s.values()[q] - unperturbed.values()[q];
    shift /= n;
    st.mean[q] = unperturbed.values()[q] + shift;
    double sa = 0.0, sr = 0.0, si = 0.0;
    for (const auto& s : samples) {
      const cplx d = (s.values()[q] - unperturbed.values()[q]) - shift;
      sa += std::norm(d);
      sr += d.real() * d.real();
      si += d.imag() * d.imag();
    }
    st.std_abs[q] = std::sqrt(sa / (n - 1.0));
    st.std_re[q] = std::sqrt(sr / (n - 1.0));
    st.std_im[q] = std::sqrt(si / (n - 1.0));
  }
  return st;
}

std::vector<WernerStatistic> werner_stats(const LineParams& unperturbed, const std::vector<LineParams>& samples,
                                          std::span<const WernerControl> controls) {
  std::vector<WernerStatistic> out;
  const double n = static_cast<double>(samples.size());
  for (const auto& c : controls) {
    const TargetState target = TargetState::werner(c.p);
    std::vector<double> deltas;
    deltas.reserve(samples.size());
    for (const auto& s : samples) deltas.push_back(discrepancy(assemble_rho(s, c.a).rho, target));
    const double ideal = discrepancy(assemble_rho(unperturbed, c.a).rho, target);
    double shift = 0.0;
    for (double d : deltas) shift += d - ideal;
    shift /= n;
    double var = 0.0;
    for (double d : deltas) var += (d - ideal - shift) * (d - ideal - shift);
    out.push_back({c.p, ideal + shift, std::sqrt(var / (n - 1.0)), ideal});
  }
  return out;
}

}  // namespace

std::vector<double> draw_deltas(int count, std::uint64_t seed, std::uint64_t chain_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(chain_index), static_cast<std::uint32_t>(chain_index >> 32)};
  std::mt19937_64 rng(seq);
  std::vector<double> out(static_cast<std::size_t>(std::max(count, 0)));
  // 53 random bits mapped onto [0, 1), then onto [-1, 1).
  for (auto& v : out) v = 2.0 * (static_cast<double>(rng() >> 11) * 0x1.0p-53) - 1.0;
  return out;
}

ChainSpec sample_chain(const ChainSpec& base, double epsilon, std::uint64_t seed, std::uint64_t chain_index) {
  const auto deltas = draw_deltas(bulk_bond_count(base.n_nodes()), seed, chain_index);
  return apply_disorder(base, epsilon, deltas);
}

std::vector<LineParams> sample_line_params(const ChainSpec& base, double t0, double epsilon, int n_chains,
                                           std::uint64_t seed, int threads) {
  check_study_inputs(epsilon, n_chains);
  std::vector<LineParams> out(static_cast<std::size_t>(n_chains), LineParams(4, base.n_nodes(), t0));
  parallel_for(
      out.size(),
      [&](std::size_t i) { out[i] = line_params_for_chain(sample_chain(base, epsilon, seed, i), t0); },
      threads);
  return out;
}

ParamStatistics param_statistics(const ChainSpec& base, double t0, double epsilon, int n_chains, std::uint64_t seed,
                                 int threads) {
  const auto samples = sample_line_params(base, t0, epsilon, n_chains, seed, threads);
  return aggregate(line_params_for_chain(base, t0), samples);
}

std::vector<WernerStatistic> werner_robustness(const ChainSpec& base, double t0, std::span<const WernerControl> controls,
                                               double epsilon, int n_chains, std::uint64_t seed, int threads) {
  const auto samples = sample_line_params(base, t0, epsilon, n_chains, seed, threads);
  return werner_stats(line_params_for_chain(base, t0), samples, controls);
}

DisorderStudy run_disorder_study(const ChainSpec& base, double t0, double epsilon, int n_chains, std::uint64_t seed,
                                 std::span<const WernerControl> controls, int threads) {
  const auto samples = sample_line_params(base, t0, epsilon, n_chains, seed, threads);
  const LineParams unperturbed = line_params_for_chain(base, t0);
  DisorderStudy study{base, t0, epsilon, n_chains, seed, aggregate(unperturbed, samples), {}};
  study.werner = werner_stats(unperturbed, samples, controls);
  return study;
}

void write_param_statistics_csv(std::ostream& out, const ParamStatistics& stats, std::string_view provenance) {
  write_provenance(out, provenance);
  fmt::print(out, "param_index,kind,indices,family,mean_re,mean_im,diff_re,diff_im,diff_abs,std,std_re,std_im\n");
  const auto& ref = stats.unperturbed;
  for (std::size_t q = 0; q < ref.size(); ++q) {
    const cplx diff = stats.mean[q] - ref.values()[q];
    fmt::print(out, "{},{},{},{},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g},{:.17g}\n", q,
               kind_name(ref.keys()[q].kind), ref.keys()[q].indices(), family_name(stats.tags[q]), stats.mean[q].real(),
               stats.mean[q].imag(), diff.real(), diff.imag(), std::abs(diff), stats.std_abs[q], stats.std_re[q],
               stats.std_im[q]);
  }
}

void write_werner_csv(std::ostream& out, std::span<const WernerStatistic> stats, std::string_view provenance) {
  write_provenance(out, provenance);
  fmt::print(out, "p,mean_delta,std_delta,unperturbed_delta\n");
  for (const auto& s : stats) {
    fmt::print(out, "{:.17g},{:.17g},{:.17g},{:.17g}\n", s.p, s.mean_delta, s.std_delta, s.unperturbed_delta);
  }
}

nlohmann::json study_to_json(const DisorderStudy& study) {
  nlohmann::json params = nlohmann::json::array();
  const auto& ref = study.params.unperturbed;
  for (std::size_t q = 0; q < ref.size(); ++q) {
    params.push_back({{"kind", kind_name(ref.keys()[q].kind)},
                      {"indices", ref.keys()[q].indices()},
                      {"family", family_name(study.params.tags[q])},
                      {"unperturbed", {ref.values()[q].real(), ref.values()[q].imag()}},
                      {"mean", {study.params.mean[q].real(), study.params.mean[q].imag()}},
                      {"std", study.params.std_abs[q]},
                      {"std_re", study.params.std_re[q]},
                      {"std_im", study.params.std_im[q]}});
  }
  nlohmann::json werner = nlohmann::json::array();
  for (const auto& w : study.werner) {
    werner.push_back({{"p", w.p},
                      {"mean_delta", w.mean_delta},
                      {"std_delta", w.std_delta},
                      {"unperturbed_delta", w.unperturbed_delta}});
  }
  nlohmann::json chain;
  to_json(chain, study.base);
  return {{"chain", chain},   {"t0", study.t0},         {"epsilon", study.epsilon}, {"n_chains", study.n_chains},
          {"seed", study.seed}, {"parameters", params}, {"werner", werner}};
}

}  // namespace spinlink
