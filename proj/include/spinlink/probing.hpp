#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <nlohmann/json.hpp>

#include "spinlink/error.hpp"
#include "spinlink/line_params.hpp"
#include "spinlink/receiver.hpp"

namespace spinlink {

enum class ProbeKind {
  single,          // a0|0> + c|k>
  single_pair,     // c1|k> + c2|nm>
  pair_pair_real,  // c1|kl> + c2|nm>
  pair_pair_imag,  // c1|kl> + i c2|nm>
};

std::string_view probe_kind_name(ProbeKind kind);

inline constexpr double kProbeSplit = 0.70710678118654752440;  // 1/sqrt(2)
inline constexpr double kExtractionGuard = 1e-13;

/// One prescribed sender state of the probing protocol.
///
/// idx holds 1-based sender nodes: {k} for single, {k, n, m} for
/// single_pair, {k, l, n, m} with (k,l) < (n,m) for the pair kinds.
struct ProbeState {
  ProbeKind kind = ProbeKind::single;
  int n_sender = 4;
  std::array<int, 4> idx{};
  double c1 = kProbeSplit;
  double c2 = kProbeSplit;

  SenderState to_sender() const;
  std::string descriptor() const;
};

// All probes of the protocol, in the order single, single_pair,
// pair_pair_real, pair_pair_imag. Only n_sender = 4 is supported.
std::vector<ProbeState> probe_set(int n_sender);

struct ProbeOutput {
  ProbeState probe;
  Eigen::Matrix4cd rho;
};

std::vector<ProbeOutput> simulate_probes(const LineParams& params, std::span<const ProbeState> probes);

// Some parameters could not be determined from the supplied outputs.
class IncompleteExtraction : public Error {
 public:
  explicit IncompleteExtraction(std::vector<ParamKey> missing, int n_nodes);

  const std::vector<ParamKey>& missing() const noexcept { return missing_; }

 private:
  std::vector<ParamKey> missing_;
};

// Inverts the receiver responses stage by stage: singles, then single-pair,
// then pair-pair probes. Throws IncompleteExtraction or an ill_conditioned
// Error when a divisor falls below kExtractionGuard.
LineParams extract_params(std::span<const ProbeOutput> outputs, int n_nodes = 0, double t = 0.0);

nlohmann::json probe_outputs_to_json(std::span<const ProbeOutput> outputs);
std::vector<ProbeOutput> probe_outputs_from_json(const nlohmann::json& j);

}  // namespace spinlink
