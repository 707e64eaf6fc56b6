#include <doctest.h>

#include <cmath>
#include <set>

#include "spinlink/disorder.hpp"
#include "spinlink/error.hpp"
#include "spinlink/probing.hpp"
#include "spinlink/reference_values.hpp"

using namespace spinlink;

namespace {

double max_diff(const LineParams& a, const LineParams& b) {
  double d = 0.0;
  for (std::size_t q = 0; q < a.size(); ++q) d = std::max(d, std::abs(a.values()[q] - b.values()[q]));
  return d;
}

const ChainSpec& base20() {
  static const ChainSpec s = ChainSpec::boundary_controlled(20, 0.550, 0.817);
  return s;
}

}  // namespace

TEST_CASE("probe set composition") {
  const auto probes = probe_set(4);
  CHECK(probes.size() == 58);
  int counts[4] = {0, 0, 0, 0};
  std::set<std::string> names;
  for (const auto& p : probes) {
    ++counts[static_cast<int>(p.kind)];
    names.insert(p.descriptor());
    CHECK(std::abs(p.to_sender().norm_squared() - 1.0) < 1e-15);
  }
  CHECK(counts[0] == 4);
  CHECK(counts[1] == 24);
  CHECK(counts[2] == 15);
  CHECK(counts[3] == 15);
  CHECK(names.size() == probes.size());
  CHECK_THROWS_AS(probe_set(3), Error);
}

TEST_CASE("single probe inverts the vacuum coherence") {
  const auto p = line_params_for_chain(base20(), 26.441);
  ProbeState probe;
  probe.kind = ProbeKind::single;
  probe.idx = {1, 0, 0, 0};
  const auto out = simulate_probes(p, std::span<const ProbeState>(&probe, 1));
  CHECK(std::abs(std::conj(out[0].rho(0, 2)) * 2.0 - p.p_N(0)) < 1e-14);
}

TEST_CASE("extraction recovers the parameters") {
  const auto truth = line_params_for_chain(base20(), 26.441);
  const auto probes = probe_set(4);
  const auto extracted = extract_params(simulate_probes(truth, probes), 20, 26.441);
  CHECK(max_diff(truth, extracted) < 1e-9);

  const auto disordered = line_params_for_chain(sample_chain(base20(), 0.05, 17, 2), 26.441);
  CHECK(max_diff(disordered, extract_params(simulate_probes(disordered, probes))) < 1e-9);

  for (const auto& row : published_families()) {
    CHECK(std::abs(extracted[row.key] - row.n20) < 1e-4);
  }
}

TEST_CASE("missing imaginary probes leave the pair-pair blocks undetermined") {
  const auto truth = line_params_for_chain(base20(), 26.441);
  std::vector<ProbeState> partial;
  for (const auto& p : probe_set(4)) {
    if (p.kind != ProbeKind::pair_pair_imag) partial.push_back(p);
  }
  try {
    extract_params(simulate_probes(truth, partial), 20);
    FAIL("expected incomplete extraction");
  } catch (const IncompleteExtraction& e) {
    CHECK(e.code() == ErrorCode::incomplete_extraction);
    CHECK(e.missing().size() == 3 * 30);
  }
}

TEST_CASE("probe outputs survive a json round trip") {
  const auto truth = line_params_for_chain(ChainSpec::boundary_controlled(10, 0.5, 0.8), 7.0);
  const auto outputs = simulate_probes(truth, probe_set(4));
  const auto back = probe_outputs_from_json(probe_outputs_to_json(outputs));
  REQUIRE(back.size() == outputs.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].probe.kind == outputs[i].probe.kind);
    CHECK(back[i].probe.idx == outputs[i].probe.idx);
    CHECK(back[i].rho == outputs[i].rho);
  }
  CHECK(max_diff(truth, extract_params(back)) < 1e-9);
}
