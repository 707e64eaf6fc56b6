#include "spinlink/probing.hpp"

#include <cmath>
#include <map>
#include <optional>
#include <utility>

#include <fmt/format.h>

namespace spinlink {
namespace {

int probe_arity(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::single: return 1;
    case ProbeKind::single_pair: return 3;
    default: return 4;
  }
}

std::optional<ProbeKind> parse_probe_kind(std::string_view name) {
  for (auto kind : {ProbeKind::single, ProbeKind::single_pair, ProbeKind::pair_pair_real, ProbeKind::pair_pair_imag}) {
    if (probe_kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

void guard(cplx divisor, const ProbeState& probe) {
  if (std::abs(divisor) < kExtractionGuard) {
    throw Error(ErrorCode::ill_conditioned,
                fmt::format("divisor {:.3e} below {:.0e} in probe {}", std::abs(divisor), kExtractionGuard,
                            probe.descriptor()));
  }
}

std::string join_labels(const std::vector<ParamKey>& keys, int n_nodes) {
  std::string out;
  for (const auto& k : keys) {
    if (!out.empty()) out += ", ";
    out += k.label(n_nodes);
  }
  return out;
}

// Pair-block kinds and the receiver entry that carries them.
struct PairBlock {
  ParamKind kind;
  int row;
  int col;
};
constexpr std::array<PairBlock, 3> kPairBlocks{{{ParamKind::P_mm, 1, 1}, {ParamKind::P_mN, 1, 2}, {ParamKind::P_NN, 2, 2}}};

}  // namespace

std::string_view probe_kind_name(ProbeKind kind) {
  switch (kind) {
    case ProbeKind::single: return "single";
    case ProbeKind::single_pair: return "single-pair";
    case ProbeKind::pair_pair_real: return "pair-pair-real";
    case ProbeKind::pair_pair_imag: return "pair-pair-imag";
  }
  return "?";
}

SenderState ProbeState::to_sender() const {
  SenderState s(n_sender);
  switch (kind) {
    case ProbeKind::single:
      s.a0 = c1;
      s.a(idx[0]) = c2;
      break;
    case ProbeKind::single_pair:
      s.a(idx[0]) = c1;
      s.a(idx[1], idx[2]) = c2;
      break;
    case ProbeKind::pair_pair_real:
      s.a(idx[0], idx[1]) = c1;
      s.a(idx[2], idx[3]) = c2;
      break;
    case ProbeKind::pair_pair_imag:
      s.a(idx[0], idx[1]) = c1;
      s.a(idx[2], idx[3]) = cplx{0.0, c2};
      break;
  }
  return s;
}

std::string ProbeState::descriptor() const {
  std::string list;
  for (int i = 0; i < probe_arity(kind); ++i) {
    if (i > 0) list += ',';
    list += std::to_string(idx[static_cast<std::size_t>(i)]);
  }
  return fmt::format("{}({})", probe_kind_name(kind), list);
}

std::vector<ProbeState> probe_set(int n_sender) {
  if (n_sender != 4) {
    throw Error(ErrorCode::unsupported_sender_size,
                fmt::format("the probe protocol is enumerated for a four-node sender, not {}", n_sender));
  }
  const ExcitationBasis sender(n_sender);
  const auto pairs = sender.pairs();
  std::vector<ProbeState> out;
  for (int k = 1; k <= n_sender; ++k) out.push_back({ProbeKind::single, n_sender, {k, 0, 0, 0}});
  for (int k = 1; k <= n_sender; ++k) {
    for (const auto& p : pairs) out.push_back({ProbeKind::single_pair, n_sender, {k, p.first, p.second, 0}});
  }
  for (auto kind : {ProbeKind::pair_pair_real, ProbeKind::pair_pair_imag}) {
    for (std::size_t a = 0; a < pairs.size(); ++a) {
      for (std::size_t b = a + 1; b < pairs.size(); ++b) {
        out.push_back({kind, n_sender, {pairs[a].first, pairs[a].second, pairs[b].first, pairs[b].second}});
      }
    }
  }
  return out;
}

std::vector<ProbeOutput> simulate_probes(const LineParams& params, std::span<const ProbeState> probes) {
  std::vector<ProbeOutput> out;
  out.reserve(probes.size());
  for (const auto& probe : probes) out.push_back({probe, assemble_rho(params, probe.to_sender()).rho});
  return out;
}

IncompleteExtraction::IncompleteExtraction(std::vector<ParamKey> missing, int n_nodes)
    : Error(ErrorCode::incomplete_extraction,
            fmt::format("{} parameters undetermined: {}", missing.size(), join_labels(missing, n_nodes))),
      missing_(std::move(missing)) {}

LineParams extract_params(std::span<const ProbeOutput> outputs, int n_nodes, double t) {
  if (outputs.empty()) throw Error(ErrorCode::invalid_argument, "no probe outputs supplied");
  const int ns = outputs.front().probe.n_sender;
  for (const auto& o : outputs) {
    if (o.probe.n_sender != ns) throw Error(ErrorCode::size_mismatch, "probe outputs mix sender sizes");
  }
  LineParams params(ns, n_nodes, t);
  std::vector<bool> known(params.size(), false);
  auto set = [&](ParamKind kind, int first, int second, cplx value) {
    cplx& ref = params.slot(kind, first, second);
    ref = value;
    known[static_cast<std::size_t>(&ref - params.values().data())] = true;
  };
  auto is_known = [&](ParamKind kind, int first, int second) {
    cplx& ref = params.slot(kind, first, second);
    return known[static_cast<std::size_t>(&ref - params.values().data())];
  };
  auto pair_pos = [&](int n, int m) { return static_cast<int>(pair_index(n, m, ns)); };

  // Stage 1: rho_{0;N-1} = c1 conj(p_{N-1;k} c2), likewise for node N.
  std::vector<bool> single_known(static_cast<std::size_t>(ns), false);
  for (const auto& o : outputs) {
    if (o.probe.kind != ProbeKind::single) continue;
    const int k = o.probe.idx[0] - 1;
    const double d = o.probe.c1 * o.probe.c2;
    guard(d, o.probe);
    set(ParamKind::p_Nm1, k, 0, std::conj(o.rho(0, 1)) / d);
    set(ParamKind::p_N, k, 0, std::conj(o.rho(0, 2)) / d);
    single_known[static_cast<std::size_t>(k)] = true;
  }

  // Stage 2: mixed terms, pair-block diagonals and the receiver-pair amplitude.
  std::map<int, std::pair<cplx, cplx>> pair_amp;  // pair -> (best divisor, numerator)
  for (const auto& o : outputs) {
    if (o.probe.kind != ProbeKind::single_pair) continue;
    const auto& pr = o.probe;
    const int k = pr.idx[0] - 1;
    const int a = pair_pos(pr.idx[1], pr.idx[2]);
    const double d = pr.c1 * pr.c2;
    guard(d, pr);
    set(ParamKind::P_Nm1, k, a, o.rho(0, 1) / d);
    set(ParamKind::P_N, k, a, o.rho(0, 2) / d);
    if (!single_known[static_cast<std::size_t>(k)]) continue;

    const cplx pm = params.p_Nm1(k);
    const cplx pn = params.p_N(k);
    const double w1 = pr.c1 * pr.c1;
    const double w2 = pr.c2 * pr.c2;
    guard(w2, pr);
    if (!is_known(ParamKind::P_mm, a, a)) {
      set(ParamKind::P_mm, a, a, (o.rho(1, 1) - std::norm(pm) * w1) / w2);
      set(ParamKind::P_mN, a, a, (o.rho(1, 2) - pm * std::conj(pn) * w1) / w2);
      set(ParamKind::P_NN, a, a, (o.rho(2, 2) - std::norm(pn) * w1) / w2);
    }
    // rho_{N-1;(N-1)N} = p_{N-1;k} c1 conj(p_pair c2); same with p_{N;k} in row N.
    for (auto [divisor, numerator] : {std::pair{pm * d, o.rho(1, 3)}, std::pair{pn * d, o.rho(2, 3)}}) {
      auto& best = pair_amp[a];
      if (std::abs(divisor) > std::abs(best.first)) best = {divisor, numerator};
    }
  }
  for (const auto& [a, best] : pair_amp) {
    if (std::abs(best.first) < kExtractionGuard) {
      throw Error(ErrorCode::ill_conditioned,
                  fmt::format("no single-pair probe resolves pair {} of the receiver amplitude", a + 1));
    }
    set(ParamKind::p_pair, a, 0, std::conj(best.second / best.first));
  }

  // Stage 3: with X the pair block, the real probe gives S = X[a][b] + X[b][a]
  // and the imaginary probe D = i (X[b][a] - X[a][b]).
  std::map<std::pair<int, int>, std::array<cplx, 3>> sums, diffs;
  for (const auto& o : outputs) {
    const auto& pr = o.probe;
    if (pr.kind != ProbeKind::pair_pair_real && pr.kind != ProbeKind::pair_pair_imag) continue;
    const int a = pair_pos(pr.idx[0], pr.idx[1]);
    const int b = pair_pos(pr.idx[2], pr.idx[3]);
    const double d = pr.c1 * pr.c2;
    guard(d, pr);
    if (!is_known(ParamKind::P_mm, a, a) || !is_known(ParamKind::P_mm, b, b)) continue;
    std::array<cplx, 3> v;
    for (std::size_t q = 0; q < kPairBlocks.size(); ++q) {
      const auto& blk = kPairBlocks[q];
      const cplx diag =
          params.slot(blk.kind, a, a) * (pr.c1 * pr.c1) + params.slot(blk.kind, b, b) * (pr.c2 * pr.c2);
      v[q] = (o.rho(blk.row, blk.col) - diag) / d;
    }
    (pr.kind == ProbeKind::pair_pair_real ? sums : diffs)[{a, b}] = v;
  }
  for (const auto& [ab, s] : sums) {
    const auto it = diffs.find(ab);
    if (it == diffs.end()) continue;
    const cplx i{0.0, 1.0};
    for (std::size_t q = 0; q < kPairBlocks.size(); ++q) {
      set(kPairBlocks[q].kind, ab.first, ab.second, 0.5 * (s[q] + i * it->second[q]));
      set(kPairBlocks[q].kind, ab.second, ab.first, 0.5 * (s[q] - i * it->second[q]));
    }
  }

  std::vector<ParamKey> missing;
  for (std::size_t q = 0; q < known.size(); ++q) {
    if (!known[q]) missing.push_back(params.keys()[q]);
  }
  if (!missing.empty()) throw IncompleteExtraction(std::move(missing), n_nodes);
  return params;
}

nlohmann::json probe_outputs_to_json(std::span<const ProbeOutput> outputs) {
  auto out = nlohmann::json::array();
  for (const auto& o : outputs) {
    nlohmann::json re = nlohmann::json::array();
    nlohmann::json im = nlohmann::json::array();
    for (int r = 0; r < 4; ++r) {
      nlohmann::json row_re = nlohmann::json::array();
      nlohmann::json row_im = nlohmann::json::array();
      for (int c = 0; c < 4; ++c) {
        row_re.push_back(o.rho(r, c).real());
        row_im.push_back(o.rho(r, c).imag());
      }
      re.push_back(row_re);
      im.push_back(row_im);
    }
    std::vector<int> idx(o.probe.idx.begin(), o.probe.idx.begin() + probe_arity(o.probe.kind));
    out.push_back({{"probe",
                    {{"kind", probe_kind_name(o.probe.kind)},
                     {"n_sender", o.probe.n_sender},
                     {"indices", idx},
                     {"amplitudes", {o.probe.c1, o.probe.c2}}}},
                   {"rho", {{"re", re}, {"im", im}}}});
  }
  return out;
}

std::vector<ProbeOutput> probe_outputs_from_json(const nlohmann::json& j) {
  if (!j.is_array()) throw Error(ErrorCode::invalid_argument, "probe outputs must be a JSON array");
  std::vector<ProbeOutput> out;
  try {
    for (const auto& entry : j) {
      const auto& p = entry.at("probe");
      const auto kind = parse_probe_kind(p.at("kind").get<std::string>());
      if (!kind) throw Error(ErrorCode::invalid_argument, fmt::format("unknown probe kind {}", p.at("kind").dump()));
      ProbeOutput o;
      o.probe.kind = *kind;
      o.probe.n_sender = p.value("n_sender", 4);
      const auto idx = p.at("indices").get<std::vector<int>>();
      if (static_cast<int>(idx.size()) != probe_arity(*kind)) {
        throw Error(ErrorCode::invalid_argument, fmt::format("probe {} needs {} indices", p.at("kind").dump(),
                                                             probe_arity(*kind)));
      }
      std::copy(idx.begin(), idx.end(), o.probe.idx.begin());
      const auto amps = p.at("amplitudes").get<std::vector<double>>();
      if (amps.size() != 2) throw Error(ErrorCode::invalid_argument, "probe amplitudes must hold two numbers");
      o.probe.c1 = amps[0];
      o.probe.c2 = amps[1];
      const auto re = entry.at("rho").at("re").get<std::vector<std::vector<double>>>();
      const auto im = entry.at("rho").at("im").get<std::vector<std::vector<double>>>();
      if (re.size() != 4 || im.size() != 4) throw Error(ErrorCode::invalid_argument, "rho must be 4x4");
      for (int r = 0; r < 4; ++r) {
        if (re[r].size() != 4 || im[r].size() != 4) throw Error(ErrorCode::invalid_argument, "rho must be 4x4");
        for (int c = 0; c < 4; ++c) o.rho(r, c) = {re[r][c], im[r][c]};
      }
      out.push_back(o);
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::invalid_argument, fmt::format("malformed probe outputs: {}", e.what()));
  }
  return out;
}

}  // namespace spinlink
