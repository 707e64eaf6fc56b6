#include "spinlink/receiver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <utility>

#include <fmt/format.h>

#include "spinlink/error.hpp"

namespace spinlink {
namespace {

struct Forms {
  cplx f_nm1, f_n, f_pair;
  cplx x_nm1, x_n;    // sum P_{N-1;k,nm} a_k conj(a_nm), and the P_N analogue
  cplx q_mm, q_mn, q_nn;
};

Forms evaluate_forms(const LineParams& params, const SenderState& s) {
  const int ns = params.n_sender();
  if (s.n_sender != ns || s.single.size() != static_cast<std::size_t>(ns) || s.pair.size() != pair_count(ns)) {
    throw Error(ErrorCode::size_mismatch,
                fmt::format("sender state of {} nodes against parameters for {}", s.n_sender, ns));
  }
  const int c = static_cast<int>(pair_count(ns));
  Forms f{};
  for (int k = 0; k < ns; ++k) {
    const cplx ak = s.single[static_cast<std::size_t>(k)];
    f.f_nm1 += params.p_Nm1(k) * ak;
    f.f_n += params.p_N(k) * ak;
    for (int a = 0; a < c; ++a) {
      const cplx w = ak * std::conj(s.pair[static_cast<std::size_t>(a)]);
      f.x_nm1 += params.P_Nm1(k, a) * w;
      f.x_n += params.P_N(k, a) * w;
    }
  }
  for (int a = 0; a < c; ++a) {
    const cplx aa = s.pair[static_cast<std::size_t>(a)];
    f.f_pair += params.p_pair(a) * aa;
    for (int b = 0; b < c; ++b) {
      const cplx w = aa * std::conj(s.pair[static_cast<std::size_t>(b)]);
      f.q_mm += params.P_mm(a, b) * w;
      f.q_mn += params.P_mN(a, b) * w;
      f.q_nn += params.P_NN(a, b) * w;
    }
  }
  return f;
}

// Everything except rho_00.
Eigen::Matrix4cd fill_without_vacuum(const Forms& f, cplx a0) {
  Eigen::Matrix4cd rho = Eigen::Matrix4cd::Zero();
  rho(0, 1) = a0 * std::conj(f.f_nm1) + f.x_nm1;
  rho(0, 2) = a0 * std::conj(f.f_n) + f.x_n;
  rho(0, 3) = a0 * std::conj(f.f_pair);
  rho(1, 1) = std::norm(f.f_nm1) + f.q_mm.real();
  rho(1, 2) = f.f_nm1 * std::conj(f.f_n) + f.q_mn;
  rho(1, 3) = f.f_nm1 * std::conj(f.f_pair);
  rho(2, 2) = std::norm(f.f_n) + f.q_nn.real();
  rho(2, 3) = f.f_n * std::conj(f.f_pair);
  rho(3, 3) = std::norm(f.f_pair);
  for (int r = 0; r < 4; ++r) {
    for (int col = r + 1; col < 4; ++col) rho(col, r) = std::conj(rho(r, col));
  }
  return rho;
}

ParamKey key_of(ParamKind kind, std::initializer_list<int> idx) { return make_key(kind, idx); }

const std::vector<ParamKey>& family_one() {
  static const std::vector<ParamKey> keys{
      key_of(ParamKind::p_Nm1, {2}),          key_of(ParamKind::p_N, {1}),
      key_of(ParamKind::p_pair, {1, 2}),      key_of(ParamKind::P_Nm1, {3, 2, 3}),
      key_of(ParamKind::P_Nm1, {4, 2, 4}),    key_of(ParamKind::P_N, {3, 1, 3}),
      key_of(ParamKind::P_N, {4, 1, 4}),      key_of(ParamKind::P_NN, {1, 3, 1, 3}),
      key_of(ParamKind::P_NN, {1, 4, 1, 4}),  key_of(ParamKind::P_mm, {2, 3, 2, 3}),
      key_of(ParamKind::P_mm, {2, 4, 2, 4}),  key_of(ParamKind::P_mN, {2, 3, 1, 3}),
      key_of(ParamKind::P_mN, {2, 4, 1, 4}),
  };
  return keys;
}

const std::vector<ParamKey>& family_two() {
  static const std::vector<ParamKey> keys{
      key_of(ParamKind::p_Nm1, {4}),          key_of(ParamKind::p_pair, {1, 4}),
      key_of(ParamKind::P_Nm1, {2, 2, 4}),    key_of(ParamKind::P_Nm1, {3, 3, 4}),
      key_of(ParamKind::P_N, {2, 1, 2}),      key_of(ParamKind::P_N, {4, 1, 2}),
      key_of(ParamKind::P_N, {2, 1, 4}),      key_of(ParamKind::P_NN, {1, 2, 1, 2}),
      key_of(ParamKind::P_NN, {1, 4, 1, 2}),  key_of(ParamKind::P_NN, {1, 2, 1, 4}),
      key_of(ParamKind::P_mm, {3, 4, 2, 3}),  key_of(ParamKind::P_mm, {2, 3, 3, 4}),
      key_of(ParamKind::P_mN, {2, 4, 1, 2}),  key_of(ParamKind::P_mN, {3, 4, 1, 3}),
  };
  return keys;
}

}  // namespace

double ReceiverState::trace_deviation() const { return std::abs(rho.trace() - cplx{1.0, 0.0}); }

double ReceiverState::hermiticity_error() const { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

double ReceiverState::min_eigenvalue() const {
  const Eigen::Matrix4cd h = 0.5 * (rho + rho.adjoint());
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

bool ReceiverState::is_valid(double tol, double psd_tol) const {
  return trace_deviation() <= tol && hermiticity_error() <= tol && min_eigenvalue() >= -psd_tol;
}

LineParams compute_line_params(const TransferAmplitudes& amps, int n_sender) {
  const int n = amps.n_nodes;
  if (n_sender < 2) throw Error(ErrorCode::unsupported_sender_size, "sender needs at least two nodes");
  if (n_sender > n - 2) {
    throw Error(ErrorCode::sender_receiver_overlap,
                fmt::format("a {}-node sender overlaps the receiver of a {}-node chain", n_sender, n));
  }
  if (amps.n_sources < n_sender) {
    throw Error(ErrorCode::size_mismatch,
                fmt::format("amplitudes cover {} sources, sender has {}", amps.n_sources, n_sender));
  }
  if (amps.p2.size() == 0) throw Error(ErrorCode::invalid_argument, "line parameters need two-excitation amplitudes");

  const ExcitationBasis sender(n_sender);
  const auto c = static_cast<Eigen::Index>(sender.pair_count());
  std::vector<Eigen::Index> cols;
  for (const auto& p : sender.pairs()) cols.push_back(static_cast<Eigen::Index>(pair_index(p.first, p.second, amps.n_sources)));

  const Eigen::Index env = n - 2;
  Eigen::MatrixXcd s1(env, n_sender);  // p_{i;k}
  Eigen::MatrixXcd a(env, c);          // p_{i(N-1);nm}
  Eigen::MatrixXcd b(env, c);          // p_{iN;nm}
  for (Eigen::Index i = 0; i < env; ++i) {
    for (int k = 0; k < n_sender; ++k) s1(i, k) = amps.p1(i, k);
    const auto row_m = static_cast<Eigen::Index>(pair_index(static_cast<int>(i) + 1, n - 1, n));
    const auto row_n = static_cast<Eigen::Index>(pair_index(static_cast<int>(i) + 1, n, n));
    for (Eigen::Index q = 0; q < c; ++q) {
      a(i, q) = amps.p2(row_m, cols[static_cast<std::size_t>(q)]);
      b(i, q) = amps.p2(row_n, cols[static_cast<std::size_t>(q)]);
    }
  }
  const Eigen::MatrixXcd p_nm1 = s1.transpose() * a.conjugate();
  const Eigen::MatrixXcd p_n = s1.transpose() * b.conjugate();
  const Eigen::MatrixXcd p_mm = a.transpose() * a.conjugate();
  const Eigen::MatrixXcd p_mn = a.transpose() * b.conjugate();
  const Eigen::MatrixXcd p_nn = b.transpose() * b.conjugate();

  LineParams out(n_sender, n, amps.t);
  const auto receiver_pair = static_cast<Eigen::Index>(pair_index(n - 1, n, n));
  for (int k = 0; k < n_sender; ++k) {
    out.slot(ParamKind::p_N, k) = amps.p1(n - 1, k);
    out.slot(ParamKind::p_Nm1, k) = amps.p1(n - 2, k);
  }
  for (Eigen::Index q = 0; q < c; ++q) {
    const int qi = static_cast<int>(q);
    out.slot(ParamKind::p_pair, qi) = amps.p2(receiver_pair, cols[static_cast<std::size_t>(q)]);
    for (int k = 0; k < n_sender; ++k) {
      out.slot(ParamKind::P_Nm1, k, qi) = p_nm1(k, q);
      out.slot(ParamKind::P_N, k, qi) = p_n(k, q);
    }
    for (Eigen::Index r = 0; r < c; ++r) {
      const int ri = static_cast<int>(r);
      out.slot(ParamKind::P_mm, qi, ri) = p_mm(q, r);
      out.slot(ParamKind::P_mN, qi, ri) = p_mn(q, r);
      out.slot(ParamKind::P_NN, qi, ri) = p_nn(q, r);
    }
  }
  return out;
}

Eigen::Matrix4cd assemble_rho_homogeneous(const LineParams& params, const SenderState& s) {
  Eigen::Matrix4cd rho = fill_without_vacuum(evaluate_forms(params, s), s.a0);
  rho(0, 0) = s.norm_squared() - (rho(1, 1) + rho(2, 2) + rho(3, 3)).real();
  return rho;
}

ReceiverState assemble_rho(const LineParams& params, const SenderState& s) {
  ReceiverState out;
  out.rho = fill_without_vacuum(evaluate_forms(params, s), s.a0);
  out.rho(0, 0) = 1.0 - (out.rho(1, 1) + out.rho(2, 2) + out.rho(3, 3)).real();
  return out;
}

ReceiverState partial_trace_oracle(const SenderState& s, const TransferAmplitudes& amps, const ExcitationBasis& basis) {
  const int n = amps.n_nodes;
  if (basis.n_nodes() != n) {
    throw Error(ErrorCode::size_mismatch, fmt::format("basis of {} nodes for a {}-node chain", basis.n_nodes(), n));
  }
  if (s.n_sender > n - 2) {
    throw Error(ErrorCode::sender_receiver_overlap, "sender overlaps the receiver");
  }
  const EvolvedState psi = evolve(s, amps);

  // Environment pattern (i, j) with 0 meaning "no excitation"; the vector
  // holds the amplitudes of the four receiver configurations.
  std::map<std::pair<int, int>, Eigen::Vector4cd> groups;
  auto slot = [&](int i, int j) -> Eigen::Vector4cd& {
    auto [it, fresh] = groups.try_emplace({i, j});
    if (fresh) it->second.setZero();
    return it->second;
  };
  slot(0, 0)[0] = s.a0;
  for (int i = 1; i <= n; ++i) {
    const cplx v = psi.f_single[i - 1];
    if (i == n - 1) slot(0, 0)[1] += v;
    else if (i == n) slot(0, 0)[2] += v;
    else slot(i, 0)[0] += v;
  }
  for (std::size_t q = 0; q < basis.pair_count(); ++q) {
    const auto [i, j] = basis.pair(q);
    const cplx v = psi.f_double[static_cast<Eigen::Index>(q)];
    if (i == n - 1) slot(0, 0)[3] += v;
    else if (j == n - 1) slot(i, 0)[1] += v;
    else if (j == n) slot(i, 0)[2] += v;
    else slot(i, j)[0] += v;
  }

  ReceiverState out;
  for (const auto& [env, v] : groups) out.rho += v * v.adjoint();
  return out;
}

std::span<const ParamKey> family_one_keys() { return family_one(); }
std::span<const ParamKey> family_two_keys() { return family_two(); }

FamilyReport classify_families(const LineParams& params) {
  if (params.n_sender() != 4) {
    throw Error(ErrorCode::unsupported_sender_size, "family lists are defined for a four-node sender");
  }
  FamilyReport report;
  report.tags.assign(params.size(), Family::III);
  for (const auto& key : family_one()) report.tags[*params.find(key)] = Family::I;
  for (const auto& key : family_two()) report.tags[*params.find(key)] = Family::II;

  for (auto& r : report.ranges) {
    r.min_abs = std::numeric_limits<double>::infinity();
    r.max_abs = 0.0;
  }
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& r = report.ranges[static_cast<std::size_t>(report.tags[i])];
    const double mag = std::abs(params.values()[i]);
    ++r.count;
    r.min_abs = std::min(r.min_abs, mag);
    r.max_abs = std::max(r.max_abs, mag);
  }
  return report;
}

LineParams keep_families(const LineParams& params, const FamilyReport& report, std::initializer_list<Family> keep) {
  if (report.tags.size() != params.size()) throw Error(ErrorCode::size_mismatch, "family tags do not match parameters");
  LineParams out = params;
  for (std::size_t i = 0; i < out.size(); ++i) {
    if (std::find(keep.begin(), keep.end(), report.tags[i]) == keep.end()) out.values()[i] = 0.0;
  }
  return out;
}

LineParams line_params_for_chain(const ChainSpec& spec, double t, int n_sender) {
  const ExcitationBasis basis(spec.n_nodes());
  const SpectralData spectral = diagonalize(build_blocks(spec, basis));
  return compute_line_params(propagators(spectral, t, n_sender), n_sender);
}

}  // namespace spinlink
