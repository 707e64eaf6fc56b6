#include "spinlink/dynamics.hpp"

#include <cmath>
#include <ostream>
#include <vector>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "spinlink/error.hpp"
#include "spinlink/kernels.hpp"
#include "spinlink/parallel.hpp"

namespace spinlink {
namespace {

void decompose(const Eigen::MatrixXd& h, Eigen::VectorXd& values, Eigen::MatrixXd& vectors, const char* block) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) {
    throw Error(ErrorCode::eigensolver_failure,
                fmt::format("eigensolver did not converge on the {} block ({}x{})", block, h.rows(), h.cols()));
  }
  values = solver.eigenvalues();
  vectors = solver.eigenvectors();
}

// Fills out.col(c) = V diag(exp(-i e t)) V^T e_{source[c]}.
void propagator_columns(const Eigen::VectorXd& energies, const Eigen::MatrixXd& vectors, double t,
                        const std::vector<Eigen::Index>& sources, Eigen::MatrixXcd& out) {
  const Eigen::Index dim = energies.size();
  Eigen::VectorXd phase_re(dim), phase_im(dim);
  for (Eigen::Index k = 0; k < dim; ++k) {
    phase_re[k] = std::cos(energies[k] * t);
    phase_im[k] = -std::sin(energies[k] * t);
  }
  out.resize(dim, static_cast<Eigen::Index>(sources.size()));
  const auto& kernel = kernels::active();
  // Small blocks are not worth a thread pool; callers parallelise over chains instead.
  const int threads = dim >= 512 ? 0 : 1;
  parallel_for(sources.size(), [&](std::size_t c) {
    const Eigen::Index src = sources[c];
    Eigen::VectorXd w_re(dim), w_im(dim), col_re(dim), col_im(dim);
    for (Eigen::Index k = 0; k < dim; ++k) {
      w_re[k] = vectors(src, k) * phase_re[k];
      w_im[k] = vectors(src, k) * phase_im[k];
    }
    kernel.real_complex_matvec(vectors.data(), static_cast<std::size_t>(dim), static_cast<std::size_t>(dim),
                               w_re.data(), w_im.data(), col_re.data(), col_im.data());
    for (Eigen::Index r = 0; r < dim; ++r) out(r, static_cast<Eigen::Index>(c)) = {col_re[r], col_im[r]};
  }, threads);
}

std::string pair_label(const NodePair& p) { return fmt::format("\"({},{})\"", p.first, p.second); }

}  // namespace

SpectralData diagonalize(const HamiltonianBlocks& blocks) {
  SpectralData out;
  out.n_nodes = static_cast<int>(blocks.h1.rows());
  decompose(blocks.h1, out.e1, out.v1, "one-excitation");
  if (blocks.h2.size() > 0) decompose(blocks.h2, out.e2, out.v2, "two-excitation");
  return out;
}

cplx TransferAmplitudes::single(int i, int k) const {
  if (i < 1 || i > n_nodes || k < 1 || k > n_sources) {
    throw Error(ErrorCode::invalid_argument, fmt::format("p({};{}) outside stored columns", i, k));
  }
  return p1(i - 1, k - 1);
}

cplx TransferAmplitudes::pair(int i, int j, int n, int m) const {
  if (i > j) std::swap(i, j);
  if (i < 1 || j > n_nodes || i == j || n < 1 || m > n_sources || n >= m) {
    throw Error(ErrorCode::invalid_argument, fmt::format("p({},{};{},{}) outside stored columns", i, j, n, m));
  }
  if (p2.size() == 0) throw Error(ErrorCode::invalid_argument, "two-excitation amplitudes were not computed");
  return p2(static_cast<Eigen::Index>(pair_index(i, j, n_nodes)), static_cast<Eigen::Index>(pair_index(n, m, n_sources)));
}

TransferAmplitudes propagators(const SpectralData& spectral, double t) {
  if (!spectral.has_pairs()) {
    throw Error(ErrorCode::invalid_argument, "full propagators need the two-excitation spectrum");
  }
  return propagators(spectral, t, spectral.n_nodes);
}

TransferAmplitudes propagators(const SpectralData& spectral, double t, int n_sources) {
  const int n = spectral.n_nodes;
  if (n_sources < 1 || n_sources > n) {
    throw Error(ErrorCode::invalid_argument, fmt::format("{} sources on a {}-node chain", n_sources, n));
  }
  TransferAmplitudes amps;
  amps.t = t;
  amps.n_nodes = n;
  amps.n_sources = n_sources;
  amps.negative_time = t < 0.0;

  std::vector<Eigen::Index> singles;
  for (int k = 0; k < n_sources; ++k) singles.push_back(k);
  propagator_columns(spectral.e1, spectral.v1, t, singles, amps.p1);

  if (spectral.has_pairs()) {
    std::vector<Eigen::Index> pairs;
    for (int a = 1; a < n_sources; ++a) {
      for (int b = a + 1; b <= n_sources; ++b) pairs.push_back(static_cast<Eigen::Index>(pair_index(a, b, n)));
    }
    propagator_columns(spectral.e2, spectral.v2, t, pairs, amps.p2);
  }
  return amps;
}

double EvolvedState::norm_squared() const { return f0 * f0 + f_single.squaredNorm() + f_double.squaredNorm(); }

EvolvedState evolve(const SenderState& s, const TransferAmplitudes& amps) {
  if (s.n_sender > amps.n_sources) {
    throw Error(ErrorCode::size_mismatch,
                fmt::format("sender of {} nodes but amplitudes cover {} sources", s.n_sender, amps.n_sources));
  }
  if (s.single.size() != static_cast<std::size_t>(s.n_sender) || s.pair.size() != pair_count(s.n_sender)) {
    throw Error(ErrorCode::size_mismatch, "sender amplitude arrays do not match the sender size");
  }
  EvolvedState out;
  out.f0 = s.a0.real();
  out.f_single = Eigen::VectorXcd::Zero(amps.n_nodes);
  for (int k = 1; k <= s.n_sender; ++k) out.f_single += amps.p1.col(k - 1) * s.a(k);

  out.f_double = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(pair_count(amps.n_nodes)));
  if (amps.p2.size() > 0) {
    for (int n = 1; n < s.n_sender; ++n) {
      for (int m = n + 1; m <= s.n_sender; ++m) {
        const auto col = static_cast<Eigen::Index>(pair_index(n, m, amps.n_sources));
        out.f_double += amps.p2.col(col) * s.a(n, m);
      }
    }
  }
  return out;
}

void write_amplitudes_csv(std::ostream& out, const TransferAmplitudes& amps) {
  const ExcitationBasis rows(amps.n_nodes);
  const ExcitationBasis cols(amps.n_sources);
  fmt::print(out, "row_label,col_label,re,im\n");
  for (Eigen::Index k = 0; k < amps.p1.cols(); ++k) {
    for (Eigen::Index i = 0; i < amps.p1.rows(); ++i) {
      fmt::print(out, "{},{},{:.17g},{:.17g}\n", i + 1, k + 1, amps.p1(i, k).real(), amps.p1(i, k).imag());
    }
  }
  for (Eigen::Index c = 0; c < amps.p2.cols(); ++c) {
    const auto col_label = pair_label(cols.pair(static_cast<std::size_t>(c)));
    for (Eigen::Index r = 0; r < amps.p2.rows(); ++r) {
      fmt::print(out, "{},{},{:.17g},{:.17g}\n", pair_label(rows.pair(static_cast<std::size_t>(r))), col_label,
                 amps.p2(r, c).real(), amps.p2(r, c).imag());
    }
  }
}

}  // namespace spinlink
