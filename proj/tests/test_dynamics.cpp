#include <doctest.h>

#include <cmath>
#include <random>

#include <unsupported/Eigen/MatrixFunctions>

#include "oracles/full_space.hpp"
#include "spinlink/dynamics.hpp"
#include "spinlink/error.hpp"

using namespace spinlink;

namespace {

struct Setup {
  ChainSpec spec;
  ExcitationBasis basis;
  SpectralData sd;
  explicit Setup(ChainSpec s) : spec(s), basis(s.n_nodes()), sd(diagonalize(build_blocks(spec, basis))) {}
};

ChainSpec random_chain(int n, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.3, 1.5);
  std::vector<double> bonds(static_cast<std::size_t>(n - 1));
  for (auto& b : bonds) b = u(rng);
  return ChainSpec::from_bonds(bonds);
}

}  // namespace

TEST_CASE("propagators at t = 0 are identities") {
  const Setup s(ChainSpec::uniform(6));
  const auto u = propagators(s.sd, 0.0);
  CHECK((u.p1 - Eigen::MatrixXcd::Identity(6, 6)).norm() < 1e-14);
  CHECK((u.p2 - Eigen::MatrixXcd::Identity(15, 15)).norm() < 1e-14);
}

TEST_CASE("propagators equal the matrix exponential of each block") {
  const Setup s(random_chain(7, 3));
  const auto blocks = build_blocks(s.spec, s.basis);
  const double t = 3.7;
  const Eigen::MatrixXcd e1 = (std::complex<double>(0, -t) * blocks.h1.cast<std::complex<double>>()).exp();
  const Eigen::MatrixXcd e2 = (std::complex<double>(0, -t) * blocks.h2.cast<std::complex<double>>()).exp();
  const auto u = propagators(s.sd, t);
  CHECK((u.p1 - e1).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((u.p2 - e2).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pair amplitudes are 2x2 determinants of single amplitudes") {
  // Jordan-Wigner: nearest-neighbour hopping maps onto free fermions without string signs.
  const Setup s(random_chain(8, 4));
  const auto u = propagators(s.sd, 5.3);
  double worst = 0.0;
  for (int i = 1; i <= 8; ++i) {
    for (int j = i + 1; j <= 8; ++j) {
      for (int n = 1; n <= 8; ++n) {
        for (int m = n + 1; m <= 8; ++m) {
          const cplx det = u.single(i, n) * u.single(j, m) - u.single(i, m) * u.single(j, n);
          worst = std::max(worst, std::abs(det - u.pair(i, j, n, m)));
        }
      }
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("sender columns agree with the full propagators") {
  const Setup s(ChainSpec::boundary_controlled(12, 0.5, 0.8));
  const auto full = propagators(s.sd, 9.1);
  const auto part = propagators(s.sd, 9.1, 4);
  CHECK(part.p1.cols() == 4);
  CHECK(part.p2.cols() == 6);
  for (int k = 1; k <= 4; ++k) {
    for (int i = 1; i <= 12; ++i) CHECK(std::abs(part.single(i, k) - full.single(i, k)) < 1e-14);
  }
  CHECK(std::abs(part.pair(11, 12, 2, 4) - full.pair(11, 12, 2, 4)) < 1e-14);
}

TEST_CASE("evolution of simple sender states") {
  const Setup s(ChainSpec::boundary_controlled(20, 0.55, 0.817));
  const auto u = propagators(s.sd, 26.441, 4);

  const auto vac = evolve(SenderState::vacuum(), u);
  CHECK(vac.f0 == 1.0);
  CHECK(vac.f_single.norm() == 0.0);

  SenderState one(4);
  one.a(1) = 1.0;
  const auto e1 = evolve(one, u);
  for (int i = 1; i <= 20; ++i) CHECK(std::abs(e1.f_single[i - 1] - u.single(i, 1)) < 1e-15);

  SenderState bell(4);
  bell.a(1, 2) = bell.a(3, 4) = 1.0 / std::sqrt(2.0);
  const auto eb = evolve(bell, u);
  CHECK(std::abs(eb.norm_squared() - 1.0) < 1e-10);
  oracle::FullSpaceChain full(ChainSpec::boundary_controlled(8, 0.55, 0.817));
  const Setup small(ChainSpec::boundary_controlled(8, 0.55, 0.817));
  const auto us = propagators(small.sd, 4.2, 4);
  const auto ev = evolve(bell, us);
  const auto psi = full.evolve(bell, 4.2);
  for (int i = 1; i <= 8; ++i) {
    for (int j = i + 1; j <= 8; ++j) {
      CHECK(std::abs(ev.f_double[static_cast<Eigen::Index>(pair_index(i, j, 8))] - psi[(1 << (i - 1)) | (1 << (j - 1))]) <
            1e-12);
    }
  }
}

TEST_CASE("full-space oracle agrees with the excitation blocks") {
  const auto spec = random_chain(6, 9);
  const oracle::FullSpaceChain full(spec);
  const Setup s(spec);
  const auto u = propagators(s.sd, 2.2);
  SenderState one(4);
  one.a(3) = 1.0;
  const auto psi = full.evolve(one, 2.2);
  for (int i = 1; i <= 6; ++i) CHECK(std::abs(psi[1 << (i - 1)] - u.single(i, 3)) < 1e-12);
}

TEST_CASE("amplitude csv lists both blocks") {
  const Setup s(ChainSpec::uniform(4));
  std::ostringstream out;
  write_amplitudes_csv(out, propagators(s.sd, 1.0, 2));
  const auto text = out.str();
  CHECK(text.find("(1,2)") != std::string::npos);
  CHECK(text.find("4,1,") != std::string::npos);
}
