#include <doctest.h>

#include <cmath>
#include <random>
#include <sstream>

#include "oracles/checks.hpp"
#include "oracles/full_space.hpp"
#include "spinlink/error.hpp"
#include "spinlink/receiver.hpp"
#include "spinlink/reference_values.hpp"

using namespace spinlink;

namespace {

const LineParams& tuned20() {
  static const LineParams p = line_params_for_chain(ChainSpec::boundary_controlled(20, 0.550, 0.817), 26.441);
  return p;
}

}  // namespace

TEST_CASE("parameter table layout") {
  const LineParams p(4, 20, 1.0);
  CHECK(p.size() == 170);
  CHECK(line_param_count(4) == 170);
  for (std::size_t q = 1; q < p.size(); ++q) CHECK(p.keys()[q - 1] < p.keys()[q]);
  CHECK(p.keys()[0].label(20) == "p_{20;1}");
  CHECK(make_key(ParamKind::P_mN, {2, 3, 1, 3}).label(20) == "P_{19,20;2,3,1,3}");
  CHECK_THROWS(make_key(ParamKind::P_N, {1, 2}));
  CHECK_THROWS_AS(p[make_key(ParamKind::P_N, {1, 2, 2})], Error);
}

TEST_CASE("published parameter values of the N = 20 chain") {
  const auto& p = tuned20();
  CHECK(std::abs(p[make_key(ParamKind::p_N, {1})] - cplx(0, 0.99606)) < 1e-4);
  CHECK(std::abs(p[make_key(ParamKind::P_mm, {2, 3, 2, 3})] - cplx(0.93561, 0)) < 1e-4);
  CHECK(std::abs(p[make_key(ParamKind::p_Nm1, {4})] - cplx(0, -0.08929)) < 1e-4);
  CHECK(std::abs(p[make_key(ParamKind::p_Nm1, {1})] - cplx(-1.007e-4, 0)) < 2e-5);
  CHECK(hermitian_pair_asymmetry(p) < 1e-12);
}

TEST_CASE("family windows of the N = 20 chain") {
  const auto report = classify_families(tuned20());
  CHECK(report.range(Family::I).count == 13);
  CHECK(report.range(Family::II).count == 14);
  CHECK(report.range(Family::III).count == 143);
  CHECK(report.range(Family::I).min_abs > 0.9356 - 1e-4);
  CHECK(report.range(Family::I).max_abs < 0.9961 + 1e-4);
  CHECK(report.range(Family::II).min_abs > 0.0635 - 1e-4);
  CHECK(report.range(Family::II).max_abs < 0.0893 + 1e-4);
  CHECK(report.range(Family::III).max_abs < 0.0193 + 1e-4);

  const auto kept = keep_families(tuned20(), report, {Family::I});
  for (std::size_t q = 0; q < kept.size(); ++q) {
    if (report.tags[q] == Family::I) CHECK(kept.values()[q] == tuned20().values()[q]);
    else CHECK(kept.values()[q] == cplx(0, 0));
  }
}

TEST_CASE("receiver state of simple senders") {
  const auto& p = tuned20();
  const auto vac = assemble_rho(p, SenderState::vacuum()).rho;
  Eigen::Matrix4cd diag = Eigen::Matrix4cd::Zero();
  diag(0, 0) = 1.0;
  CHECK((vac - diag).norm() < 1e-15);

  SenderState one(4);
  one.a(1) = 1.0;
  const auto r = assemble_rho(p, one).rho;
  CHECK(std::abs(r(2, 2).real() - std::norm(p.p_N(0))) < 1e-15);
  CHECK(std::abs(r(2, 2).real() - 0.99214) < 1e-3);
  CHECK(std::abs(r(0, 0).real() - (1.0 - r(1, 1).real() - r(2, 2).real())) < 1e-14);

  const auto at_zero = line_params_for_chain(ChainSpec::boundary_controlled(9, 0.5, 0.8), 0.0);
  std::mt19937_64 rng(1);
  for (int i = 0; i < 10; ++i) CHECK((assemble_rho(at_zero, oracle::random_sender(rng)).rho - diag).norm() < 1e-14);
}

TEST_CASE("homogeneous form scales with the squared norm") {
  std::mt19937_64 rng(2);
  auto s = oracle::random_sender(rng);
  const auto base = assemble_rho(tuned20(), s).rho;
  for (auto& v : s.single) v *= 2.0;
  for (auto& v : s.pair) v *= 2.0;
  s.a0 *= 2.0;
  CHECK((assemble_rho_homogeneous(tuned20(), s) - 4.0 * base).norm() < 1e-13);
}

TEST_CASE("assemble_rho agrees with the partial trace and full-space evolution") {
  for (const auto& line : oracle::oracle_equivalence(100, 10)) {
    INFO(line.text);
    CHECK(line.ok);
  }
}

TEST_CASE("line parameter errors") {
  const ExcitationBasis b(5);
  const auto sd = diagonalize(build_blocks(ChainSpec::uniform(5), b));
  try {
    compute_line_params(propagators(sd, 1.0, 4), 4);
    FAIL("sender overlaps receiver");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::sender_receiver_overlap);
  }
  const ExcitationBasis b20(20);
  const auto sd1 = diagonalize(build_blocks(ChainSpec::uniform(20), b20, BlockSelection::single_excitation));
  CHECK_THROWS_AS(compute_line_params(propagators(sd1, 1.0, 4), 4), Error);
  CHECK_THROWS_AS(classify_families(line_params_for_chain(ChainSpec::uniform(10), 2.0, 3)), Error);
}

TEST_CASE("parameter csv round trip") {
  const auto& p = tuned20();
  std::ostringstream out;
  write_params_csv(out, p, classify_families(p).tags, "tool test\nsecond line");
  std::istringstream in(out.str());
  const auto back = read_params_csv(in, 4);
  CHECK(back.n_nodes() == 20);
  CHECK(back.time() == p.time());
  for (std::size_t q = 0; q < p.size(); ++q) CHECK(back.values()[q] == p.values()[q]);

  std::istringstream truncated("kind,indices,re,im,family\np_N,1,0,1,I\n");
  CHECK_THROWS_AS(read_params_csv(truncated, 4), Error);
  std::istringstream unknown("kind,indices,re,im,family\nq_X,1,0,1,I\n");
  CHECK_THROWS_AS(read_params_csv(unknown, 4), Error);
}

TEST_CASE("cross-receiver pair terms vanish for four distinct sender nodes") {
  const auto& p = tuned20();
  for (const auto& key : p.keys()) {
    if (key.kind != ParamKind::P_mN) continue;
    const auto& i = key.idx;
    if (i[0] == i[2] || i[0] == i[3] || i[1] == i[2] || i[1] == i[3]) continue;
    CHECK(std::abs(p[key]) < 1e-13);
  }
}
