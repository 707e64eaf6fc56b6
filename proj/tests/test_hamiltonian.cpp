#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "spinlink/dynamics.hpp"
#include "spinlink/error.hpp"
#include "spinlink/hamiltonian.hpp"

using namespace spinlink;

TEST_CASE("one-excitation block of a uniform chain") {
  const ExcitationBasis b(4);
  const auto blocks = build_blocks(ChainSpec::uniform(4), b);
  for (int i = 0; i < 4; ++i) {
    CHECK(blocks.h1(i, i) == 0.0);
    if (i + 1 < 4) {
      CHECK(blocks.h1(i, i + 1) == 0.5);
      CHECK(blocks.h1(i + 1, i) == 0.5);
    }
  }
  CHECK(blocks.h1(0, 2) == 0.0);
}

TEST_CASE("two-excitation block follows single-bond hops") {
  const ExcitationBasis b(4);
  const auto h2 = build_blocks(ChainSpec::uniform(4), b).h2;
  CHECK(h2(b.pair_index(1, 2), b.pair_index(1, 3)) == 0.5);
  CHECK(h2(b.pair_index(1, 2), b.pair_index(3, 4)) == 0.0);
  CHECK((h2 - h2.transpose()).norm() == 0.0);
}

TEST_CASE("boundary-controlled layout") {
  const auto spec = ChainSpec::boundary_controlled(20, 0.550, 0.817);
  const ExcitationBasis b(20);
  const auto h1 = build_blocks(spec, b, BlockSelection::single_excitation).h1;
  CHECK(h1(0, 1) == doctest::Approx(0.275));
  CHECK(h1(1, 2) == doctest::Approx(0.4085));
  CHECK(h1(18, 19) == doctest::Approx(0.275));
  CHECK(h1(17, 18) == doctest::Approx(0.4085));
  CHECK(h1(9, 10) == doctest::Approx(0.5));
  CHECK(spec.is_mirror_symmetric());
  CHECK(spec.bulk().size() == 15);
  CHECK_THROWS_AS(ChainSpec::boundary_controlled(6, 0.5, 0.8), Error);
  CHECK_THROWS_AS(ChainSpec::boundary_controlled(10, 0.5, 0.8, {1.0, 1.0}), Error);
  CHECK_THROWS_AS(ChainSpec::from_bonds({1.0, -0.1}), Error);
}

TEST_CASE("spectrum of the four-node chain") {
  const ExcitationBasis b(4);
  const auto sd = diagonalize(build_blocks(ChainSpec::uniform(4), b));
  const double s5 = std::sqrt(5.0);
  const double expected[4] = {-(1 + s5) / 4, -(s5 - 1) / 4, (s5 - 1) / 4, (1 + s5) / 4};
  for (int i = 0; i < 4; ++i) CHECK(sd.e1[i] == doctest::Approx(expected[i]).epsilon(1e-14));
  CHECK(std::abs(sd.e1.sum()) < 1e-14);
}

TEST_CASE("disorder on bulk bonds") {
  const auto base = ChainSpec::boundary_controlled(10, 0.5, 0.8);
  const std::vector<double> zeros(5, 0.0), ones(5, 1.0);
  CHECK(apply_disorder(base, 0.0, ones) == base);
  const auto up = apply_disorder(base, 0.05, ones);
  for (double d : up.bulk()) CHECK(d == doctest::Approx(1.05));
  CHECK(up.delta1() == 0.5);
  CHECK(up.delta2() == 0.8);
  std::vector<double> first_down(5, 0.0);
  first_down[0] = -1.0;
  CHECK(apply_disorder(base, 0.025, first_down).bond(3) == doctest::Approx(0.975));
  CHECK_THROWS_AS(apply_disorder(base, 0.05, std::vector<double>(4, 0.0)), Error);
  CHECK_THROWS_AS(apply_disorder(base, -0.1, zeros), Error);
}

TEST_CASE("chain json round trip") {
  const auto spec = ChainSpec::boundary_controlled(12, 0.41, 0.72, {1, 1.1, 0.9, 1, 1, 1, 1});
  nlohmann::json j;
  to_json(j, spec);
  CHECK(chain_from_json(j) == spec);
  CHECK(chain_from_json(nlohmann::json{{"n", 4}, {"bonds", {0.5, 1.0, 0.5}}}).n_nodes() == 4);
  CHECK_THROWS_AS(chain_from_json(nlohmann::json{{"n", "x"}}), Error);
}
