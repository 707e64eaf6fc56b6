#include <doctest.h>

#include <vector>

#include "spinlink/basis.hpp"
#include "spinlink/error.hpp"

using namespace spinlink;

TEST_CASE("basis dimension") {
  CHECK(ExcitationBasis(20).dimension() == 211);
  CHECK(ExcitationBasis(60).dimension() == 1831);
  CHECK(ExcitationBasis(4).pair_count() == 6);
}

TEST_CASE("pairs are lexicographic") {
  const ExcitationBasis b(4);
  const std::vector<NodePair> expected{{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}};
  REQUIRE(b.pairs().size() == expected.size());
  for (std::size_t q = 0; q < expected.size(); ++q) {
    CHECK(b.pair(q) == expected[q]);
    CHECK(b.pair_index(expected[q].first, expected[q].second) == q);
  }
  const ExcitationBasis big(20);
  for (std::size_t q = 0; q < big.pair_count(); ++q) {
    const auto p = big.pair(q);
    CHECK(pair_index(p.first, p.second, 20) == q);
  }
  CHECK(b.single_state(1) == 1);
  CHECK(b.pair_state(1, 2) == 5);
  CHECK_THROWS_AS(b.pair_index(3, 3), Error);
  CHECK_THROWS_AS(b.pair_index(2, 5), Error);
}

TEST_CASE("sender state validation") {
  SenderState vac = SenderState::vacuum();
  CHECK_NOTHROW(validate_sender_state(vac));

  SenderState pair(4);
  pair.a(1, 2) = 1.0;
  CHECK_NOTHROW(validate_sender_state(pair));

  SenderState bad(4);
  bad.a0 = 0.8;
  bad.a(1) = 0.8;
  try {
    validate_sender_state(bad);
    FAIL("expected a norm violation");
  } catch (const NormViolation& e) {
    CHECK(e.deviation() == doctest::Approx(0.28));
  }

  SenderState complex_vac(4);
  complex_vac.a0 = {0.0, 1.0};
  try {
    validate_sender_state(complex_vac);
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::complex_vacuum_amplitude);
  }
}

TEST_CASE("real vector round trip") {
  SenderState s(4);
  s.a0 = 0.3;
  for (int k = 1; k <= 4; ++k) s.a(k) = {0.1 * k, -0.05 * k};
  for (std::size_t q = 0; q < s.pair.size(); ++q) s.pair[q] = {0.02 * q, 0.03};
  const auto x = to_real_vector(s);
  CHECK(x.size() == 21);
  const auto back = from_real_vector(x, 4);
  CHECK(back.a0 == s.a0);
  CHECK(back.single == s.single);
  CHECK(back.pair == s.pair);
  CHECK(real_parameter_count(4) == 20);
}
