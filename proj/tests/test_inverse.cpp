#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles/full_space.hpp"
#include "spinlink/error.hpp"
#include "spinlink/inverse.hpp"
#include "spinlink/reference_values.hpp"

using namespace spinlink;

namespace {

const LineParams& tuned20() {
  static const LineParams p = line_params_for_chain(ChainSpec::boundary_controlled(20, 0.550, 0.817), 26.441);
  return p;
}

}  // namespace

TEST_CASE("werner target") {
  const auto w = TargetState::werner(0.3);
  CHECK(w.A.trace().real() == doctest::Approx(1.0));
  CHECK(w.A(1, 2).real() == doctest::Approx(-0.15));
  CHECK_NOTHROW(w.validate());
  CHECK_THROWS_AS(TargetState::werner(1.2), Error);
  const auto from_json = target_from_json(nlohmann::json{{"werner", 0.3}});
  CHECK(from_json.A == w.A);
}

TEST_CASE("discrepancy") {
  Eigen::Matrix4cd a = Eigen::Matrix4cd::Zero(), b = Eigen::Matrix4cd::Zero();
  a(0, 0) = 1.0;
  b(1, 1) = 1.0;
  CHECK(discrepancy(a, TargetState{a}) == 0.0);
  CHECK(discrepancy(a, TargetState{b}) == doctest::Approx(std::sqrt(2.0)));
  CHECK_THROWS_AS(discrepancy(a, TargetState{}), Error);
}

TEST_CASE("printed controls reproduce the printed discrepancy") {
  const auto& rows = full_param_controls();
  SenderState a(4);
  for (std::size_t q = 0; q < 6; ++q) a.pair[q] = rows[0].a[q];
  CHECK(discrepancy(assemble_rho(tuned20(), a).rho, TargetState::werner(0.0)) == doctest::Approx(4.235e-5).epsilon(0.01));
}

TEST_CASE("werner solutions on the full parameters") {
  InverseOptions o;
  o.seed = 11;
  for (double p : {0.0, 0.4, 0.8}) {
    const auto sol = solve_werner(tuned20(), p, o);
    CHECK(sol.residual < 1e-10);
    CHECK(sol.discrepancy < 1e-9);
    CHECK(std::abs(sol.a.norm_squared() - 1.0) < 1e-10);
  }
  CHECK_THROWS_AS(solve_werner(tuned20(), 0.9, o), InfeasibleTarget);
  CHECK_THROWS_AS(solve_werner(tuned20(), 1.0, o), InfeasibleTarget);
}

TEST_CASE("werner residuals vanish at a solution") {
  InverseOptions o;
  o.seed = 4;
  const auto sol = solve_werner(tuned20(), 0.5, o);
  std::vector<double> x;
  for (const auto& v : sol.a.pair) x.push_back(v.real());
  for (double r : werner_residuals(tuned20(), 0.5, x)) CHECK(std::abs(r) < 1e-10);
  CHECK_THROWS_AS(werner_residuals(tuned20(), 0.5, std::vector<double>(5, 0.1)), Error);
}

TEST_CASE("general solve recovers self-generated targets") {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 3; ++i) {
    const auto s = oracle::random_sender(rng);
    const TargetState target{assemble_rho(tuned20(), s).rho};
    InverseOptions o;
    o.seed = 100 + i;
    o.starts = 16;
    o.tolerance = 1e-12;
    const auto sol = solve_general(tuned20(), target, o);
    CHECK(sol.discrepancy < 1e-8);
  }
  Eigen::Matrix4cd vac = Eigen::Matrix4cd::Zero();
  vac(0, 0) = 1.0;
  InverseOptions o;
  o.seed = 2;
  o.starts = 8;
  const auto sol = solve_general(tuned20(), TargetState{vac}, o);
  // Any sender state whose excitations miss the receiver qualifies, not only the vacuum.
  CHECK(sol.residual < 1e-10);
  CHECK(sol.discrepancy < 1e-9);
}

TEST_CASE("general solve reaches a Werner target") {
  InverseOptions o;
  o.seed = 5;
  o.starts = 32;
  const auto sol = solve_general(tuned20(), TargetState::werner(0.2), o);
  CHECK(sol.discrepancy <= 1.532e-5);
}

TEST_CASE("feasibility boundary") {
  InverseOptions o;
  o.seed = 9;
  const std::vector<double> grid{0.0, 0.2, 0.4, 0.6, 0.8, 0.85, 0.9, 0.95, 1.0};
  const auto res = feasibility_scan(tuned20(), grid, 1e-4, o);
  CHECK(res.feasible.front());
  CHECK(!res.feasible.back());
  CHECK(std::abs(res.boundary - kPublishedFeasibilityBoundary) < 0.002);
  CHECK(res.first_infeasible - res.last_feasible <= 1e-4 + 1e-12);
}

TEST_CASE("same seed, same solution") {
  InverseOptions o;
  o.seed = 77;
  const auto a = solve_werner(tuned20(), 0.3, o);
  const auto b = solve_werner(tuned20(), 0.3, o);
  CHECK(a.a.pair == b.a.pair);
  o.seed = 78;
  const auto c = solve_werner(tuned20(), 0.3, o);
  CHECK(c.residual < 1e-10);
}

TEST_CASE("rounding controls") {
  SenderState s(4);
  s.a(1, 2) = {0.123456789, -0.987654321};
  const auto r = round_controls(s, 5);
  CHECK(r.a(1, 2).real() == doctest::Approx(0.12346).epsilon(1e-12));
  CHECK(r.a(1, 2).imag() == doctest::Approx(-0.98765).epsilon(1e-12));
}
