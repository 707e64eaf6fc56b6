#include <doctest.h>

#include <cmath>
#include <sstream>

#include "spinlink/disorder.hpp"
#include "spinlink/error.hpp"
#include "spinlink/inverse.hpp"
#include "spinlink/reference_values.hpp"

using namespace spinlink;

namespace {

const ChainSpec& base20() {
  static const ChainSpec s = ChainSpec::boundary_controlled(20, 0.550, 0.817);
  return s;
}

}  // namespace

TEST_CASE("disorder draws") {
  const auto a = draw_deltas(15, 3, 0);
  CHECK(a == draw_deltas(15, 3, 0));
  CHECK(a != draw_deltas(15, 3, 1));
  CHECK(a != draw_deltas(15, 4, 0));
  for (double d : a) {
    CHECK(d >= -1.0);
    CHECK(d < 1.0);
  }
  const auto many = draw_deltas(20000, 1, 0);
  double mean = 0.0;
  for (double d : many) mean += d;
  CHECK(std::abs(mean / many.size()) < 0.03);
}

TEST_CASE("sampled chains stay within the disorder band") {
  CHECK(sample_chain(base20(), 0.0, 5, 3) == base20());
  const auto c = sample_chain(base20(), 0.05, 5, 3);
  for (double d : c.bulk()) {
    CHECK(d >= 0.95);
    CHECK(d <= 1.05);
  }
  CHECK(c.delta1() == base20().delta1());
  CHECK(c.delta2() == base20().delta2());
}

TEST_CASE("zero disorder leaves the parameters untouched") {
  const auto st = param_statistics(base20(), 26.441, 0.0, 4, 1, 1);
  for (std::size_t q = 0; q < st.mean.size(); ++q) {
    CHECK(st.mean[q] == st.unperturbed.values()[q]);
    CHECK(st.std_abs[q] == 0.0);
  }
  InverseOptions o;
  o.seed = 1;
  const auto& rows = full_param_controls();
  std::vector<WernerControl> controls;
  for (const auto& row : rows) {
    SenderState a(4);
    for (std::size_t q = 0; q < 6; ++q) a.pair[q] = row.a[q];
    controls.push_back({row.p, a});
  }
  const auto w = werner_robustness(base20(), 26.441, controls, 0.0, 3, 1, 1);
  for (std::size_t i = 0; i < w.size(); ++i) {
    CHECK(w[i].mean_delta == w[i].unperturbed_delta);
    CHECK(w[i].std_delta == 0.0);
  }
}

TEST_CASE("statistics respond to disorder") {
  const int n = 40;
  const auto small = param_statistics(base20(), 26.441, 0.025, n, 8);
  const auto large = param_statistics(base20(), 26.441, 0.05, n, 8);
  std::size_t grown = 0;
  for (std::size_t q = 0; q < small.std_abs.size(); ++q) grown += large.std_abs[q] > small.std_abs[q];
  CHECK(grown >= small.std_abs.size() * 9 / 10);

  // Family I means fall below their ideal values.
  for (std::size_t q = 0; q < large.mean.size(); ++q) {
    if (large.tags[q] == Family::I) CHECK(std::abs(large.mean[q]) < std::abs(large.unperturbed.values()[q]));
  }
}

TEST_CASE("study output") {
  InverseOptions o;
  o.seed = 2;
  const auto unperturbed = line_params_for_chain(base20(), 26.441);
  const std::vector<WernerControl> controls{{0.2, solve_werner(unperturbed, 0.2, o).a}};
  const auto study = run_disorder_study(base20(), 26.441, 0.025, 5, 3, controls, 2);
  std::ostringstream params, werner;
  write_param_statistics_csv(params, study.params, "x");
  write_werner_csv(werner, study.werner);
  CHECK(params.str().rfind("# x\nparam_index,kind", 0) == 0);
  CHECK(werner.str().rfind("p,mean_delta", 0) == 0);
  const auto j = study_to_json(study);
  CHECK(j.at("parameters").size() == 170);
  CHECK(j.at("werner").size() == 1);
  CHECK_THROWS_AS(sample_line_params(base20(), 26.441, -0.1, 5, 1), Error);
  CHECK_THROWS_AS(sample_line_params(base20(), 26.441, 0.1, 1, 1), Error);
}
