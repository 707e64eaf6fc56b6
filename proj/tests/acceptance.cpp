// Acceptance report: one line per criterion, details indented below.
#include <array>
#include <chrono>
#include <iostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "oracles/checks.hpp"
#include "spinlink/reproduce.hpp"

using namespace spinlink;

namespace {

spinlink::CriterionResult from_lines(int id, std::string title, const std::vector<oracle::CheckLine>& lines) {
  CriterionResult r{id, std::move(title), true, {}};
  for (const auto& l : lines) {
    r.passed = r.passed && l.ok;
    r.details.push_back(fmt::format("{} {}", l.text, l.ok ? "✓" : "✗"));
  }
  return r;
}

}  // namespace

int main() {
  const std::array<int, 2> sizes{20, 60};
  const std::uint64_t seed = 7;
  std::vector<CriterionResult> results;
  auto timed = [&](auto&& fn) {
    const auto start = std::chrono::steady_clock::now();
    auto r = fn();
    const std::chrono::duration<double> took = std::chrono::steady_clock::now() - start;
    r.details.push_back(fmt::format("{:.1f} s", took.count()));
    results.push_back(std::move(r));
  };
  timed([&] { return check_boundary_optimization(sizes); });
  timed([&] { return check_family_one(sizes); });
  timed([&] { return check_family_two(sizes); });
  timed([&] { return check_appendix(); });
  timed([&] { return from_lines(5, "Oracle equivalence", oracle::oracle_equivalence(100, 10)); });
  timed([&] { return check_probe_closure(seed); });
  std::vector<WernerControl> controls;
  timed([&] {
    auto w = check_werner_creation(seed);
    controls = w.controls;
    return w.result;
  });
  timed([&] { return check_disorder(controls, seed); });
  timed([&] { return from_lines(9, "Invariant suite", oracle::invariant_suite()); });

  print_report(std::cout, results);
  bool all = true;
  for (const auto& r : results) all = all && r.passed;
  fmt::print("{}\n", all ? "all criteria passed" : "some criteria FAILED");
  return all ? 0 : 1;
}
