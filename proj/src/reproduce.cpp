#include "spinlink/reproduce.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <ostream>

#include <fmt/format.h>
#include <fmt/ostream.h>

#include "spinlink/chainopt.hpp"
#include "spinlink/error.hpp"
#include "spinlink/inverse.hpp"
#include "spinlink/probing.hpp"
#include "spinlink/receiver.hpp"
#include "spinlink/reference_values.hpp"

namespace spinlink {
namespace {

constexpr double kTableTolerance = 1e-4;
constexpr double kAppendixTolerance = 2e-5;

const char* mark(bool ok) { return ok ? "✓" : "✗"; }

std::string format_complex(cplx v) {
  if (v.imag() == 0.0) return fmt::format("{:.5f}", v.real());
  if (v.real() == 0.0) return fmt::format("{:.5f}i", v.imag());
  return fmt::format("{:.5f}{:+.5f}i", v.real(), v.imag());
}

// Small values are printed like the appendix, with four significant digits.
std::string format_small(cplx v) {
  auto part = [](double x) { return fmt::format("{:.3e}", x); };
  if (std::abs(v.imag()) < 1e-12) return part(v.real());
  if (std::abs(v.real()) < 1e-12) return part(v.imag()) + "i";
  return part(v.real()) + (v.imag() < 0 ? "" : "+") + part(v.imag()) + "i";
}

std::vector<double> werner_grid() {
  std::vector<double> grid;
  for (int i = 0; i <= 8; ++i) grid.push_back(0.1 * i);
  return grid;
}

CriterionResult family_check(int id, Family family, std::span<const int> sizes) {
  CriterionResult r{id, family == Family::I ? "Family I parameters" : "Family II parameters", true, {}};
  for (int n : sizes) {
    const LineParams& params = published_chain_params(n);
    double worst = 0.0;
    std::size_t count = 0;
    for (const auto& row : published_families()) {
      if (row.family != family) continue;
      ++count;
      const cplx expected = n == 20 ? row.n20 : row.n60;
      const cplx ours = params[row.key];
      const double dev = std::abs(ours - expected);
      worst = std::max(worst, dev);
      const bool ok = dev <= kTableTolerance;
      r.passed = r.passed && ok;
      r.details.push_back(fmt::format("N={}: {} = {} (published {}) {}", n, row.key.label(n), format_complex(ours),
                                      format_complex(expected), mark(ok)));
    }
    r.details.push_back(fmt::format("N={}: {} entries, max deviation {:.2e} (tolerance {:.0e})", n, count, worst,
                                    kTableTolerance));
  }
  return r;
}

}  // namespace

const LineParams& published_chain_params(int n_nodes) {
  static std::mutex guard;
  static std::map<int, LineParams> cache;
  std::lock_guard lock(guard);
  auto it = cache.find(n_nodes);
  if (it == cache.end()) {
    const auto preset = published_preset(n_nodes);
    const auto spec = ChainSpec::boundary_controlled(n_nodes, preset.delta1, preset.delta2);
    it = cache.emplace(n_nodes, line_params_for_chain(spec, preset.t0)).first;
  }
  return it->second;
}

CriterionResult check_boundary_optimization(std::span<const int> sizes, int threads) {
  CriterionResult r{1, "Boundary coupling optimization", true, {}};
  for (int n : sizes) {
    const auto preset = published_preset(n);
    BoundaryOptions options;
    options.threads = threads;
    const auto opt = optimize_boundary(n, options);
    const double t_tol = n <= 20 ? 0.02 : 0.05;
    const bool d1 = std::abs(opt.delta1 - preset.delta1) <= 0.005;
    const bool d2 = std::abs(opt.delta2 - preset.delta2) <= 0.005;
    const bool t0 = std::abs(opt.t0 - preset.t0) <= t_tol;
    const bool amp = std::abs(opt.amplitude - preset.amplitude) <= 5e-4;
    r.passed = r.passed && d1 && d2 && t0 && amp;
    r.details.push_back(fmt::format("N={}: delta1 = {:.5f} (published {:.3f} ± 0.005) {}", n, opt.delta1,
                                    preset.delta1, mark(d1)));
    r.details.push_back(fmt::format("N={}: delta2 = {:.5f} (published {:.3f} ± 0.005) {}", n, opt.delta2,
                                    preset.delta2, mark(d2)));
    r.details.push_back(
        fmt::format("N={}: t0 = {:.5f} (published {:.3f} ± {}) {}", n, opt.t0, preset.t0, t_tol, mark(t0)));
    r.details.push_back(fmt::format("N={}: |p_{{{};1}}| = {:.5f} (published {:.5f}) {}", n, n, opt.amplitude,
                                    preset.amplitude, mark(amp)));
  }
  return r;
}

CriterionResult check_family_one(std::span<const int> sizes) { return family_check(2, Family::I, sizes); }

CriterionResult check_family_two(std::span<const int> sizes) {
  CriterionResult r = family_check(3, Family::II, sizes);
  if (std::find(sizes.begin(), sizes.end(), 20) == sizes.end()) return r;
  const auto report = classify_families(published_chain_params(20));
  const auto& one = report.range(Family::I);
  const auto& two = report.range(Family::II);
  const auto& three = report.range(Family::III);
  // The printed windows are rounded to four decimals.
  const double slack = kTableTolerance;
  const bool w1 = one.min_abs >= kFamilyOneWindow20.lo - slack && one.max_abs <= kFamilyOneWindow20.hi + slack;
  const bool w2 = two.min_abs >= kFamilyTwoWindow20.lo - slack && two.max_abs <= kFamilyTwoWindow20.hi + slack;
  const bool w3 = three.max_abs < kFamilyThreeBound20 + slack;
  const bool sep = three.max_abs < two.min_abs && two.min_abs < one.min_abs;
  r.passed = r.passed && w1 && w2 && w3 && sep;
  r.details.push_back(fmt::format("N=20: Family I |P| in [{:.5f}, {:.5f}] (published {} < |P| < {}) {}", one.min_abs,
                                  one.max_abs, kFamilyOneWindow20.lo, kFamilyOneWindow20.hi, mark(w1)));
  r.details.push_back(fmt::format("N=20: Family II |P| in [{:.5f}, {:.5f}] (published {} < |P| < {}) {}", two.min_abs,
                                  two.max_abs, kFamilyTwoWindow20.lo, kFamilyTwoWindow20.hi, mark(w2)));
  r.details.push_back(fmt::format("N=20: Family III max |P| = {:.5f} (published below {}) {}", three.max_abs,
                                  kFamilyThreeBound20, mark(w3)));
  r.details.push_back(fmt::format("N=20: max|III| < min|II| < min|I| {}", mark(sep)));
  return r;
}

CriterionResult check_appendix() {
  CriterionResult r{4, "Family III parameters and parameter count", true, {}};
  const LineParams& params = published_chain_params(20);
  double worst = 0.0;
  double worst_partner = 0.0;
  for (const auto& e : appendix_entries()) {
    const cplx ours = params[e.key];
    const double dev = std::abs(ours - e.value);
    worst = std::max(worst, dev);
    bool ok = dev <= kAppendixTolerance;
    std::string partner_note;
    if (e.partner) {
      cplx other = params[*e.partner];
      if (e.partner_conjugate) other = std::conj(other);
      const double pdev = std::abs(other - e.value);
      worst_partner = std::max(worst_partner, pdev);
      ok = ok && pdev <= kAppendixTolerance;
      partner_note = fmt::format(" = {}{}", e.partner_conjugate ? "conj " : "", e.partner->label(20));
    }
    r.passed = r.passed && ok;
    if (!ok) {
      r.details.push_back(fmt::format("{}{} = {} (published {}) {}", e.key.label(20), partner_note, format_small(ours),
                                      format_small(e.value), mark(ok)));
    }
  }
  r.details.push_back(fmt::format("{} listed entries, max deviation {:.2e}, partner max deviation {:.2e} "
                                  "(tolerance {:.0e}) {}",
                                  appendix_entries().size(), worst, worst_partner, kAppendixTolerance,
                                  mark(worst <= kAppendixTolerance && worst_partner <= kAppendixTolerance)));

  const auto report = classify_families(params);
  const auto c1 = report.range(Family::I).count;
  const auto c2 = report.range(Family::II).count;
  const auto c3 = report.range(Family::III).count;
  const bool count_ok = params.size() == 170 && c1 == 13 && c2 == 14 && c3 == 143;
  const double asym = hermitian_pair_asymmetry(params);
  const bool sym_ok = asym <= 1e-12;
  r.passed = r.passed && count_ok && sym_ok;
  r.details.push_back(fmt::format("parameter count {} = {} + {} + {} {}", params.size(), c1, c2, c3, mark(count_ok)));
  r.details.push_back(fmt::format("Hermitian pair asymmetry {:.2e} (tolerance 1e-12) {}", asym, mark(sym_ok)));
  return r;
}

CriterionResult check_probe_closure(std::uint64_t seed) {
  CriterionResult r{6, "Probe protocol closure", true, {}};
  const auto preset = published_preset(20);
  const auto base = ChainSpec::boundary_controlled(20, preset.delta1, preset.delta2);
  const auto probes = probe_set(4);
  struct Case {
    std::string name;
    ChainSpec spec;
  };
  const std::vector<Case> cases{{"unperturbed N=20", base},
                                {fmt::format("eps=0.05 N=20 (seed {})", seed), sample_chain(base, 0.05, seed, 0)}};
  for (const auto& c : cases) {
    const LineParams truth = line_params_for_chain(c.spec, preset.t0);
    const auto outputs = simulate_probes(truth, probes);
    const LineParams got = extract_params(outputs, 20, preset.t0);
    double worst = 0.0;
    for (std::size_t q = 0; q < truth.size(); ++q) worst = std::max(worst, std::abs(got.values()[q] - truth.values()[q]));
    const bool ok = worst <= 1e-9;
    r.passed = r.passed && ok;
    r.details.push_back(fmt::format("{}: {} probes, max |extracted - computed| = {:.2e} (tolerance 1e-9) {}", c.name,
                                    probes.size(), worst, mark(ok)));
  }
  return r;
}

WernerReproduction check_werner_creation(std::uint64_t seed, int threads) {
  WernerReproduction out;
  auto& r = out.result;
  r = {7, "Werner state creation", true, {}};
  const LineParams& params = published_chain_params(20);
  const auto published = full_param_controls();
  const auto published_approx = approximate_param_controls();

  InverseOptions options;
  options.seed = seed;
  options.threads = threads;
  const auto grid = werner_grid();
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = grid[i];
    const auto sol = solve_werner(params, p, options);
    const double bound = 10.0 * published[i].delta;
    const bool ok = sol.residual < 1e-10 && sol.discrepancy <= bound && sol.rounded_discrepancy <= 5e-4;
    r.passed = r.passed && ok;
    SenderState printed_a(4);
    for (std::size_t q = 0; q < 6; ++q) printed_a.pair[q] = published[i].a[q];
    const double printed_delta = discrepancy(assemble_rho(params, printed_a).rho, TargetState::werner(p));
    r.details.push_back(fmt::format(
        "p={:.1f}: residual {:.1e}, delta {:.1e}, delta with 5-decimal controls {:.3e} (limit {:.3e}); "
        "printed controls give {:.3e} (printed {:.3e}) {}",
        p, sol.residual, sol.discrepancy, sol.rounded_discrepancy, std::min(bound, 5e-4), printed_delta,
        published[i].delta, mark(ok)));
    out.controls.push_back({p, sol.a});
  }

  std::vector<double> scan_grid;
  for (int i = 0; i <= 20; ++i) scan_grid.push_back(0.05 * i);
  const auto feas = feasibility_scan(params, scan_grid, 1e-4, options);
  const bool feas_ok = std::abs(feas.boundary - kPublishedFeasibilityBoundary) <= 0.002;
  r.passed = r.passed && feas_ok;
  r.details.push_back(fmt::format("feasibility boundary p = {:.4f} in [{:.5f}, {:.5f}] (published {}) {}", feas.boundary,
                                  feas.last_feasible, feas.first_infeasible, kPublishedFeasibilityBoundary,
                                  mark(feas_ok)));

  const auto report = classify_families(params);
  const LineParams approx = keep_families(params, report, {Family::I, Family::II});
  InverseOptions approx_options = options;
  approx_options.selection = SolutionSelection::closest_reference;
  approx_options.reference = &params;
  // With Family III zeroed, Im q_(N-1)N vanishes identically for real controls, so the solutions form a
  // curve and the printed row is one point on it. The best point must beat 0.03 for every p; at p = 0.8
  // the median over converged starts must fall in the printed band.
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double p = grid[i];
    const auto sol = solve_werner(approx, p, approx_options);
    std::vector<double> spread = sol.start_reference_discrepancies;
    std::sort(spread.begin(), spread.end());
    const double median = spread[spread.size() / 2];
    bool ok = sol.residual < 1e-10 && sol.reference_discrepancy < 0.03;
    const bool last = i + 1 == grid.size();
    if (last) ok = ok && median >= 5e-3 && median <= 2e-2;
    r.passed = r.passed && ok;
    SenderState printed_a(4);
    for (std::size_t q = 0; q < 6; ++q) printed_a.pair[q] = published_approx[i].a[q];
    const double printed_delta = discrepancy(assemble_rho(params, printed_a).rho, TargetState::werner(p));
    r.details.push_back(fmt::format(
        "Family III zeroed, p={:.1f}: delta on full parameters best {:.3e}, median {:.3e}, max {:.3e} over {} "
        "converged starts{}; printed controls give {:.3e} (printed {:.3e}) {}",
        p, sol.reference_discrepancy, median, spread.back(), spread.size(), last ? " (median in [5e-3, 2e-2])" : "",
        printed_delta, published_approx[i].delta, mark(ok)));
  }
  return out;
}

CriterionResult check_disorder(std::span<const WernerControl> controls, std::uint64_t seed, int n_chains, int threads) {
  CriterionResult r{8, "Disorder robustness of Werner creation", true, {}};
  const auto preset = published_preset(20);
  const auto base = ChainSpec::boundary_controlled(20, preset.delta1, preset.delta2);
  const std::array<double, 2> eps{0.025, 0.05};
  const std::array<double, 2> bounds{0.02, 0.05};
  std::array<DisorderStudy, 2> studies{run_disorder_study(base, preset.t0, eps[0], n_chains, seed, controls, threads),
                                       run_disorder_study(base, preset.t0, eps[1], n_chains, seed, controls, threads)};
  for (std::size_t e = 0; e < 2; ++e) {
    double lo = 1.0, hi = 0.0;
    for (const auto& w : studies[e].werner) {
      const double sigma_mean = w.std_delta / std::sqrt(static_cast<double>(n_chains));
      const bool ok = w.mean_delta <= bounds[e] + 2.0 * sigma_mean;
      r.passed = r.passed && ok;
      lo = std::min(lo, w.mean_delta);
      hi = std::max(hi, w.mean_delta);
      r.details.push_back(fmt::format("eps={}: p={:.1f} mean delta {:.5f} ± {:.5f} (std {:.5f}, limit {}) {}",
                                      eps[e], w.p, w.mean_delta, sigma_mean, w.std_delta, bounds[e], mark(ok)));
    }
    r.details.push_back(fmt::format("eps={}: spread over p {:.5f} vs max {:.5f} (flat if below half: {})", eps[e],
                                    hi - lo, hi, hi - lo < 0.5 * hi ? "yes" : "no"));
  }
  bool monotone = true;
  for (std::size_t i = 0; i < controls.size(); ++i) {
    monotone = monotone && studies[1].werner[i].mean_delta > studies[0].werner[i].mean_delta;
  }
  r.passed = r.passed && monotone;
  r.details.push_back(fmt::format("mean delta grows with eps for every p {}", mark(monotone)));

  std::size_t grown = 0;
  const auto& s0 = studies[0].params;
  const auto& s1 = studies[1].params;
  for (std::size_t q = 0; q < s0.std_abs.size(); ++q) grown += s1.std_abs[q] > s0.std_abs[q] ? 1 : 0;
  r.details.push_back(fmt::format("parameter std grows with eps for {} of {} entries", grown, s0.std_abs.size()));
  return r;
}

std::vector<CriterionResult> reproduce_paper(const ReproduceOptions& options) {
  const int n = options.n_nodes;
  published_preset(n);  // rejects unsupported lengths early
  const std::array<int, 1> sizes{n};
  std::vector<CriterionResult> out;
  out.push_back(check_boundary_optimization(sizes, options.threads));
  out.push_back(check_family_one(sizes));
  out.push_back(check_family_two(sizes));
  if (n == 20) {
    out.push_back(check_appendix());
    out.push_back(check_probe_closure(options.seed));
    auto werner = check_werner_creation(options.seed, options.threads);
    out.push_back(werner.result);
    if (options.include_disorder) {
      out.push_back(check_disorder(werner.controls, options.seed, options.n_chains, options.threads));
    }
  }
  return out;
}

void print_report(std::ostream& out, std::span<const CriterionResult> results) {
  for (const auto& r : results) {
    fmt::print(out, "[{}] {}. {}\n", r.passed ? "PASS" : "FAIL", r.id, r.title);
    for (const auto& d : r.details) fmt::print(out, "    {}\n", d);
  }
}

}  // namespace spinlink
