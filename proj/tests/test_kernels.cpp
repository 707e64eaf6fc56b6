#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "spinlink/kernels.hpp"

using namespace spinlink;

namespace {

std::vector<double> direct_scan(const std::vector<double>& w, const std::vector<double>& e, double t0, double dt,
                                std::size_t count) {
  std::vector<double> out(count);
  for (std::size_t j = 0; j < count; ++j) {
    std::complex<double> acc = 0.0;
    for (std::size_t k = 0; k < w.size(); ++k) acc += w[k] * std::polar(1.0, -e[k] * (t0 + j * dt));
    out[j] = std::abs(acc);
  }
  return out;
}

void random_fill(std::vector<double>& v, std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  for (auto& x : v) x = u(rng);
}

void check_scan(const kernels::KernelTable& table) {
  std::mt19937_64 rng(5);
  for (std::size_t n : {1u, 3u, 4u, 7u, 20u, 61u}) {
    std::vector<double> w(n), e(n);
    random_fill(w, rng, -1.0, 1.0);
    random_fill(e, rng, -1.0, 1.0);
    const std::size_t count = 3 * kernels::kScanReseedInterval + 17;
    std::vector<double> out(count);
    table.amplitude_scan(w.data(), e.data(), n, 0.25, 0.05, count, out.data());
    const auto ref = direct_scan(w, e, 0.25, 0.05, count);
    for (std::size_t j = 0; j < count; ++j) REQUIRE(std::abs(out[j] - ref[j]) < 1e-11);
  }
}

void check_matvec(const kernels::KernelTable& table) {
  std::mt19937_64 rng(6);
  for (auto [rows, cols] : {std::pair<std::size_t, std::size_t>{1, 1}, {5, 3}, {190, 6}, {45, 45}, {7, 13}}) {
    std::vector<double> m(rows * cols), wr(cols), wi(cols), outr(rows), outi(rows);
    random_fill(m, rng, -1.0, 1.0);
    random_fill(wr, rng, -1.0, 1.0);
    random_fill(wi, rng, -1.0, 1.0);
    table.real_complex_matvec(m.data(), rows, cols, wr.data(), wi.data(), outr.data(), outi.data());
    for (std::size_t r = 0; r < rows; ++r) {
      double er = 0.0, ei = 0.0;
      for (std::size_t c = 0; c < cols; ++c) {
        er += m[c * rows + r] * wr[c];
        ei += m[c * rows + r] * wi[c];
      }
      REQUIRE(std::abs(outr[r] - er) < 1e-13);
      REQUIRE(std::abs(outi[r] - ei) < 1e-13);
    }
  }
}

}  // namespace

TEST_CASE("scalar kernels match direct evaluation") {
  check_scan(kernels::scalar_kernels());
  check_matvec(kernels::scalar_kernels());
}

TEST_CASE("avx2 kernels match direct evaluation and the scalar variant") {
  const auto* avx = kernels::avx2_kernels();
  if (avx == nullptr) {
    MESSAGE("AVX2 variant unavailable on this machine");
    return;
  }
  check_scan(*avx);
  check_matvec(*avx);

  std::mt19937_64 rng(8);
  const std::size_t n = 37, count = 1000;
  std::vector<double> w(n), e(n), a(count), b(count);
  random_fill(w, rng, -1.0, 1.0);
  random_fill(e, rng, -1.2, 1.2);
  kernels::scalar_kernels().amplitude_scan(w.data(), e.data(), n, 0.0, 0.05, count, a.data());
  avx->amplitude_scan(w.data(), e.data(), n, 0.0, 0.05, count, b.data());
  for (std::size_t j = 0; j < count; ++j) CHECK(std::abs(a[j] - b[j]) < 1e-12);
}

TEST_CASE("kernel selection can be forced") {
  const auto& before = kernels::active();
  kernels::set_active(kernels::scalar_kernels());
  CHECK(kernels::active().name == kernels::scalar_kernels().name);
  kernels::set_active(before);
}
