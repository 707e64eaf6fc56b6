#include <immintrin.h>

#include <algorithm>
#include <array>
#include <cmath>
#include <vector>

#include "spinlink/kernels.hpp"

namespace spinlink::kernels {
namespace {

inline double horizontal_sum(__m256d v) {
  const __m128d lo = _mm256_castpd256_pd128(v);
  const __m128d hi = _mm256_extractf128_pd(v, 1);
  const __m128d pair = _mm_add_pd(lo, hi);
  return _mm_cvtsd_f64(_mm_add_sd(pair, _mm_unpackhi_pd(pair, pair)));
}

void amplitude_scan_avx2(const double* weights, const double* energies, std::size_t n, double t_start, double dt,
                         std::size_t count, double* out) {
  const std::size_t n_vec = n & ~std::size_t{3};
  std::vector<double> z_re(n), z_im(n), r_re(n), r_im(n);
  for (std::size_t k = 0; k < n; ++k) {
    r_re[k] = std::cos(energies[k] * dt);
    r_im[k] = -std::sin(energies[k] * dt);
  }
  // Per-lane partial sums for every step of the block.
  std::vector<double> acc_re(4 * kScanReseedInterval), acc_im(4 * kScanReseedInterval);
  std::array<double, kScanReseedInterval> tail_re{}, tail_im{};

  for (std::size_t block = 0; block < count; block += kScanReseedInterval) {
    const double t = t_start + static_cast<double>(block) * dt;
    for (std::size_t k = 0; k < n; ++k) {
      z_re[k] = std::cos(energies[k] * t);
      z_im[k] = -std::sin(energies[k] * t);
    }
    const std::size_t len = std::min(count - block, kScanReseedInterval);
    std::fill(acc_re.begin(), acc_re.begin() + 4 * len, 0.0);
    std::fill(acc_im.begin(), acc_im.begin() + 4 * len, 0.0);
    std::fill(tail_re.begin(), tail_re.begin() + len, 0.0);
    std::fill(tail_im.begin(), tail_im.begin() + len, 0.0);

    for (std::size_t k = 0; k < n_vec; k += 4) {
      const __m256d w = _mm256_loadu_pd(weights + k);
      const __m256d rr = _mm256_loadu_pd(r_re.data() + k);
      const __m256d ri = _mm256_loadu_pd(r_im.data() + k);
      __m256d zr = _mm256_loadu_pd(z_re.data() + k);
      __m256d zi = _mm256_loadu_pd(z_im.data() + k);
      double* ar = acc_re.data();
      double* ai = acc_im.data();
      for (std::size_t j = 0; j < len; ++j, ar += 4, ai += 4) {
        _mm256_storeu_pd(ar, _mm256_fmadd_pd(w, zr, _mm256_loadu_pd(ar)));
        _mm256_storeu_pd(ai, _mm256_fmadd_pd(w, zi, _mm256_loadu_pd(ai)));
        const __m256d next_re = _mm256_fmsub_pd(zr, rr, _mm256_mul_pd(zi, ri));
        zi = _mm256_fmadd_pd(zr, ri, _mm256_mul_pd(zi, rr));
        zr = next_re;
      }
    }
    for (std::size_t k = n_vec; k < n; ++k) {
      double zr = z_re[k];
      double zi = z_im[k];
      for (std::size_t j = 0; j < len; ++j) {
        tail_re[j] += weights[k] * zr;
        tail_im[j] += weights[k] * zi;
        const double re = zr * r_re[k] - zi * r_im[k];
        zi = zr * r_im[k] + zi * r_re[k];
        zr = re;
      }
    }
    for (std::size_t j = 0; j < len; ++j) {
      const double re = horizontal_sum(_mm256_loadu_pd(acc_re.data() + 4 * j)) + tail_re[j];
      const double im = horizontal_sum(_mm256_loadu_pd(acc_im.data() + 4 * j)) + tail_im[j];
      out[block + j] = std::hypot(re, im);
    }
  }
}

void real_complex_matvec_avx2(const double* matrix, std::size_t rows, std::size_t cols, const double* w_re,
                              const double* w_im, double* out_re, double* out_im) {
  std::fill(out_re, out_re + rows, 0.0);
  std::fill(out_im, out_im + rows, 0.0);
  const std::size_t rows_vec = rows & ~std::size_t{3};
  for (std::size_t c = 0; c < cols; ++c) {
    const double* column = matrix + c * rows;
    const __m256d wr = _mm256_set1_pd(w_re[c]);
    const __m256d wi = _mm256_set1_pd(w_im[c]);
    for (std::size_t r = 0; r < rows_vec; r += 4) {
      const __m256d m = _mm256_loadu_pd(column + r);
      _mm256_storeu_pd(out_re + r, _mm256_fmadd_pd(m, wr, _mm256_loadu_pd(out_re + r)));
      _mm256_storeu_pd(out_im + r, _mm256_fmadd_pd(m, wi, _mm256_loadu_pd(out_im + r)));
    }
    for (std::size_t r = rows_vec; r < rows; ++r) {
      out_re[r] += column[r] * w_re[c];
      out_im[r] += column[r] * w_im[c];
    }
  }
}

}  // namespace

const KernelTable& avx2_kernel_table() {
  static const KernelTable table{"avx2", &amplitude_scan_avx2, &real_complex_matvec_avx2};
  return table;
}

}  // namespace spinlink::kernels
