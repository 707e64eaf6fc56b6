#include <algorithm>
#include <cmath>
#include <vector>

#include "spinlink/kernels.hpp"

namespace spinlink::kernels {
namespace {

void amplitude_scan_scalar(const double* weights, const double* energies, std::size_t n, double t_start, double dt,
                           std::size_t count, double* out) {
  std::vector<double> z_re(n), z_im(n), r_re(n), r_im(n);
  for (std::size_t k = 0; k < n; ++k) {
    r_re[k] = std::cos(energies[k] * dt);
    r_im[k] = -std::sin(energies[k] * dt);
  }
  for (std::size_t block = 0; block < count; block += kScanReseedInterval) {
    const double t = t_start + static_cast<double>(block) * dt;
    for (std::size_t k = 0; k < n; ++k) {
      z_re[k] = std::cos(energies[k] * t);
      z_im[k] = -std::sin(energies[k] * t);
    }
    const std::size_t end = std::min(count, block + kScanReseedInterval);
    for (std::size_t j = block; j < end; ++j) {
      double acc_re = 0.0;
      double acc_im = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        acc_re += weights[k] * z_re[k];
        acc_im += weights[k] * z_im[k];
        const double re = z_re[k] * r_re[k] - z_im[k] * r_im[k];
        z_im[k] = z_re[k] * r_im[k] + z_im[k] * r_re[k];
        z_re[k] = re;
      }
      out[j] = std::hypot(acc_re, acc_im);
    }
  }
}

void real_complex_matvec_scalar(const double* matrix, std::size_t rows, std::size_t cols, const double* w_re,
                                const double* w_im, double* out_re, double* out_im) {
  std::fill(out_re, out_re + rows, 0.0);
  std::fill(out_im, out_im + rows, 0.0);
  for (std::size_t c = 0; c < cols; ++c) {
    const double* column = matrix + c * rows;
    const double wr = w_re[c];
    const double wi = w_im[c];
    for (std::size_t r = 0; r < rows; ++r) {
      out_re[r] += column[r] * wr;
      out_im[r] += column[r] * wi;
    }
  }
}

}  // namespace

const KernelTable& scalar_kernels() {
  static const KernelTable table{"scalar", &amplitude_scan_scalar, &real_complex_matvec_scalar};
  return table;
}

}  // namespace spinlink::kernels
