#pragma once

#include <cstddef>
#include <string_view>

// Data-parallel inner loops of the propagator evaluation. Each kernel has a
// scalar reference implementation and, on x86-64, an AVX2+FMA variant chosen
// at runtime. Both variants run the same recurrence and differ only in
// summation order.
namespace spinlink::kernels {

// Steps between exact re-evaluations of the phases exp(-i e_k t) in
// amplitude_scan; the rotation recurrence runs in between.
inline constexpr std::size_t kScanReseedInterval = 256;

// out[j] = | sum_k weights[k] * exp(-i energies[k] * (t_start + j * dt)) |
// for j = 0..count-1.
using AmplitudeScanFn = void (*)(const double* weights, const double* energies, std::size_t n, double t_start,
                                 double dt, std::size_t count, double* out);

// out = M * w for a real column-major rows x cols matrix M and a complex
// vector w given as split real/imaginary parts.
using RealComplexMatVecFn = void (*)(const double* matrix, std::size_t rows, std::size_t cols, const double* w_re,
                                     const double* w_im, double* out_re, double* out_im);

struct KernelTable {
  std::string_view name;
  AmplitudeScanFn amplitude_scan;
  RealComplexMatVecFn real_complex_matvec;
};

const KernelTable& scalar_kernels();

// nullptr when the AVX2 variant was not compiled in or the CPU lacks AVX2/FMA.
const KernelTable* avx2_kernels();

// Best table for this CPU. The SPINLINK_KERNELS environment variable
// ("scalar" or "avx2") overrides the choice on first use.
const KernelTable& active();

// Forces a table for the rest of the process (tests and benchmarks).
void set_active(const KernelTable& table);

}  // namespace spinlink::kernels
