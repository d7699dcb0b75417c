#ifndef STOKESLP_SIMD_COMPLEX_KERNELS_HPP
#define STOKESLP_SIMD_COMPLEX_KERNELS_HPP

#include <complex>
#include <cstddef>

// Data-parallel inner loops on contiguous complex arrays. Every kernel has a
// scalar reference implementation and an AVX2 variant; the active one is
// selected at runtime (see dispatch.hpp) and the two are equivalence-tested
// against each other.

namespace stokeslp::simd {

using cd = std::complex<double>;

// y[i] *= a
void scale(cd* y, cd a, std::size_t n);

// y[i] += a * x[i]
void axpy(cd* y, cd a, const cd* x, std::size_t n);

// y[i] = a[i] * b[i]
void hadamard(cd* y, const cd* a, const cd* b, std::size_t n);

// y[i] *= w[i]  (diagonal multiplier application)
void mul_inplace(cd* y, const cd* w, std::size_t n);

// sum_i conj(a[i]) * b[i]
cd dot(const cd* a, const cd* b, std::size_t n);

// sum_i w[i] * |a[i]|^2   (real nonnegative weights)
double weighted_norm2(const double* w, const cd* a, std::size_t n);

// Batched small-matrix action: for each item i, out[:,i] = M[i] * in[:,i]
// where M[i] is an (r x c) complex matrix stored row-major at mats + i*r*c,
// and the fields are stored component-major: in[j*n + i] is component j of
// item i. Used to apply per-mode symbol matrices across a whole grid.
void apply_block_batch(const cd* mats, int r, int c, const cd* in, cd* out,
                       std::size_t n);

namespace detail {
// Reference implementations (always available; used by the equivalence tests).
void scale_scalar(cd*, cd, std::size_t);
void axpy_scalar(cd*, cd, const cd*, std::size_t);
void hadamard_scalar(cd*, const cd*, const cd*, std::size_t);
void mul_inplace_scalar(cd*, const cd*, std::size_t);
cd dot_scalar(const cd*, const cd*, std::size_t);
double weighted_norm2_scalar(const double*, const cd*, std::size_t);
void apply_block_batch_scalar(const cd*, int, int, const cd*, cd*, std::size_t);

void scale_avx2(cd*, cd, std::size_t);
void axpy_avx2(cd*, cd, const cd*, std::size_t);
void hadamard_avx2(cd*, const cd*, const cd*, std::size_t);
void mul_inplace_avx2(cd*, const cd*, std::size_t);
cd dot_avx2(const cd*, const cd*, std::size_t);
double weighted_norm2_avx2(const double*, const cd*, std::size_t);
void apply_block_batch_avx2(const cd*, int, int, const cd*, cd*, std::size_t);
} // namespace detail

} // namespace stokeslp::simd

#endif
