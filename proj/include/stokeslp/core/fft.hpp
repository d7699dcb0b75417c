#ifndef STOKESLP_CORE_FFT_HPP
#define STOKESLP_CORE_FFT_HPP

#include "stokeslp/core/field.hpp"

namespace stokeslp {

// Radix-2 complex FFT on power-of-two sizes, with the torus-series
// normalization
//   fhat(xi) = N^{-dim} sum_j f(x_j) exp(-i xi . x_j)
//   f(x_j)   =          sum_xi fhat(xi) exp(+i xi . x_j).
// The butterfly stages run through the runtime-dispatched SIMD kernels.

namespace fft {

// in-place 1-d transform, length must be a power of two
void transform(cd* a, std::size_t n, bool inverse);

// multi-dimensional transforms over all components of a field
SpectralField forward(const GridField& f);
GridField inverse(const SpectralField& f);

} // namespace fft

// true if the coefficients satisfy conj symmetry fhat(-xi) = conj(fhat(xi))
// within atol (i.e. the field is real up to atol)
bool conjugate_symmetric(const SpectralField& f, double atol = 1e-12);

} // namespace stokeslp

#endif
