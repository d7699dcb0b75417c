#ifndef STOKESLP_OPS_STRIP_HPP
#define STOKESLP_OPS_STRIP_HPP

#include "stokeslp/ops/density.hpp"
#include "stokeslp/ops/params.hpp"

// Inner products over the strip Omega = {0 < x_n < L_s} and over its two
// boundary slices, evaluated exactly from spectral coefficients (all inner
// products are conjugate-linear in the second slot):
//   (F, G)_Omega = (2 pi)^{n-1} sum_{xi', k, l} F(xi',k) conj(G(xi',l)) I(k-l)
//   I(m) = int_0^{L} e^{i m x} dx.

namespace stokeslp::ops {

cd strip_inner(const SpectralField& f, const SpectralField& g, double height);

inline double strip_norm(const SpectralField& f, double height) {
    return std::sqrt(std::max(0.0, strip_inner(f, f, height).real()));
}

// boundary inner product on one slice, summed over components
cd boundary_inner(const BoundaryDensity& f, const BoundaryDensity& g, int dim_ambient);

// mean of a scalar spectral field over the strip
cd strip_mean(const SpectralField& f, int comp, double height);

} // namespace stokeslp::ops

#endif
