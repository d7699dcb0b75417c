#ifndef STOKESLP_CORE_SOBOLEV_HPP
#define STOKESLP_CORE_SOBOLEV_HPP

#include <cmath>
#include <random>
#include <span>

#include "stokeslp/core/fft.hpp"

namespace stokeslp {

// <xi> = sqrt(1 + |xi|^2)
inline double japanese_bracket(std::span<const double> xi) {
    double s = 1.0;
    for (double v : xi) s += v * v;
    return std::sqrt(s);
}

// (sum_xi <xi>^{2s} |fhat(xi)|^2)^{1/2} over all components, with the grid's
// mode range. s = 0 recovers the plain coefficient l2 norm; the L2(T^n) norm
// is (2 pi)^{n/2} times that (Parseval under the series convention).
double sobolev_norm(const SpectralField& f, double s);

// L2 norm of grid values: ((2pi/N)^n sum_j |f(x_j)|^2)^{1/2}
double l2_grid_norm(const GridField& f);

// sum over coefficients |fhat|^2
double coeff_norm2(const SpectralField& f);

// Random real band-limited field: modes with |xi_d| <= bandwidth on every
// axis, conjugate-symmetric coefficients, unit-scale entries.
SpectralField random_band_limited(const TorusGrid& g, int comps, int bandwidth,
                                  std::mt19937_64& rng);

} // namespace stokeslp

#endif
