#ifndef STOKESLP_OPS_DIFF_HPP
#define STOKESLP_OPS_DIFF_HPP

#include "stokeslp/ops/density.hpp"
#include "stokeslp/ops/params.hpp"
#include "stokeslp/symbols/first_order.hpp"

// Spectral realizations of Def, Def*, grad, grad* = -div, D_nu and the
// generalized Stokes operator Xi on torus grid fields. Symmetric 2-tensor
// fields are stored with n^2 components in row-major (i, j) order.

namespace stokeslp::ops {

using symbols::FirstOrderOp;

// derivative d/dx_d in spectral space; the unpaired -N/2 mode is zeroed so
// real fields stay real
SpectralField partial(const SpectralField& f, int axis);

SpectralField apply_first_order(FirstOrderOp which, const SpectralField& f,
                                const StokesParams* params = nullptr);

// Xi U = (2 Def* Def u + V u + grad p, grad* u - V0 p)
SpectralField apply_xi(const StokesParams& params, const SpectralField& U);

// multiply a field by a profile of x_n (exact convolution would need padding;
// grid products are accurate for effectively band-limited profiles)
SpectralField multiply_profile(const SpectralField& f, const Coefficient& c);

// conormal trace T_nu U = -2 Dnu(u) + p nu on a boundary component, using
// that component's outer normal. Returns an n-component density.
BoundaryDensity conormal(const StokesParams& params, const SpectralField& U, int component);

// velocity trace u|_Gamma on a component (n components)
BoundaryDensity velocity_trace(const SpectralField& U, const StokesParams& params,
                               int component);

} // namespace stokeslp::ops

#endif
