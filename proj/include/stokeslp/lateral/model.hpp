#ifndef STOKESLP_LATERAL_MODEL_HPP
#define STOKESLP_LATERAL_MODEL_HPP

#include <functional>
#include <optional>
#include <span>

#include "stokeslp/core/quadrature.hpp"
#include "stokeslp/la/matrix.hpp"
#include "stokeslp/ops/density.hpp"

// The model half-space machinery: a symbol a(xi', xi_n) of order m <= -1 on
// R^n, the sliced symbols
//   a_{s,t}(xi') = (1/2pi) int e^{i t xi_n} a(xi', xi_n) d xi_n,
// the restriction symbol a_0 (even-part integral), the one-sided symbols
// a_{0+-} = +-(i/2) J+ + a_0, and the jump coefficients
//   J+- = lim_{tau -> +-inf} tau a(xi', tau).
// The transverse variable lives on a periodic surrogate grid, so densities
// are multiplier-applied per mode.

namespace stokeslp::lateral {

using la::Matrix;
using la::cd;

struct ModelSymbol {
    int order = -2;
    int rows = 1;
    int cols = 1;
    // evaluated at the full covariable xi = (xi', xi_n)
    std::function<Matrix(std::span<const double>)> eval;
    // homogeneous leading term sigma_m, when known
    std::function<Matrix(std::span<const double>)> leading;

    bool has_leading() const { return static_cast<bool>(leading); }
};

// a_{s,t}(xi') for x-independent symbols (any s); requires m < -1, or
// m = -1 with t != 0
Matrix slice_symbol(const ModelSymbol& a, double t, std::span<const double> xiP,
                    const QuadratureSpec& spec = {});

struct JumpCoefficients {
    Matrix j_plus;
    Matrix j_minus;
    bool equal = false;      // J+ == J- within tolerance
    double disagreement = 0; // leading-term vs extrapolation residual
};

// J+- at a reference transverse frequency, from the leading term when
// available and from a tau-ladder extrapolation otherwise; both routes are
// compared when possible
JumpCoefficients jump_coefficients(const ModelSymbol& a, std::span<const double> xiP,
                                   double tol = 1e-6);

enum class RestrictionSide { principal, plus, minus };

// a_0 (side = principal) or a_{0+-}; for m = -1 the oddness condition on
// sigma_{-1} is checked first
Matrix restriction_symbol(const ModelSymbol& a, std::span<const double> xiP,
                          RestrictionSide side, const QuadratureSpec& spec = {});

// multiplier action of a_{eps,eps} on a transverse density (the potential of
// h delta restricted to the eps-translate)
BoundaryDensity potential_slice(const ModelSymbol& a, const BoundaryDensity& h, double eps,
                                const QuadratureSpec& spec = {});

struct LateralReport {
    // residual ||slice(+-eps) - a_{0+-} h|| per ladder rung
    std::vector<double> eps;
    std::vector<double> residual_plus;
    std::vector<double> residual_minus;
    double adjoint_residual = 0.0; // ||(a*)_0 - (a_0)*||
    bool decaying = false;
};

LateralReport verify_lateral_limits(const ModelSymbol& a, const TorusGrid& transverse,
                                    int trials = 3, unsigned long long seed = 99);

// adjoint symbol a*(xi) = a(xi)^H for x-independent symbols
ModelSymbol adjoint_symbol(const ModelSymbol& a);

} // namespace stokeslp::lateral

#endif
