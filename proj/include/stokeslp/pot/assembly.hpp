#ifndef STOKESLP_POT_ASSEMBLY_HPP
#define STOKESLP_POT_ASSEMBLY_HPP

#include <memory>

#include "stokeslp/ops/density.hpp"
#include "stokeslp/ops/params.hpp"
#include "stokeslp/pot/multipliers.hpp"

// Per-transverse-mode assembly pieces shared by the layer potentials, the
// boundary operators and the Dirichlet solver.
//
// Constant coefficients: the potential at transverse mode xi' is
//   U(xi', x_n) = (1/2pi) sum_k Mult(xi', k) e^{ik(x_n - c)} hhat(xi'),
// with Mult rational in k, so every slice, one-sided trace and cross-
// component coupling is a closed-form lattice sum of the decomposed
// multiplier.
//
// Variable V0 (an x_n bump supported away from Gamma): the potential is the
// constant-coefficient one plus a smooth correction
//   (Xi_full) U_corr = p_N(RHS) - E U_const,   E = diag(0, -(V0 - V0_const)),
// solved densely per transverse mode on a truncated xi_n range; the
// correction's coefficients decay fast, so plain Fourier evaluation of its
// traces is exact to round-off.

namespace stokeslp::pot {

// densities live on the pair Gamma = Gamma_0 u Gamma_1
struct GammaDensity {
    BoundaryDensity comp[2];

    GammaDensity() = default;
    GammaDensity(const TorusGrid& ambient, int c)
        : comp{BoundaryDensity::for_ambient(ambient, c),
               BoundaryDensity::for_ambient(ambient, c)} {}

    double norm() const { return std::hypot(comp[0].norm(), comp[1].norm()); }

    GammaDensity& operator+=(const GammaDensity& o) {
        comp[0] += o.comp[0];
        comp[1] += o.comp[1];
        return *this;
    }
    GammaDensity& operator-=(const GammaDensity& o) {
        comp[0] -= o.comp[0];
        comp[1] -= o.comp[1];
        return *this;
    }
    GammaDensity& operator*=(cd s) {
        comp[0] *= s;
        comp[1] *= s;
        return *this;
    }
};

inline std::vector<double> normal_of(const StokesParams& p, int component) {
    std::vector<double> nu(p.grid.dim(), 0.0);
    nu[p.grid.dim() - 1] = static_cast<double>(p.component(component).normal_sign);
    return nu;
}

// all decompositions for one transverse mode of the constant-coefficient
// operator
struct ModeAssembly {
    ModeContext ctx;
    rational::MatrixDecomp single;           // (n+1) x n potential
    rational::MatrixDecomp dbl[2];           // per source component
    rational::MatrixDecomp trac_single[2];   // per target component, n x n
    rational::MatrixDecomp trac_double[2][2]; // [target][source]
};

ModeAssembly build_mode_assembly(const StokesParams& params, const std::vector<double>& xiP);

// truncated 1-d operator at fixed xi' with the x_n-dependent coefficients;
// LU for regular modes, SVD pseudo-solve on the kernel-bearing zero mode
class StripOperator1D {
  public:
    StripOperator1D(const StokesParams& params, const std::vector<double>& xiP, int kmodes);

    // rhs and result are (n+1) x K arrays, component-major, FFT bin order
    std::vector<cd> solve(const std::vector<cd>& rhs) const;

    int kmodes() const { return K_; }
    const std::vector<double>& singular_values() const { return sigma_; }

  private:
    int n_ = 2;
    int K_ = 0;
    bool use_svd_ = false;
    la::Lu lu_;
    la::Svd svd_;
    std::vector<double> sigma_;
    double sigma_tol_ = 0.0;
};

// Fourier coefficients of a profile on K modes (FFT bin order), computed on
// a fine grid so the smooth-bump tail is resolved to round-off
std::vector<cd> profile_coefficients(const Coefficient& c, int kmodes);

} // namespace stokeslp::pot

#endif
