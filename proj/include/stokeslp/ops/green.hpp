#ifndef STOKESLP_OPS_GREEN_HPP
#define STOKESLP_OPS_GREEN_HPP

#include "stokeslp/ops/diff.hpp"
#include "stokeslp/ops/strip.hpp"

// Numerical verification of the Green-type identities for Xi on the strip:
//  (1) (Xi U, W)_Omega = B(U, W) + (T_nu U, w)_Gamma
//  (2) (Xi U, W)_Omega - (U, Xi W)_Omega = (T_nu U, w)_Gamma - (u, T_nu W)_Gamma
//  (3) Xi(1_Omega U) = 1_Omega Xi U - (T~_nu U) delta_Gamma
//                      + T~_nu^*(U delta_Gamma), tested weakly.
// Inner products are conjugate-linear in the second slot; that convention is
// what makes (1) close to round-off.

namespace stokeslp::ops {

struct GreenResiduals {
    double identity1 = 0.0;
    double identity2 = 0.0;
    double identity3 = 0.0;
};

// sesquilinear form B_Omega(U, W), v-term included
cd b_form(const StokesParams& params, const SpectralField& U, const SpectralField& W);

GreenResiduals green_residuals(const StokesParams& params, const SpectralField& U,
                               const SpectralField& W, int weak_trials = 5,
                               unsigned long long seed = 1234);

struct EnergyReport {
    double def_u = 0.0;
    double sqrtV_u = 0.0;
    double divstar_u = 0.0;
    double sqrtV0_p = 0.0;
    double grad_p = 0.0;

    double max() const {
        return std::max({def_u, sqrtV_u, divstar_u, sqrtV0_p, grad_p});
    }
};

EnergyReport energy_report(const StokesParams& params, const SpectralField& U);

} // namespace stokeslp::ops

#endif
