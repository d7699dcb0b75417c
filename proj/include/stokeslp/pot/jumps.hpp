#ifndef STOKESLP_POT_JUMPS_HPP
#define STOKESLP_POT_JUMPS_HPP

#include "stokeslp/pot/boundary_op.hpp"

namespace stokeslp::pot {

// Verification of the jump relations by comparing polynomially extrapolated
// one-sided traces of the potentials against the assembled boundary
// operators. The extrapolation ladder starts at {2^-3, ..., 2^-6} L_s for
// N = 64 and shrinks proportionally to 1/N, so the reported residuals carry
// an honest resolution dependence.
struct JumpResiduals {
    double double_velocity = 0.0;  // [W]+- vs (+-1/2 + K) h
    double single_velocity = 0.0;  // [V]+- vs S h
    double single_pressure = 0.0;  // [P]+- vs (-+ g/2 nu + C0) h
    double single_traction = 0.0;  // [T_nu S]+- vs (-+1/2 + K*) h

    double max() const {
        return std::max({double_velocity, single_velocity, single_pressure, single_traction});
    }
};

JumpResiduals jump_residuals(const StokesParams& params, const GammaDensity& h,
                             std::shared_ptr<ConstantAssembly> assembly = nullptr,
                             std::shared_ptr<VariableCorrector> corrector = nullptr);

// Pompeiu residual:
//   1_Omega U = Xi^(-1)(1_Omega Xi U) - S(T_nu U|_Gamma) + D(u|_Gamma)
//             + p_N(1_Omega U),
// max-norm over interior probe slices (distance >= L_s/8 from Gamma).
double pompeiu_residual(const StokesParams& params, const SpectralField& U,
                        std::shared_ptr<ConstantAssembly> assembly = nullptr,
                        std::shared_ptr<VariableCorrector> corrector = nullptr);

// || assembled K* - (assembled K)^* || plus the S self-adjointness gap
struct AdjointCheck {
    double restriction = 0.0; // ||K* - (K)^*||
    double s_gap = 0.0;       // ||S - S^*||
    double jump_conjugation = 0.0;
};

AdjointCheck adjoint_restriction_check(const StokesParams& params,
                                       std::shared_ptr<ConstantAssembly> assembly = nullptr);

} // namespace stokeslp::pot

#endif
