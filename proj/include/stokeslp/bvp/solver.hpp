#ifndef STOKESLP_BVP_SOLVER_HPP
#define STOKESLP_BVP_SOLVER_HPP

#include "stokeslp/pot/jumps.hpp"

// Dirichlet problem for Xi on the strip via boundary integral equations:
//   route double_layer:  U = D((1/2 + K)^{-1} f)
//   route single_layer:  U = S(S^{-1} f)
// When V0 vanishes on Omega the operators act on {nu}^perp / modulo C nu and
// the datum must satisfy (f, nu)_Gamma = 0; the pressure is gauged to zero
// mean over Omega.

namespace stokeslp::bvp {

using namespace stokeslp::pot;

enum class SolveRoute { double_layer, single_layer };

struct DirichletProblem {
    StokesParams params;
    GammaDensity f;
    bool pressure_mean_zero = true;
};

struct SolveDiagnostics {
    double compat_defect = 0.0;   // |(f, nu)| / ||f|| before any projection
    bool compat_projected = false;
    double bie_residual = 0.0;          // algebraic residual of the BIE solve
    double trace_error = 0.0;           // one-sided trace vs f (exact route)
    double trace_error_extrap = 0.0;    // ladder-extrapolated trace vs f
    double interior_residual = 0.0;     // weak Xi U against interior test fields
    double stability_constant[3] = {0.0, 0.0, 0.0}; // m = 0, 1, 2
};

struct DirichletSolution {
    GammaDensity density;
    SpectralField field;    // gauged grid field
    cd pressure_gauge{0.0, 0.0};
    SolveDiagnostics diag;

    // exact slice of the gauged solution
    BoundaryDensity slice(double xn) const;
    BoundaryDensity conormal_from_omega(int component) const;
    BoundaryDensity traction_slice(int component, double xn) const;

    std::shared_ptr<LayerPotential> potential;
    const StokesParams* params = nullptr;
};

// shared assembly bundle so the operators are built once per configuration
struct Workspace {
    StokesParams params;
    std::shared_ptr<ConstantAssembly> assembly;
    std::shared_ptr<VariableCorrector> corrector;
    explicit Workspace(const StokesParams& p)
        : params(p), assembly(make_assembly(p)), corrector(make_corrector(p, assembly)) {}
};

DirichletSolution solve_dirichlet(const DirichletProblem& problem, SolveRoute route,
                                  Workspace& ws);

struct DtnResult {
    GammaDensity neumann;          // N f = [T_nu U_0]+ with mean-zero pressure
    double identity_residual = 0.0;       // ||S N f - (-1/2 + K) f|| (operator route)
    double identity_residual_extrap = 0.0; // same with ladder-extrapolated traces
    double identity_residual_ungauged = 0.0;
};

DtnResult dtn(const StokesParams& params, const GammaDensity& f, Workspace& ws);

struct NoJumpResult {
    double jump = 0.0;            // ||[T_nu D g]+ - [T_nu D g]-|| (extrapolated)
    double jump_operator = 0.0;   // same from the assembled one-sided operators
    double equality = 0.0;        // ||[T_nu D g]+- - (1/2 + K*) N f||
};

NoJumpResult no_jump_check(const StokesParams& params, const GammaDensity& f, Workspace& ws);

struct SpectrumReport {
    int kernel_dim_K = 0;        // detected dim ker(1/2 + K)
    int kernel_dim_K_adj = 0;    // detected dim ker((1/2 + K)^*)
    int kernel_dim_S = 0;
    double smin_K = 0.0;         // smallest singular value of 1/2 + K
    double smin_K_perp = 0.0;    // restricted to {nu}^perp
    double smin_S = 0.0;
    double s_second_smallest = 0.0;
    double nu_correlation = 0.0; // |<kernel vector of S, nu>|
    double cond_K = 0.0;
};

SpectrumReport operator_spectrum(const StokesParams& params, Workspace& ws);

} // namespace stokeslp::bvp

#endif
