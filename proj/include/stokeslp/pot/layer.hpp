#ifndef STOKESLP_POT_LAYER_HPP
#define STOKESLP_POT_LAYER_HPP

#include <map>
#include <memory>
#include <mutex>

#include "stokeslp/pot/assembly.hpp"
#include "stokeslp/pot/kernel_space.hpp"

namespace stokeslp::pot {

enum class LayerKind { single, dbl };

// one-sided traces: from Omega (the strip) or from its complement
enum class TraceSide { from_omega, from_complement };

// shared cache of per-transverse-mode assemblies; immutable entries,
// lock-guarded map (mode-parallel assembly stays deterministic because each
// slot is a pure function of the mode)
class ConstantAssembly {
  public:
    explicit ConstantAssembly(const StokesParams& params);

    const ModeAssembly& mode(std::size_t tIdx) const;
    const TorusGrid& tgrid() const { return tgrid_; }
    const StokesParams& params() const { return params_; }

    // constant parts only (V, V0 constants of the full coefficients)
    StokesParams const_params() const;

  private:
    StokesParams params_;
    TorusGrid tgrid_;
    mutable std::mutex mu_;
    mutable std::map<std::size_t, std::shared_ptr<ModeAssembly>> cache_;
};

// per-mode corrections for a variable V0 profile: dense solves of the
// truncated 1-d operator; shared across potentials and boundary operators
class VariableCorrector {
  public:
    VariableCorrector(const StokesParams& params, std::shared_ptr<ConstantAssembly> base);

    bool active() const { return active_; }

    // correction coefficients ((n+1) x K, bin order) for the potential of
    // the given kind with a unit density at (source_comp, j) on transverse
    // mode tIdx; ma must be the assembly of that mode
    const std::vector<cd>& unit_correction(std::size_t tIdx, int kind, int source_comp, int j,
                                           const ModeAssembly& ma) const;

    int kmodes() const { return K_; }

  private:
    const StripOperator1D& op(std::size_t tIdx) const;
    std::vector<cd> build_unit(std::size_t tIdx, int kind, int source_comp, int j,
                               const ModeAssembly& ma) const;

    StokesParams params_;
    std::shared_ptr<ConstantAssembly> base_;
    bool active_ = false;
    int K_ = 0;
    mutable std::mutex mu_;
    mutable std::map<std::size_t, std::shared_ptr<StripOperator1D>> ops_;
    mutable std::map<std::size_t, std::shared_ptr<std::vector<cd>>> cache_;
};

// A layer potential for a density on Gamma = Gamma_0 u Gamma_1. Exposes the
// N-truncated grid field plus exact slices and one-sided traces built from
// the closed-form lattice sums (constant part) and the smooth correction.
class LayerPotential {
  public:
    LayerPotential(std::shared_ptr<ConstantAssembly> assembly,
                   std::shared_ptr<VariableCorrector> corrector, LayerKind kind,
                   GammaDensity density);

    // spectral coefficients truncated to the grid
    SpectralField grid_field() const;

    // exact (n+1)-component slice at interior height (not a source height)
    BoundaryDensity slice(double xn) const;

    // one-sided velocity-pressure trace on a boundary component
    BoundaryDensity trace(int component, TraceSide side) const;

    // one-sided conormal trace T_nu U (n components)
    BoundaryDensity conormal_trace(int component, TraceSide side) const;

    // T_nu (with component's normal) applied to the potential at an offset
    // slice x_n != source heights
    BoundaryDensity traction_slice(int component, double xn) const;

    const GammaDensity& density() const { return h_; }

  private:
    friend class BoundaryOperatorMatrix;

    // correction coefficients for the actual density at one transverse mode
    std::vector<cd> correction_coeffs(std::size_t tIdx) const;

    std::shared_ptr<ConstantAssembly> asm_;
    std::shared_ptr<VariableCorrector> corr_;
    LayerKind kind_;
    GammaDensity h_;
    int n_;
};

// side of the lattice limit for a trace on component b
inline lattice::Side lattice_side(int component, TraceSide side) {
    bool plus = (component == 0) == (side == TraceSide::from_omega);
    return plus ? lattice::Side::interior_plus : lattice::Side::exterior_minus;
}

// make the two factories explicit at call sites
std::shared_ptr<ConstantAssembly> make_assembly(const StokesParams& params);
std::shared_ptr<VariableCorrector> make_corrector(const StokesParams& params,
                                                  std::shared_ptr<ConstantAssembly> base);

LayerPotential layer_potential(std::shared_ptr<ConstantAssembly> assembly,
                               std::shared_ptr<VariableCorrector> corrector, LayerKind kind,
                               const GammaDensity& h);

// (h, 0) delta_Gamma as truncated spectral coefficients on the grid: the
// velocity components get (2pi)^{-1} hhat(xi') e^{-i xi_n c}
SpectralField embed_density(const StokesParams& params, const BoundaryDensity& h,
                            int component);

// Moore-Penrose pseudo-inverse application: per-mode closed form for
// constant coefficients, per-transverse-mode dense solve otherwise
SpectralField pseudo_inverse_apply(const StokesParams& params, const SpectralField& F);

} // namespace stokeslp::pot

#endif
