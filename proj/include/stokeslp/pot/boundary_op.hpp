#ifndef STOKESLP_POT_BOUNDARY_OP_HPP
#define STOKESLP_POT_BOUNDARY_OP_HPP

#include <iosfwd>

#include "stokeslp/pot/layer.hpp"

namespace stokeslp::pot {

// Discrete realizations of the boundary operators on L2(Gamma; TM) with
// Gamma = Gamma_0 u Gamma_1:
//   K  = restriction of the double-layer velocity (one-sided traces are
//        +-1/2 + K),
//   K* = restriction of the conormal of the single layer (traces -+1/2+K*),
//   S  = restriction of the single-layer velocity (continuous across Gamma),
//   C0 = restriction of the single-layer pressure (traces -+g/2 nu + C0).
// Same-component blocks are symmetrized mode sums (exact lattice values);
// cross-component blocks are the convergent sums at offset +-L_s; the
// variable-coefficient corrections are added from the dense route.
enum class BoundaryOp { K, Kstar, S, C0 };

class BoundaryOperatorMatrix {
  public:
    BoundaryOperatorMatrix() = default;

    int block_rows() const { return rows_; }
    int block_cols() const { return cols_; }
    const TorusGrid& tgrid() const { return tgrid_; }
    int dim() const { return n_; }

    const la::Matrix& block(std::size_t tIdx) const { return blocks_[tIdx]; }
    la::Matrix& block(std::size_t tIdx) { return blocks_[tIdx]; }

    // apply to a density on both components; output comps = rows_/2
    GammaDensity apply(const GammaDensity& h) const;

    BoundaryOperatorMatrix adjoint() const;

    BoundaryOperatorMatrix& axpy(cd alpha, const BoundaryOperatorMatrix& other);
    BoundaryOperatorMatrix& shift_identity(cd alpha); // += alpha I (square only)

    double max_block_distance(const BoundaryOperatorMatrix& other) const;

    // column-based text serialization: one line per entry
    void serialize(std::ostream& os) const;
    static BoundaryOperatorMatrix deserialize(std::istream& is);

    friend BoundaryOperatorMatrix assemble_boundary_operator(
        const StokesParams&, BoundaryOp, std::shared_ptr<ConstantAssembly>,
        std::shared_ptr<VariableCorrector>);
    friend BoundaryOperatorMatrix assemble_traction_double(
        const StokesParams&, TraceSide, std::shared_ptr<ConstantAssembly>,
        std::shared_ptr<VariableCorrector>);

  private:
    int n_ = 0;
    int rows_ = 0, cols_ = 0;
    TorusGrid tgrid_;
    std::vector<la::Matrix> blocks_;
};

BoundaryOperatorMatrix assemble_boundary_operator(
    const StokesParams& params, BoundaryOp which, std::shared_ptr<ConstantAssembly> assembly,
    std::shared_ptr<VariableCorrector> corrector);

// one-sided conormal trace of the double layer, [T_nu D]_side, as a matrix
// (order-zero operator; no principal-value version exists)
BoundaryOperatorMatrix assemble_traction_double(
    const StokesParams& params, TraceSide side, std::shared_ptr<ConstantAssembly> assembly,
    std::shared_ptr<VariableCorrector> corrector);

// the constant density nu on Gamma (outer normal per component), unit L2 norm
GammaDensity normal_density(const StokesParams& params);

// L2(Gamma) inner product of stacked densities
cd gamma_inner(const GammaDensity& a, const GammaDensity& b, int dim_ambient);

} // namespace stokeslp::pot

#endif
