#include "stokeslp/pot/boundary_op.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include "stokeslp/core/fft.hpp"
#include "stokeslp/ops/strip.hpp"

namespace stokeslp::pot {

namespace {

double wrap_2pi(double t) {
    double w = std::fmod(t, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

// rows of the (n+1) x n potential decomposition restricted to velocity or
// pressure
la::Matrix rows_of(const la::Matrix& m, int row_begin, int row_end) {
    la::Matrix out(row_end - row_begin, m.cols());
    for (int i = row_begin; i < row_end; ++i)
        for (int j = 0; j < m.cols(); ++j) out(i - row_begin, j) = m(i, j);
    return out;
}

} // namespace

GammaDensity BoundaryOperatorMatrix::apply(const GammaDensity& h) const {
    const int per_comp_in = cols_ / 2;
    const int per_comp_out = rows_ / 2;
    GammaDensity out;
    for (int c = 0; c < 2; ++c) out.comp[c] = BoundaryDensity(tgrid_, per_comp_out);
    for (std::size_t t = 0; t < tgrid_.total(); ++t) {
        std::vector<cd> in(cols_);
        for (int c = 0; c < 2; ++c)
            for (int j = 0; j < per_comp_in; ++j) in[c * per_comp_in + j] = h.comp[c].at(j, t);
        auto y = blocks_[t].apply(in);
        for (int c = 0; c < 2; ++c)
            for (int i = 0; i < per_comp_out; ++i) out.comp[c].at(i, t) = y[c * per_comp_out + i];
    }
    return out;
}

BoundaryOperatorMatrix BoundaryOperatorMatrix::adjoint() const {
    BoundaryOperatorMatrix out = *this;
    out.rows_ = cols_;
    out.cols_ = rows_;
    for (auto& b : out.blocks_) b = b.adjoint();
    return out;
}

BoundaryOperatorMatrix& BoundaryOperatorMatrix::axpy(cd alpha,
                                                     const BoundaryOperatorMatrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_ || tgrid_ != other.tgrid_)
        throw DimensionError("BoundaryOperatorMatrix: shape mismatch");
    for (std::size_t t = 0; t < blocks_.size(); ++t) blocks_[t] += alpha * other.blocks_[t];
    return *this;
}

BoundaryOperatorMatrix& BoundaryOperatorMatrix::shift_identity(cd alpha) {
    if (rows_ != cols_) throw DimensionError("shift_identity: square blocks required");
    for (auto& b : blocks_)
        for (int i = 0; i < rows_; ++i) b(i, i) += alpha;
    return *this;
}

double BoundaryOperatorMatrix::max_block_distance(const BoundaryOperatorMatrix& other) const {
    double m = 0.0;
    for (std::size_t t = 0; t < blocks_.size(); ++t)
        m = std::max(m, (blocks_[t] - other.blocks_[t]).max_abs());
    return m;
}

void BoundaryOperatorMatrix::serialize(std::ostream& os) const {
    os << "stokeslp-boundary-operator v1\n";
    os << tgrid_.dim() << " " << tgrid_.npts() << " " << n_ << " " << rows_ << " " << cols_
       << "\n";
    os << "# mode_index row col re im\n";
    os.precision(17);
    for (std::size_t t = 0; t < blocks_.size(); ++t)
        for (int i = 0; i < rows_; ++i)
            for (int j = 0; j < cols_; ++j) {
                const cd v = blocks_[t](i, j);
                os << t << " " << i << " " << j << " " << std::scientific << v.real() << " "
                   << v.imag() << "\n";
            }
}

BoundaryOperatorMatrix BoundaryOperatorMatrix::deserialize(std::istream& is) {
    std::string header;
    std::getline(is, header);
    if (header != "stokeslp-boundary-operator v1")
        throw ArgumentError("deserialize: bad header");
    BoundaryOperatorMatrix out;
    int tdim, tn;
    is >> tdim >> tn >> out.n_ >> out.rows_ >> out.cols_;
    out.tgrid_ = TorusGrid(tdim, tn);
    out.blocks_.assign(out.tgrid_.total(), la::Matrix(out.rows_, out.cols_));
    std::string line;
    std::getline(is, line);
    std::getline(is, line); // comment
    std::size_t t;
    int i, j;
    double re, im;
    while (is >> t >> i >> j >> re >> im) out.blocks_[t](i, j) = cd{re, im};
    return out;
}

namespace {

// add the correction traces for the unit density (c, j) of the given kind to
// column (c, j) of the block
void add_corrections(la::Matrix& block, const StokesParams& params,
                     const VariableCorrector& corr, const ModeAssembly& ma, std::size_t tIdx,
                     int kind, bool traction, TraceSide side_ignored_for_smooth) {
    (void)side_ignored_for_smooth; // corrections are smooth across Gamma
    const int n = params.grid.dim();
    const int K = corr.kmodes();
    TorusGrid line(1, K);
    for (int c = 0; c < 2; ++c) {
        for (int j = 0; j < n; ++j) {
            const std::vector<cd>& u = corr.unit_correction(tIdx, kind, c, j, ma);
            for (int b = 0; b < 2; ++b) {
                const double d = params.component(b).height;
                auto nu_b = normal_of(params, b);
                const int rows = traction ? n : n; // velocity rows either way
                for (int bin = 0; bin < K; ++bin) {
                    double k = static_cast<double>(line.signed_mode(bin));
                    cd ph = std::exp(cd{0.0, d * k});
                    if (!traction) {
                        for (int i = 0; i < rows; ++i)
                            block(b * rows + i, c * n + j) += u[i * K + bin] * ph;
                    } else {
                        la::Matrix f = ma.ctx.traction_factor(k, nu_b);
                        for (int i = 0; i < rows; ++i) {
                            cd acc{0.0, 0.0};
                            for (int l = 0; l <= n; ++l) acc += f(i, l) * u[l * K + bin];
                            block(b * rows + i, c * n + j) += acc * ph;
                        }
                    }
                }
            }
        }
    }
}

// pressure-row corrections for C0
void add_pressure_corrections(la::Matrix& block, const StokesParams& params,
                              const VariableCorrector& corr, const ModeAssembly& ma,
                              std::size_t tIdx, int kind) {
    const int n = params.grid.dim();
    const int K = corr.kmodes();
    TorusGrid line(1, K);
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < n; ++j) {
            const std::vector<cd>& u = corr.unit_correction(tIdx, kind, c, j, ma);
            for (int b = 0; b < 2; ++b) {
                const double d = params.component(b).height;
                for (int bin = 0; bin < K; ++bin) {
                    cd ph = std::exp(cd{0.0, d * line.signed_mode(bin)});
                    block(b, c * n + j) += u[n * K + bin] * ph;
                }
            }
        }
}

} // namespace

BoundaryOperatorMatrix assemble_boundary_operator(
    const StokesParams& params, BoundaryOp which, std::shared_ptr<ConstantAssembly> assembly,
    std::shared_ptr<VariableCorrector> corrector) {
    const int n = params.grid.dim();
    BoundaryOperatorMatrix out;
    out.n_ = n;
    out.tgrid_ = assembly->tgrid();
    const bool pressure_row = which == BoundaryOp::C0;
    out.rows_ = pressure_row ? 2 : 2 * n;
    out.cols_ = 2 * n;
    out.blocks_.assign(out.tgrid_.total(), la::Matrix(out.rows_, out.cols_));

    const bool variable = corrector && corrector->active();
    const int kind = (which == BoundaryOp::K) ? 1 : 0;

    for (std::size_t t = 0; t < out.tgrid_.total(); ++t) {
        const ModeAssembly& ma = assembly->mode(t);
        la::Matrix& block = out.blocks_[t];
        for (int b = 0; b < 2; ++b) {
            const double db = params.component(b).height;
            for (int c = 0; c < 2; ++c) {
                const double cc = params.component(c).height;
                la::Matrix m;
                switch (which) {
                case BoundaryOp::K: {
                    const auto& dec = ma.dbl[c];
                    la::Matrix full = (b == c) ? dec.pv0() : dec.value(wrap_2pi(db - cc));
                    m = rows_of(full, 0, n);
                    break;
                }
                case BoundaryOp::S: {
                    const auto& dec = ma.single;
                    la::Matrix full = (b == c) ? dec.pv0() : dec.value(wrap_2pi(db - cc));
                    m = rows_of(full, 0, n);
                    break;
                }
                case BoundaryOp::C0: {
                    const auto& dec = ma.single;
                    la::Matrix full = (b == c) ? dec.pv0() : dec.value(wrap_2pi(db - cc));
                    m = rows_of(full, n, n + 1);
                    break;
                }
                case BoundaryOp::Kstar: {
                    const auto& dec = ma.trac_single[b];
                    m = (b == c) ? dec.pv0() : dec.value(wrap_2pi(db - cc));
                    break;
                }
                }
                const int rows = pressure_row ? 1 : n;
                for (int i = 0; i < rows; ++i)
                    for (int j = 0; j < n; ++j)
                        block(b * rows + i, c * n + j) = m(i, j) / kTwoPi;
            }
        }
        if (variable) {
            if (which == BoundaryOp::K)
                add_corrections(block, params, *corrector, ma, t, kind, false,
                                TraceSide::from_omega);
            else if (which == BoundaryOp::S)
                add_corrections(block, params, *corrector, ma, t, kind, false,
                                TraceSide::from_omega);
            else if (which == BoundaryOp::Kstar)
                add_corrections(block, params, *corrector, ma, t, kind, true,
                                TraceSide::from_omega);
            else
                add_pressure_corrections(block, params, *corrector, ma, t, kind);
        }
    }
    return out;
}

BoundaryOperatorMatrix assemble_traction_double(
    const StokesParams& params, TraceSide side, std::shared_ptr<ConstantAssembly> assembly,
    std::shared_ptr<VariableCorrector> corrector) {
    const int n = params.grid.dim();
    BoundaryOperatorMatrix out;
    out.n_ = n;
    out.tgrid_ = assembly->tgrid();
    out.rows_ = 2 * n;
    out.cols_ = 2 * n;
    out.blocks_.assign(out.tgrid_.total(), la::Matrix(out.rows_, out.cols_));
    const bool variable = corrector && corrector->active();

    for (std::size_t t = 0; t < out.tgrid_.total(); ++t) {
        const ModeAssembly& ma = assembly->mode(t);
        la::Matrix& block = out.blocks_[t];
        for (int b = 0; b < 2; ++b) {
            const double db = params.component(b).height;
            for (int c = 0; c < 2; ++c) {
                const double cc = params.component(c).height;
                const auto& dec = ma.trac_double[b][c];
                la::Matrix m = (b == c) ? dec.limit(lattice_side(b, side))
                                        : dec.value(wrap_2pi(db - cc));
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        block(b * n + i, c * n + j) = m(i, j) / kTwoPi;
            }
        }
        if (variable)
            add_corrections(block, params, *corrector, ma, t, /*kind=*/1, true,
                            TraceSide::from_omega);
    }
    return out;
}

GammaDensity normal_density(const StokesParams& params) {
    const int n = params.grid.dim();
    GammaDensity nu(params.grid, n);
    // constant nu per component: transverse zero mode only; normalized so
    // that the stacked density has unit L2(Gamma) norm
    const double area = std::pow(kTwoPi, n - 1);
    const double scale = 1.0 / std::sqrt(2.0 * area);
    for (int c = 0; c < 2; ++c)
        nu.comp[c].at(n - 1, 0) = scale * static_cast<double>(params.component(c).normal_sign);
    return nu;
}

cd gamma_inner(const GammaDensity& a, const GammaDensity& b, int dim_ambient) {
    return ops::boundary_inner(a.comp[0], b.comp[0], dim_ambient) +
           ops::boundary_inner(a.comp[1], b.comp[1], dim_ambient);
}

} // namespace stokeslp::pot
