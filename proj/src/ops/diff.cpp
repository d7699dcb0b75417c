#include "stokeslp/ops/diff.hpp"

#include "stokeslp/core/fft.hpp"

namespace stokeslp::ops {

SpectralField partial(const SpectralField& f, int axis) {
    const TorusGrid& g = f.grid();
    SpectralField out(g, f.comps());
    const int N = g.npts();
    for (int c = 0; c < f.comps(); ++c) {
        for (std::size_t idx = 0; idx < g.total(); ++idx) {
            auto m = g.modes(idx);
            int k = m[axis];
            if (k == -N / 2) continue; // unpaired Nyquist mode
            out.at(c, idx) = cd{0.0, static_cast<double>(k)} * f.at(c, idx);
        }
    }
    return out;
}

SpectralField apply_first_order(FirstOrderOp which, const SpectralField& f,
                                const StokesParams* params) {
    const TorusGrid& g = f.grid();
    const int n = g.dim();
    switch (which) {
    case FirstOrderOp::Def: {
        if (f.comps() != n) throw DimensionError("Def: field must have n components");
        SpectralField out(g, n * n);
        for (int i = 0; i < n; ++i) {
            SpectralField di = partial(f, i); // d_i of every component
            for (int j = 0; j < n; ++j) {
                for (std::size_t idx = 0; idx < g.total(); ++idx) {
                    out.at(i * n + j, idx) += 0.5 * di.at(j, idx);
                    out.at(j * n + i, idx) += 0.5 * di.at(j, idx);
                }
            }
        }
        return out;
    }
    case FirstOrderOp::DefStar: {
        if (f.comps() != n * n) throw DimensionError("Def*: field must have n^2 components");
        // (Def* T)_j = -(1/2) sum_i d_i (T_ij + T_ji); the symmetrization
        // makes the adjoint identity hold for arbitrary (non-symmetric) T
        SpectralField out(g, n);
        for (int j = 0; j < n; ++j) {
            for (int i = 0; i < n; ++i) {
                for (std::size_t idx = 0; idx < g.total(); ++idx) {
                    auto m = g.modes(idx);
                    int k = m[i];
                    if (k == -g.npts() / 2) continue;
                    out.at(j, idx) -= cd{0.0, 0.5 * k} *
                                      (f.at(i * n + j, idx) + f.at(j * n + i, idx));
                }
            }
        }
        return out;
    }
    case FirstOrderOp::Grad: {
        if (f.comps() != 1) throw DimensionError("grad: scalar field required");
        SpectralField out(g, n);
        for (int i = 0; i < n; ++i) {
            SpectralField di = partial(f, i);
            for (std::size_t idx = 0; idx < g.total(); ++idx) out.at(i, idx) = di.at(0, idx);
        }
        return out;
    }
    case FirstOrderOp::DivStar: {
        if (f.comps() != n) throw DimensionError("grad*: field must have n components");
        SpectralField out(g, 1);
        for (int i = 0; i < n; ++i) {
            SpectralField di = partial(f, i);
            for (std::size_t idx = 0; idx < g.total(); ++idx) out.at(0, idx) -= di.at(i, idx);
        }
        return out;
    }
    case FirstOrderOp::Dnu: {
        if (!params) throw ArgumentError("Dnu: params with the normal extension required");
        if (f.comps() != n) throw DimensionError("Dnu: field must have n components");
        // nu_ext = phi(x_n) e_n, so (Dnu u)_j = phi(x_n) Def(u)_{n-1, j}
        SpectralField def = apply_first_order(FirstOrderOp::Def, f);
        SpectralField rows(g, n);
        for (int j = 0; j < n; ++j)
            for (std::size_t idx = 0; idx < g.total(); ++idx)
                rows.at(j, idx) = def.at((n - 1) * n + j, idx);
        GridField rv = fft::inverse(rows);
        for (int j = 0; j < n; ++j)
            for (std::size_t idx = 0; idx < g.total(); ++idx) {
                auto x = g.point(idx);
                rv.at(j, idx) *= params->normal_extension(x[n - 1]);
            }
        return fft::forward(rv);
    }
    default:
        throw ArgumentError("apply_first_order: unsupported selector");
    }
}

SpectralField multiply_profile(const SpectralField& f, const Coefficient& c) {
    if (c.is_constant()) {
        SpectralField out = f;
        out *= cd{c.constant_value(), 0.0};
        return out;
    }
    const TorusGrid& g = f.grid();
    GridField v = fft::inverse(f);
    for (int comp = 0; comp < f.comps(); ++comp)
        for (std::size_t idx = 0; idx < g.total(); ++idx) {
            auto x = g.point(idx);
            v.at(comp, idx) *= c(x[g.dim() - 1]);
        }
    SpectralField out = fft::forward(v);
    // stay on the Nyquist-free subspace used by the derivative convention
    for (int comp = 0; comp < f.comps(); ++comp)
        for (std::size_t idx = 0; idx < g.total(); ++idx) {
            auto m = g.modes(idx);
            for (int d = 0; d < g.dim(); ++d)
                if (m[d] == -g.npts() / 2) out.at(comp, idx) = cd{0.0, 0.0};
        }
    return out;
}

SpectralField apply_xi(const StokesParams& params, const SpectralField& U) {
    const TorusGrid& g = U.grid();
    const int n = g.dim();
    if (U.grid() != params.grid) throw DimensionError("apply_xi: grid mismatch");
    if (U.comps() != n + 1) throw DimensionError("apply_xi: U must have n+1 components");

    SpectralField u(g, n), p(g, 1);
    for (int i = 0; i < n; ++i)
        for (std::size_t idx = 0; idx < g.total(); ++idx) u.at(i, idx) = U.at(i, idx);
    for (std::size_t idx = 0; idx < g.total(); ++idx) p.at(0, idx) = U.at(n, idx);

    SpectralField lu = apply_first_order(FirstOrderOp::DefStar,
                                         apply_first_order(FirstOrderOp::Def, u));
    lu *= cd{2.0, 0.0};
    SpectralField vu = multiply_profile(u, params.V);
    SpectralField gp = apply_first_order(FirstOrderOp::Grad, p);
    SpectralField du = apply_first_order(FirstOrderOp::DivStar, u);
    SpectralField v0p = multiply_profile(p, params.V0);

    SpectralField out(g, n + 1);
    for (int i = 0; i < n; ++i)
        for (std::size_t idx = 0; idx < g.total(); ++idx)
            out.at(i, idx) = lu.at(i, idx) + vu.at(i, idx) + gp.at(i, idx);
    for (std::size_t idx = 0; idx < g.total(); ++idx)
        out.at(n, idx) = du.at(0, idx) - v0p.at(0, idx);
    return out;
}

BoundaryDensity conormal(const StokesParams& params, const SpectralField& U, int component) {
    const TorusGrid& g = U.grid();
    const int n = g.dim();
    BoundaryComponent bc = params.component(component);

    SpectralField u(g, n), p(g, 1);
    for (int i = 0; i < n; ++i)
        for (std::size_t idx = 0; idx < g.total(); ++idx) u.at(i, idx) = U.at(i, idx);
    for (std::size_t idx = 0; idx < g.total(); ++idx) p.at(0, idx) = U.at(n, idx);

    SpectralField def = apply_first_order(FirstOrderOp::Def, u);
    BoundaryDensity defs = slice_coeffs(def, bc.height);
    BoundaryDensity ps = slice_coeffs(p, bc.height);

    BoundaryDensity out(defs.tgrid, n);
    const double sgn = static_cast<double>(bc.normal_sign);
    for (int j = 0; j < n; ++j)
        for (std::size_t t = 0; t < out.modes(); ++t) {
            // T_nu U = -2 (Def u) nu + p nu ; nu = sign * e_n on the slice
            out.at(j, t) = -2.0 * sgn * defs.at((n - 1) * n + j, t);
            if (j == n - 1) out.at(j, t) += sgn * ps.at(0, t);
        }
    return out;
}

BoundaryDensity velocity_trace(const SpectralField& U, const StokesParams& params,
                               int component) {
    const TorusGrid& g = U.grid();
    const int n = g.dim();
    SpectralField u(g, n);
    for (int i = 0; i < n; ++i)
        for (std::size_t idx = 0; idx < g.total(); ++idx) u.at(i, idx) = U.at(i, idx);
    return slice_coeffs(u, params.component(component).height);
}

} // namespace stokeslp::ops
