#include "stokeslp/ops/green.hpp"

namespace stokeslp::ops {

namespace {

SpectralField velocity_part(const SpectralField& U) {
    const TorusGrid& g = U.grid();
    const int n = g.dim();
    SpectralField u(g, n);
    for (int i = 0; i < n; ++i)
        for (std::size_t idx = 0; idx < g.total(); ++idx) u.at(i, idx) = U.at(i, idx);
    return u;
}

SpectralField pressure_part(const SpectralField& U) {
    const TorusGrid& g = U.grid();
    SpectralField p(g, 1);
    for (std::size_t idx = 0; idx < g.total(); ++idx) p.at(0, idx) = U.at(g.dim(), idx);
    return p;
}

} // namespace

cd b_form(const StokesParams& params, const SpectralField& U, const SpectralField& W) {
    const double L = params.strip_height;
    SpectralField u = velocity_part(U), w = velocity_part(W);
    SpectralField p = pressure_part(U), q = pressure_part(W);

    SpectralField du = apply_first_order(FirstOrderOp::Def, u);
    SpectralField dw = apply_first_order(FirstOrderOp::Def, w);
    SpectralField su = apply_first_order(FirstOrderOp::DivStar, u);
    SpectralField sw = apply_first_order(FirstOrderOp::DivStar, w);

    cd acc = 2.0 * strip_inner(du, dw, L);
    acc += strip_inner(su, q, L);
    acc += strip_inner(p, sw, L);
    acc += strip_inner(multiply_profile(u, params.V), w, L);
    acc -= strip_inner(multiply_profile(p, params.V0), q, L);
    return acc;
}

GreenResiduals green_residuals(const StokesParams& params, const SpectralField& U,
                               const SpectralField& W, int weak_trials,
                               unsigned long long seed) {
    const TorusGrid& g = params.grid;
    const int n = g.dim();
    const double L = params.strip_height;
    GreenResiduals out;

    SpectralField xiU = apply_xi(params, U);
    SpectralField xiW = apply_xi(params, W);
    SpectralField u = velocity_part(U), w = velocity_part(W);

    double scale = (sobolev_norm(U, 1.0) + 1.0) * (sobolev_norm(W, 1.0) + 1.0);

    // (1)
    cd lhs1 = strip_inner(xiU, W, L);
    cd rhs1 = b_form(params, U, W);
    for (int c = 0; c < 2; ++c) {
        BoundaryDensity tU = conormal(params, U, c);
        BoundaryDensity ws = slice_coeffs(w, params.component(c).height);
        rhs1 += boundary_inner(tU, ws, n);
    }
    out.identity1 = std::abs(lhs1 - rhs1) / scale;

    // (2)
    cd lhs2 = strip_inner(xiU, W, L) - strip_inner(U, xiW, L);
    cd rhs2{0.0, 0.0};
    for (int c = 0; c < 2; ++c) {
        BoundaryDensity tU = conormal(params, U, c);
        BoundaryDensity tW = conormal(params, W, c);
        BoundaryDensity us = slice_coeffs(u, params.component(c).height);
        BoundaryDensity ws = slice_coeffs(w, params.component(c).height);
        rhs2 += boundary_inner(tU, ws, n) - boundary_inner(us, tW, n);
    }
    out.identity2 = std::abs(lhs2 - rhs2) / scale;

    // (3), paired against random band-limited test fields
    std::mt19937_64 rng(seed);
    double worst = 0.0;
    for (int trial = 0; trial < weak_trials; ++trial) {
        SpectralField phi = random_band_limited(g, n + 1, g.npts() / 4, rng);
        SpectralField xiPhi = apply_xi(params, phi);
        SpectralField phiU = velocity_part(phi);

        cd lhs = strip_inner(U, xiPhi, L);
        cd rhs = strip_inner(xiU, phi, L);
        for (int c = 0; c < 2; ++c) {
            double h = params.component(c).height;
            BoundaryDensity tU = conormal(params, U, c);
            BoundaryDensity phis = slice_coeffs(phiU, h);
            rhs -= boundary_inner(tU, phis, n);
            BoundaryDensity us = slice_coeffs(u, h);
            BoundaryDensity tPhi = conormal(params, phi, c);
            rhs += boundary_inner(us, tPhi, n);
        }
        double denom = (sobolev_norm(U, 1.0) + 1.0) * (sobolev_norm(phi, 1.0) + 1.0);
        worst = std::max(worst, std::abs(lhs - rhs) / denom);
    }
    out.identity3 = worst;
    return out;
}

EnergyReport energy_report(const StokesParams& params, const SpectralField& U) {
    const double L = params.strip_height;
    SpectralField u = velocity_part(U);
    SpectralField p = pressure_part(U);

    EnergyReport r;
    r.def_u = strip_norm(apply_first_order(FirstOrderOp::Def, u), L);
    r.divstar_u = strip_norm(apply_first_order(FirstOrderOp::DivStar, u), L);
    r.grad_p = strip_norm(apply_first_order(FirstOrderOp::Grad, p), L);
    r.sqrtV_u = std::sqrt(
        std::max(0.0, strip_inner(multiply_profile(u, params.V), u, L).real()));
    r.sqrtV0_p = std::sqrt(
        std::max(0.0, strip_inner(multiply_profile(p, params.V0), p, L).real()));
    return r;
}

} // namespace stokeslp::ops
