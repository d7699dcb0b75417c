#include "stokeslp/lateral/model.hpp"

#include <random>

namespace stokeslp::lateral {

namespace {

std::vector<double> with_last(std::span<const double> xiP, double k) {
    std::vector<double> xi(xiP.begin(), xiP.end());
    xi.push_back(k);
    return xi;
}

Matrix integrate_matrix(const ModelSymbol& a, std::span<const double> xiP, double t,
                        bool even_part, const QuadratureSpec& spec_in) {
    QuadratureSpec spec = spec_in;
    spec.decay_order = static_cast<double>(a.order) + (even_part && a.order == -1 ? -1.0 : 0.0);
    spec.oscillation_freq = t;
    Matrix out(a.rows, a.cols);
    for (int i = 0; i < a.rows; ++i) {
        for (int j = 0; j < a.cols; ++j) {
            auto f = [&](double k) {
                cd phase = std::exp(cd{0.0, t * k});
                if (!even_part) return phase * a.eval(with_last(xiP, k))(i, j);
                return phase * 0.5 *
                       (a.eval(with_last(xiP, k))(i, j) + a.eval(with_last(xiP, -k))(i, j));
            };
            out(i, j) = line_quadrature(f, spec).value / kTwoPi;
        }
    }
    return out;
}

} // namespace

Matrix slice_symbol(const ModelSymbol& a, double t, std::span<const double> xiP,
                    const QuadratureSpec& spec) {
    if (a.order > -1) throw ArgumentError("slice_symbol: order must be <= -1");
    if (a.order == -1 && t == 0.0)
        throw ArgumentError("slice_symbol: order -1 at t = 0 needs restriction_symbol");
    return integrate_matrix(a, xiP, t, /*even_part=*/false, spec);
}

JumpCoefficients jump_coefficients(const ModelSymbol& a, std::span<const double> xiP,
                                   double tol) {
    JumpCoefficients out;
    // tau-ladder {1e2, 1e3, 1e4} scaled by <xi'>, with full quadratic
    // Richardson in 1/tau: v(tau) = J + c/tau + d/tau^2 is fitted exactly
    double scale = 1.0;
    for (double v : xiP) scale += v * v;
    scale = std::sqrt(scale);
    auto ladder = [&](double sign) {
        double t1 = 1e2 * scale, t2 = 1e3 * scale, t3 = 1e4 * scale;
        Matrix v1 = (sign * t1) * a.eval(with_last(xiP, sign * t1));
        Matrix v2 = (sign * t2) * a.eval(with_last(xiP, sign * t2));
        Matrix v3 = (sign * t3) * a.eval(with_last(xiP, sign * t3));
        double a1 = 1.0 / t1, a2 = 1.0 / t2, a3 = 1.0 / t3;
        // Lagrange weights for extrapolation to alpha = 0
        double w1 = (a2 * a3) / ((a1 - a2) * (a1 - a3));
        double w2 = (a1 * a3) / ((a2 - a1) * (a2 - a3));
        double w3 = (a1 * a2) / ((a3 - a1) * (a3 - a2));
        return cd{w1, 0.0} * v1 + cd{w2, 0.0} * v2 + cd{w3, 0.0} * v3;
    };
    Matrix jp = ladder(+1.0);
    Matrix jm = ladder(-1.0);
    // J- is defined with the opposite sign of the limit variable:
    // J- = lim_{tau -> -inf} tau a(xi', tau)
    out.j_plus = jp;
    out.j_minus = jm;
    if (a.has_leading()) {
        std::vector<double> en(xiP.size() + 1, 0.0);
        en.back() = 1.0;
        Matrix lp = a.leading(en); // sigma_{-1}(a; e_n) = J+
        en.back() = -1.0;
        Matrix lm = cd{-1.0, 0.0} * a.leading(en); // -sigma_{-1}(a; -e_n) = J-
        double dis = std::max((lp - jp).max_abs(), (lm - jm).max_abs());
        out.disagreement = dis;
        if (dis > tol * (1.0 + lp.max_abs()))
            throw InconsistentSymbolError(
                "jump_coefficients: leading term disagrees with the tau-ladder limit");
        out.j_plus = lp;
        out.j_minus = lm;
    }
    out.equal = (out.j_plus - out.j_minus).max_abs() <= tol * (1.0 + out.j_plus.max_abs());
    return out;
}

Matrix restriction_symbol(const ModelSymbol& a, std::span<const double> xiP,
                          RestrictionSide side, const QuadratureSpec& spec) {
    if (a.order > -1) throw ArgumentError("restriction_symbol: order must be <= -1");
    if (a.order == -1) {
        JumpCoefficients jc = jump_coefficients(a, xiP);
        if (!jc.equal)
            throw JumpUndefinedError(
                "restriction_symbol: sigma_{-1} fails the oddness condition J+ = J-");
        Matrix a0 = integrate_matrix(a, xiP, 0.0, /*even_part=*/true, spec);
        if (side == RestrictionSide::principal) return a0;
        cd half_i{0.0, side == RestrictionSide::plus ? 0.5 : -0.5};
        return a0 + half_i * jc.j_plus;
    }
    Matrix a0 = integrate_matrix(a, xiP, 0.0, /*even_part=*/true, spec);
    return a0; // m < -1: both lateral limits coincide with a_0
}

BoundaryDensity potential_slice(const ModelSymbol& a, const BoundaryDensity& h, double eps,
                                const QuadratureSpec& spec) {
    if (a.cols != h.comps) throw DimensionError("potential_slice: component mismatch");
    BoundaryDensity out(h.tgrid, a.rows);
    for (std::size_t t = 0; t < h.modes(); ++t) {
        auto xiP = transverse_xi(h.tgrid, t);
        Matrix m = slice_symbol(a, eps, xiP, spec);
        for (int i = 0; i < a.rows; ++i) {
            cd acc{0.0, 0.0};
            for (int j = 0; j < a.cols; ++j) acc += m(i, j) * h.at(j, t);
            out.at(i, t) = acc;
        }
    }
    return out;
}

ModelSymbol adjoint_symbol(const ModelSymbol& a) {
    ModelSymbol out;
    out.order = a.order;
    out.rows = a.cols;
    out.cols = a.rows;
    auto ev = a.eval;
    out.eval = [ev](std::span<const double> xi) { return ev(xi).adjoint(); };
    if (a.has_leading()) {
        auto ld = a.leading;
        out.leading = [ld](std::span<const double> xi) { return ld(xi).adjoint(); };
    }
    return out;
}

LateralReport verify_lateral_limits(const ModelSymbol& a, const TorusGrid& transverse,
                                    int trials, unsigned long long seed) {
    LateralReport rep;
    std::mt19937_64 rng(seed);
    const int bw = transverse.npts() / 4;

    for (double e : {0.5, 0.25, 0.125, 0.0625}) rep.eps.push_back(e);
    rep.residual_plus.assign(rep.eps.size(), 0.0);
    rep.residual_minus.assign(rep.eps.size(), 0.0);

    for (int trial = 0; trial < trials; ++trial) {
        SpectralField tmp = random_band_limited(transverse, a.cols, bw, rng);
        BoundaryDensity h(transverse, a.cols);
        h.coef = tmp.raw();
        double hnorm = h.norm() + 1.0;

        // one-sided limits per mode
        BoundaryDensity limP(transverse, a.rows), limM(transverse, a.rows);
        for (std::size_t t = 0; t < h.modes(); ++t) {
            auto xiP = transverse_xi(transverse, t);
            Matrix ap = restriction_symbol(a, xiP, a.order == -1 ? RestrictionSide::plus
                                                                 : RestrictionSide::principal);
            Matrix am = restriction_symbol(a, xiP, a.order == -1 ? RestrictionSide::minus
                                                                 : RestrictionSide::principal);
            for (int i = 0; i < a.rows; ++i) {
                cd accp{0.0, 0.0}, accm{0.0, 0.0};
                for (int j = 0; j < a.cols; ++j) {
                    accp += ap(i, j) * h.at(j, t);
                    accm += am(i, j) * h.at(j, t);
                }
                limP.at(i, t) = accp;
                limM.at(i, t) = accm;
            }
        }

        for (std::size_t r = 0; r < rep.eps.size(); ++r) {
            BoundaryDensity sp = potential_slice(a, h, rep.eps[r]);
            BoundaryDensity sm = potential_slice(a, h, -rep.eps[r]);
            sp -= limP;
            sm -= limM;
            rep.residual_plus[r] = std::max(rep.residual_plus[r], sp.norm() / hnorm);
            rep.residual_minus[r] = std::max(rep.residual_minus[r], sm.norm() / hnorm);
        }
    }

    // adjoint restriction: (a*)_0 = (a_0)*
    ModelSymbol as = adjoint_symbol(a);
    double worst = 0.0;
    for (std::size_t t = 0; t < transverse.total(); ++t) {
        auto xiP = transverse_xi(transverse, t);
        Matrix l = restriction_symbol(as, xiP, RestrictionSide::principal);
        Matrix r = restriction_symbol(a, xiP, RestrictionSide::principal).adjoint();
        worst = std::max(worst, (l - r).max_abs());
    }
    rep.adjoint_residual = worst;

    rep.decaying = true;
    for (std::size_t r = 1; r < rep.eps.size(); ++r) {
        if (rep.residual_plus[r] > 0.75 * rep.residual_plus[r - 1] + 1e-12 ||
            rep.residual_minus[r] > 0.75 * rep.residual_minus[r - 1] + 1e-12)
            rep.decaying = false;
    }
    return rep;
}

} // namespace stokeslp::lateral
