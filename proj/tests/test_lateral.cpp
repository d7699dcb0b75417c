#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "stokeslp/lateral/model.hpp"
#include "stokeslp/symbols/boundary.hpp"

using namespace stokeslp;
using namespace stokeslp::lateral;
using la::Matrix;

namespace {

// a(xi) = 1/<xi>^2, order -2
ModelSymbol bracket2() {
    ModelSymbol a;
    a.order = -2;
    a.eval = [](std::span<const double> xi) {
        double b = 1.0;
        for (double v : xi) b += v * v;
        Matrix m(1, 1);
        m(0, 0) = 1.0 / b;
        return m;
    };
    return a;
}

// a(xi) = xi_n / |xi|^2, order -1, odd leading term
ModelSymbol odd_m1() {
    ModelSymbol a;
    a.order = -1;
    auto f = [](std::span<const double> xi) {
        double b = 0.0;
        for (double v : xi) b += v * v;
        Matrix m(1, 1);
        m(0, 0) = xi.back() / (1e-300 + b);
        return m;
    };
    a.eval = f;
    a.leading = f;
    return a;
}

// a(xi) = 1/(<xi'>^2 + xi_n^2)^{1/2}-like even order -1 symbol
ModelSymbol even_m1() {
    ModelSymbol a;
    a.order = -1;
    auto f = [](std::span<const double> xi) {
        double b = 1.0;
        for (double v : xi) b += v * v;
        Matrix m(1, 1);
        m(0, 0) = 1.0 / std::sqrt(b);
        return m;
    };
    a.eval = f;
    a.leading = [](std::span<const double> xi) {
        double b = 0.0;
        for (double v : xi) b += v * v;
        Matrix m(1, 1);
        m(0, 0) = 1.0 / std::sqrt(b);
        return m;
    };
    return a;
}

ModelSymbol stokes_double_layer(int n, double V0, bool with_leading) {
    symbols::StokesSymbolParams p{0.0, V0};
    std::vector<double> nu(n, 0.0);
    nu[n - 1] = -1.0; // half-space outer normal
    ModelSymbol a;
    a.order = -1;
    a.rows = n;
    a.cols = n;
    a.eval = [p, nu](std::span<const double> xi) {
        return symbols::double_layer_sigma(p, nu, xi);
    };
    if (with_leading) a.leading = a.eval;
    return a;
}

} // namespace

TEST_CASE("slice symbol of 1/<xi>^2: residue closed form") {
    ModelSymbol a = bracket2();
    // a_{s,t}(xi') = e^{-b |t|} / (2 b), b = <xi'>
    std::vector<double> zero{0.0};
    Matrix v = slice_symbol(a, 1.0, zero);
    CHECK(std::abs(v(0, 0) - cd{0.18393972058572117, 0.0}) < 1e-9); // e^{-1}/2

    Matrix v0 = slice_symbol(a, 0.0, zero);
    CHECK(std::abs(v0(0, 0) - cd{0.5, 0.0}) < 1e-10);

    for (double xp : {1.0, 3.0}) {
        std::vector<double> xiP{xp};
        double b = std::sqrt(1.0 + xp * xp);
        for (double t : {0.5, -0.8, 2.0}) {
            Matrix w = slice_symbol(a, t, xiP);
            CHECK(std::abs(w(0, 0) - std::exp(-b * std::abs(t)) / (2.0 * b)) < 1e-9);
        }
    }

    // continuity at t = 0
    std::vector<double> xiP{2.0};
    Matrix at0 = slice_symbol(a, 0.0, xiP);
    double prev = 1e9;
    for (double t : {0.5, 0.25, 0.125, 0.0625}) {
        double gap = std::abs(slice_symbol(a, t, xiP)(0, 0) - at0(0, 0));
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("jump coefficients: odd, even, and the Stokes double layer") {
    std::vector<double> xiP{1.0};

    auto jo = jump_coefficients(odd_m1(), xiP);
    CHECK(jo.equal);
    CHECK(std::abs(jo.j_plus(0, 0) - cd{1.0, 0.0}) < 1e-8);
    CHECK(std::abs(jo.j_minus(0, 0) - cd{1.0, 0.0}) < 1e-8);

    auto je = jump_coefficients(even_m1(), xiP);
    CHECK_FALSE(je.equal);
    CHECK(std::abs(je.j_plus(0, 0) - cd{1.0, 0.0}) < 1e-8);
    CHECK(std::abs(je.j_minus(0, 0) + cd{1.0, 0.0}) < 1e-8);

    // J = -i I for the double-layer symbol, recovered by extrapolation alone
    for (double V0 : {0.0, 1.0}) {
        auto a = stokes_double_layer(2, V0, /*with_leading=*/false);
        auto j = jump_coefficients(a, xiP);
        CHECK(j.equal);
        Matrix want = cd{0.0, -1.0} * Matrix::identity(2);
        CHECK((j.j_plus - want).max_abs() < 1e-6);
        CHECK((j.j_minus - want).max_abs() < 1e-6);
        // and the leading-term route agrees
        auto al = stokes_double_layer(2, V0, true);
        auto jl = jump_coefficients(al, xiP);
        CHECK((jl.j_plus - want).max_abs() < 1e-12);
    }
}

TEST_CASE("restriction symbols and one-sided values") {
    // a = 1/<xi>^2 at xi' = 0: a_0 = 1/2
    CHECK(std::abs(restriction_symbol(bracket2(), std::vector<double>{0.0},
                                      RestrictionSide::principal)(0, 0) -
                   cd{0.5, 0.0}) < 1e-10);

    // a = xi_n/|xi|^2: a_0 = 0, a_{0+-} = +-i/2
    std::vector<double> xiP{1.5};
    Matrix a0 = restriction_symbol(odd_m1(), xiP, RestrictionSide::principal);
    CHECK(std::abs(a0(0, 0)) < 1e-10);
    Matrix ap = restriction_symbol(odd_m1(), xiP, RestrictionSide::plus);
    Matrix am = restriction_symbol(odd_m1(), xiP, RestrictionSide::minus);
    CHECK(std::abs(ap(0, 0) - cd{0.0, 0.5}) < 1e-8);
    CHECK(std::abs(am(0, 0) + cd{0.0, 0.5}) < 1e-8);
    // a_{0+} - a_{0-} = i J+ by construction
    auto j = jump_coefficients(odd_m1(), xiP);
    CHECK(std::abs((ap(0, 0) - am(0, 0)) - cd{0.0, 1.0} * j.j_plus(0, 0)) < 1e-12);

    // even order -1 symbol: lateral limits are undefined
    CHECK_THROWS_AS(restriction_symbol(even_m1(), xiP, RestrictionSide::plus),
                    JumpUndefinedError);

    // restriction of the double-layer symbol reproduces sigma_0(K)
    symbols::StokesSymbolParams sp{0.0, 1.0};
    std::vector<double> nu{0.0, -1.0};
    for (double xp : {1.0, 2.0, 5.0}) {
        std::vector<double> x1{xp};
        std::vector<double> full{xp, 0.0};
        Matrix got = restriction_symbol(stokes_double_layer(2, 1.0, true), x1,
                                        RestrictionSide::principal);
        Matrix want = symbols::sigma0_K(sp, nu, full);
        CHECK((got - want).max_abs() < 1e-8);
    }

    // order -1 at t = 0 must be rejected by the slice routine
    CHECK_THROWS_AS(slice_symbol(odd_m1(), 0.0, xiP), ArgumentError);
}

TEST_CASE("potential slice acts per mode and matches the multiplier") {
    TorusGrid tg(1, 16);
    ModelSymbol a = bracket2();
    BoundaryDensity h(tg, 1);
    h.at(0, tg.bin_of(3)) = 1.0; // h = e^{i 3 x'}
    BoundaryDensity out = potential_slice(a, h, 0.7);
    double b = std::sqrt(1.0 + 9.0);
    for (std::size_t t = 0; t < tg.total(); ++t) {
        cd want = (tg.signed_mode(static_cast<int>(t)) == 3)
                      ? cd{std::exp(-b * 0.7) / (2.0 * b), 0.0}
                      : cd{0.0, 0.0};
        CHECK(std::abs(out.at(0, t) - want) < 1e-9);
    }
}

TEST_CASE("verify_lateral_limits: order -2 decay and adjoint identity") {
    TorusGrid tg(1, 8);
    auto rep = verify_lateral_limits(bracket2(), tg, 2);
    CHECK(rep.decaying);
    for (std::size_t r = 1; r < rep.eps.size(); ++r) {
        CHECK(rep.residual_plus[r] <= 0.75 * rep.residual_plus[r - 1] + 1e-12);
        CHECK(rep.residual_minus[r] <= 0.75 * rep.residual_minus[r - 1] + 1e-12);
    }
    CHECK(rep.adjoint_residual < 1e-8);
}

TEST_CASE("verify_lateral_limits: the double layer jumps by the density") {
    TorusGrid tg(1, 8);
    auto a = stokes_double_layer(2, 1.0, true);
    std::mt19937_64 rng(5);
    SpectralField tmp = random_band_limited(tg, 2, 2, rng);
    BoundaryDensity h(tg, 2);
    h.coef = tmp.raw();

    // difference of one-sided limits applied to h equals h
    for (std::size_t t = 0; t < tg.total(); ++t) {
        auto xiP = transverse_xi(tg, t);
        if (xiP[0] == 0.0) continue; // symbol is singular at xi = 0
        Matrix ap = restriction_symbol(a, xiP, RestrictionSide::plus);
        Matrix am = restriction_symbol(a, xiP, RestrictionSide::minus);
        for (int i = 0; i < 2; ++i) {
            cd acc{0.0, 0.0};
            for (int j = 0; j < 2; ++j) acc += (ap(i, j) - am(i, j)) * h.at(j, t);
            CHECK(std::abs(acc - h.at(i, t)) < 1e-8);
        }
    }

    // adjoint identity for symbols built from the Stokes blocks
    auto as = adjoint_symbol(a);
    for (double xp : {1.0, 2.0}) {
        std::vector<double> x1{xp};
        Matrix l = restriction_symbol(as, x1, RestrictionSide::principal);
        Matrix r = restriction_symbol(a, x1, RestrictionSide::principal).adjoint();
        CHECK((l - r).max_abs() < 1e-8);
    }
}

TEST_CASE("sliced multipliers form a bounded family over the offset") {
    // order -1 classical symbols: {a_t} is bounded in the order-zero class;
    // sample sup_t |a_t(xi')| over offsets and transverse frequencies
    ModelSymbol a = odd_m1();
    double cap = 0.0;
    for (double xp : {0.5, 1.0, 4.0, 16.0}) {
        std::vector<double> xiP{xp};
        for (double t : {4.0, 1.0, 0.25, 0.0625, 0.015625, -0.5, -0.03125}) {
            double v = std::abs(slice_symbol(a, t, xiP)(0, 0));
            cap = std::max(cap, v);
            CHECK(v <= 0.5 + 1e-9); // |a_t| = e^{-|xi'| |t|}/2 here
        }
    }
    CHECK(cap <= 0.5 + 1e-9);
}
