#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stokeslp/core/mode_sum.hpp"
#include "stokeslp/pot/lattice.hpp"
#include "stokeslp/pot/multipliers.hpp"
#include "stokeslp/pot/rational.hpp"

using namespace stokeslp;
using la::Matrix;
using la::cd;

TEST_CASE("lattice kernels match frozen high-precision sums (a=1.3, t=0.7)") {
    auto gp = lattice::g_kernels(+1, 1.3, 0.7);
    auto gm = lattice::g_kernels(-1, 1.3, 0.7);
    CHECK(std::abs(gp.g1 - cd{0.0, 2.52985161616055891}) < 1e-14);
    CHECK(std::abs(gp.g2 - cd{-1.77540450137141278, 0.0}) < 1e-14);
    CHECK(std::abs(gp.g3 - cd{0.0, -0.637141001484117115}) < 1e-14);
    CHECK(std::abs(gm.g1 - cd{0.0, -0.00442723409346148354}) < 1e-15);
    CHECK(std::abs(gm.g2 - cd{-0.0247259579785511004, 0.0}) < 1e-15);
    CHECK(std::abs(gm.g3 - cd{0.0, 0.0690716273810853}) < 1e-14);
}

TEST_CASE("lattice kernels against truncated sums with tail correction") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> at(0.3, 6.0), tt(0.4, 5.8);
    for (int trial = 0; trial < 12; ++trial) {
        double a = at(rng), t = tt(rng);
        for (int sign : {+1, -1}) {
            auto g = lattice::g_kernels(sign, a, t);
            cd z{0.0, sign * a};
            for (int m : {2, 3}) {
                cd ref{0.0, 0.0};
                for (long k = -40000; k <= 40000; ++k)
                    ref += std::exp(cd{0.0, t * k}) / std::pow(static_cast<double>(k) - z,
                                                               static_cast<double>(m));
                cd got = (m == 2) ? g.g2 : g.g3;
                CHECK(std::abs(got - ref) < 2e-8);
            }
        }
    }
}

TEST_CASE("pv values and endpoint limits of the kernels") {
    // pv of 1/(k - i a) over symmetric partial sums = i pi coth(pi a)
    double a = 0.8;
    auto pv = lattice::g_pv0(+1, a);
    double coth = std::cosh(M_PI * a) / std::sinh(M_PI * a);
    CHECK(std::abs(pv.g1 - cd{0.0, M_PI * coth}) < 1e-13);

    // 1/(k - ia)^2 is continuous across t = 0: limit = -pi^2 csch^2(pi a)
    auto lp = lattice::g_limit(+1, a, lattice::Side::interior_plus);
    auto lm = lattice::g_limit(+1, a, lattice::Side::exterior_minus);
    double csch2 = 1.0 / std::pow(std::sinh(M_PI * a), 2);
    CHECK(std::abs(lp.g2 - cd{-M_PI * M_PI * csch2, 0.0}) < 1e-13);
    CHECK(std::abs(lp.g2 - lm.g2) < 1e-14);
    // while g1 jumps by exactly 2 pi i
    CHECK(std::abs((lp.g1 - lm.g1) - cd{0.0, kTwoPi}) < 1e-14);
}

TEST_CASE("Bernoulli kernels: sawtooth, zeta values, direct sums") {
    // F_1(t) = i (pi - t)
    for (double t : {0.3, 1.0, 4.4}) {
        CHECK(std::abs(lattice::f_kernel(1, t) - cd{0.0, M_PI - t}) < 1e-13);
    }
    // F_2(0) = 2 zeta(2), F_4(0) = 2 zeta(4), F_6(0) = 2 zeta(6)
    CHECK(std::abs(lattice::f_pv0(2) - cd{M_PI * M_PI / 3.0, 0.0}) < 1e-13);
    CHECK(std::abs(lattice::f_pv0(4) - cd{std::pow(M_PI, 4) / 45.0, 0.0}) < 1e-13);
    CHECK(std::abs(lattice::f_pv0(6) - cd{2.0 * std::pow(M_PI, 6) / 945.0, 0.0}) < 1e-12);
    CHECK(lattice::f_pv0(3) == cd{0.0, 0.0});

    for (int m : {2, 3, 4, 5, 6}) {
        double t = 2.1;
        cd ref{0.0, 0.0};
        for (long k = 1; k <= 60000; ++k) {
            ref += std::exp(cd{0.0, t * k}) / std::pow(static_cast<double>(k), m);
            ref += std::exp(cd{0.0, -t * k}) / std::pow(static_cast<double>(-k), m);
        }
        CHECK(std::abs(lattice::f_kernel(m, t) - ref) < 1e-8);
    }
    CHECK(std::abs(lattice::f_limit(1, lattice::Side::interior_plus) - cd{0.0, M_PI}) < 1e-15);
    CHECK(std::abs(lattice::f_limit(1, lattice::Side::exterior_minus) + cd{0.0, M_PI}) < 1e-15);
}

TEST_CASE("mode matrix inverse blocks are exact") {
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> ud(-5.0, 5.0);
    for (int trial = 0; trial < 40; ++trial) {
        int n = (trial % 2 == 0) ? 2 : 3;
        std::vector<double> xiP(n - 1);
        for (auto& v : xiP) v = std::round(ud(rng));
        double V = (trial % 3 == 0) ? 0.0 : 1.3;
        double V0 = (trial % 4 == 0) ? 0.0 : 0.7;
        pot::ModeContext ctx(V, V0, xiP);
        double k = std::round(ud(rng));
        double rho2 = 0.0;
        for (double v : xiP) rho2 += v * v;
        if (rho2 + k * k == 0.0) k = 1.0;
        if (V == 0.0 && rho2 + k * k == 0.0) continue;
        Matrix prod = ctx.mode_matrix(k) * ctx.inverse_blocks(k);
        CHECK((prod - Matrix::identity(n + 1)).max_abs() < 1e-12);
    }
}

TEST_CASE("rational decomposition reproduces multipliers pointwise") {
    for (auto [V, V0] : std::vector<std::pair<double, double>>{{1.0, 1.0}, {1.0, 0.0},
                                                               {0.0, 1.0}, {0.0, 0.0}}) {
        for (double xp : {1.0, 3.0, -5.0}) {
            pot::ModeContext ctx(V, V0, {xp});
            auto sampler = [&](double k) { return ctx.single_potential(k); };
            Matrix w0 = ctx.single_potential(0.0);
            auto dec = rational::decompose_matrix(sampler, 3, 2, ctx.poles(), w0,
                                                  ctx.node_scale());
            // reconstruct W(k) from the decomposition at fresh points
            for (double k : {0.7, 2.3, -9.9, 31.4}) {
                Matrix want = ctx.single_potential(k);
                Matrix got(3, 2);
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 2; ++j) {
                        const auto& e = dec.entries[i * 2 + j];
                        cd v = e.c0;
                        for (const auto& t : e.terms) {
                            cd z{0.0, t.sign * t.a};
                            v += t.coeff / std::pow(cd{k, 0.0} - z, t.mult);
                        }
                        for (std::size_t m = 0; m < e.zero_terms.size(); ++m)
                            v += e.zero_terms[m] / std::pow(k, static_cast<double>(m + 1));
                        got(i, j) = v;
                    }
                CHECK((got - want).max_abs() < 1e-12 * (1.0 + want.max_abs()));
            }
        }
    }
}

TEST_CASE("lattice sums of multiplier decompositions match truncated mode sums") {
    pot::ModeContext ctx(1.0, 1.0, {2.0});
    std::vector<double> nu_s{0.0, -1.0};

    auto sv = [&](double k) { return ctx.single_potential(k); };
    auto dec = rational::decompose_matrix(sv, 3, 2, ctx.poles(), ctx.single_potential(0.0),
                                          ctx.node_scale());
    for (double t : {0.5, 2.0, M_PI}) {
        // plain symmetric partial sums (the inverse-power tail fit assumes a
        // non-oscillatory tail, so it stays off here)
        auto term = [&](long k) {
            return ctx.single_potential(static_cast<double>(k)) *
                   std::exp(cd{0.0, t * static_cast<double>(k)});
        };
        auto ms = mode_sum<Matrix>(term, 60000, false);
        CHECK((dec.value(t) - ms.value).max_abs() < 5e-4);
    }

    // pv of the double-layer multiplier at t = 0 equals the symmetrized sum
    auto wd = [&](double k) { return ctx.double_potential(k, nu_s); };
    auto dwd = rational::decompose_matrix(wd, 3, 2, ctx.poles(), ctx.double_potential(0.0, nu_s),
                                          ctx.node_scale());
    auto term0 = [&](long k) { return ctx.double_potential(static_cast<double>(k), nu_s); };
    auto ms0 = mode_sum<Matrix>(term0, 60000, true);
    CHECK((dwd.pv0() - ms0.value).max_abs() < 1e-6);

    // 1/k coefficient at infinity: velocity block is sigma_{-1}(P; e_n) =
    // -i I independent of xi'; pressure row picks up the tangential part
    // -2 g xi' of sigma_0(Q)
    Matrix j = dwd.jump();
    Matrix want(3, 2);
    want(0, 0) = cd{0.0, -1.0};
    want(1, 1) = cd{0.0, -1.0};
    want(2, 0) = cd{-2.0 / 3.0 * 2.0, 0.0}; // -2 g rho_1, g = 1/3, rho_1 = 2
    CHECK((j - want).max_abs() < 1e-12);
}

TEST_CASE("one-sided limits tie out with heavily truncated near-boundary sums") {
    pot::ModeContext ctx(1.0, 1.0, {1.0});
    std::vector<double> nu_s{0.0, -1.0};
    auto wd = [&](double k) { return ctx.double_potential(k, nu_s); };
    auto dec = rational::decompose_matrix(wd, 3, 2, ctx.poles(), ctx.double_potential(0.0, nu_s),
                                          ctx.node_scale());
    // evaluate at small t > 0 and compare with the interior_plus limit
    Matrix lim = dec.limit(lattice::Side::interior_plus);
    Matrix near = dec.value(1e-7);
    CHECK((lim - near).max_abs() < 1e-5);
    Matrix lim2 = dec.limit(lattice::Side::exterior_minus);
    Matrix near2 = dec.value(kTwoPi - 1e-7);
    CHECK((lim2 - near2).max_abs() < 1e-5);
    // the two one-sided traces differ by exactly 2 pi i * jump (the 1/(2pi)
    // normalization of the boundary operators turns this into i * J)
    Matrix diff = lim - lim2;
    Matrix want = cd{0.0, kTwoPi} * dec.jump();
    CHECK((diff - want).max_abs() < 1e-12);
}
