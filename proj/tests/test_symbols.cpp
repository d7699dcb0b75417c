#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "stokeslp/symbols/boundary.hpp"
#include "stokeslp/symbols/first_order.hpp"
#include "stokeslp/symbols/matrix_symbol.hpp"
#include "stokeslp/symbols/stokes.hpp"

using namespace stokeslp;
using namespace stokeslp::symbols;

namespace {

std::vector<double> rand_xi(int n, std::mt19937_64& rng, double scale = 4.0) {
    std::uniform_real_distribution<double> d(-scale, scale);
    std::vector<double> xi(n);
    double s2 = 0.0;
    do {
        s2 = 0.0;
        for (auto& v : xi) {
            v = d(rng);
            s2 += v * v;
        }
    } while (s2 < 1e-4);
    return xi;
}

double mat_err(const Matrix& a, const Matrix& b) { return (a - b).max_abs(); }

} // namespace

TEST_CASE("stokes symbol: zero mode, explicit value, self-adjointness") {
    StokesSymbolParams p{2.0, 3.0};
    std::vector<double> zero{0.0, 0.0};
    Matrix m0 = stokes_symbol(p, zero);
    CHECK(std::abs(m0(0, 0) - cd{2.0, 0.0}) == 0.0);
    CHECK(std::abs(m0(1, 1) - cd{2.0, 0.0}) == 0.0);
    CHECK(std::abs(m0(2, 2) - cd{-3.0, 0.0}) == 0.0);
    CHECK(std::abs(m0(0, 1)) == 0.0);

    StokesSymbolParams q{0.0, 0.0};
    std::vector<double> e1{1.0, 0.0};
    Matrix m = stokes_symbol(q, e1);
    Matrix want(3, 3);
    want(0, 0) = 2.0;
    want(1, 1) = 1.0;
    want(0, 2) = cd{0.0, 1.0};
    want(2, 0) = cd{0.0, -1.0};
    want(2, 2) = 0.0;
    CHECK(mat_err(m, want) < 1e-15);

    std::mt19937_64 rng(11);
    for (int t = 0; t < 50; ++t) {
        auto xi = rand_xi(2, rng);
        Matrix s = stokes_symbol(StokesSymbolParams{0.0, 1.5}, xi);
        CHECK(mat_err(s, s.adjoint()) < 1e-13);
    }
}

TEST_CASE("stokes symbol inverse: explicit values and product identity") {
    std::vector<double> e1{1.0, 0.0};
    {
        Matrix inv = stokes_symbol_inverse(StokesSymbolParams{0.0, 0.0}, e1);
        Matrix want(3, 3);
        want(0, 0) = 0.0;
        want(1, 1) = 1.0;
        want(0, 2) = cd{0.0, 1.0};
        want(2, 0) = cd{0.0, -1.0};
        want(2, 2) = -2.0;
        CHECK(mat_err(inv, want) < 1e-15);
    }
    {
        Matrix inv = stokes_symbol_inverse(StokesSymbolParams{0.0, 1.0}, e1);
        Matrix want(3, 3);
        want(0, 0) = 1.0 / 3.0;
        want(1, 1) = 1.0;
        want(0, 2) = cd{0.0, 1.0 / 3.0};
        want(2, 0) = cd{0.0, -1.0 / 3.0};
        want(2, 2) = -2.0 / 3.0;
        CHECK(mat_err(inv, want) < 1e-15);
    }

    std::mt19937_64 rng(123);
    for (double V0 : {0.0, 0.5, 1.0, 10.0}) {
        StokesSymbolParams p{0.0, V0};
        for (int t = 0; t < 250; ++t) {
            int n = (t % 2 == 0) ? 2 : 3;
            auto xi = rand_xi(n, rng);
            Matrix prod = stokes_symbol(p, xi) * stokes_symbol_inverse(p, xi);
            CHECK(mat_err(prod, Matrix::identity(n + 1)) < 1e-13);
        }
    }

    std::vector<double> zero{0.0, 0.0};
    CHECK_THROWS_AS(stokes_symbol_inverse(StokesSymbolParams{}, zero), SingularPointError);
}

TEST_CASE("first order symbols: Def, Dnu, composition with Def*") {
    std::vector<double> e1{1.0, 0.0}, e2{0.0, 1.0};
    Matrix def = first_order_symbol(FirstOrderOp::Def, e1);
    // X = e2 -> (i/2)(e1 (x) e2 + e2 (x) e1)
    CHECK(std::abs(def(0 * 2 + 1, 1) - cd{0.0, 0.5}) < 1e-15); // (0,1) entry
    CHECK(std::abs(def(1 * 2 + 0, 1) - cd{0.0, 0.5}) < 1e-15); // (1,0) entry
    CHECK(std::abs(def(0 * 2 + 0, 1)) == 0.0);
    CHECK(std::abs(def(1 * 2 + 1, 1)) == 0.0);

    Matrix dnu = first_order_symbol(FirstOrderOp::Dnu, e1, std::span<const double>(e2));
    // xi(nu) = 0; map = (i/2) e1 (x) e2
    Matrix want(2, 2);
    want(0, 1) = cd{0.0, 0.5};
    CHECK(mat_err(dnu, want) < 1e-15);

    // sigma_1(Def*) sigma_1(Def) = sigma_2(Def*Def) = (1/2)(|xi|^2 + xi (x) xi)
    std::mt19937_64 rng(3);
    for (int t = 0; t < 30; ++t) {
        int n = (t % 2 == 0) ? 2 : 3;
        auto xi = rand_xi(n, rng);
        Matrix comp = first_order_symbol(FirstOrderOp::DefStar, xi) *
                      first_order_symbol(FirstOrderOp::Def, xi);
        CHECK(mat_err(comp, defstar_def_symbol(xi)) < 1e-12);
    }
    // 2-d display value at xi = e1: diag(1, 1/2)
    Matrix c2 = first_order_symbol(FirstOrderOp::DefStar, e1) *
                first_order_symbol(FirstOrderOp::Def, e1);
    CHECK(std::abs(c2(0, 0) - cd{1.0, 0.0}) < 1e-15);
    CHECK(std::abs(c2(1, 1) - cd{0.5, 0.0}) < 1e-15);

    CHECK_THROWS_AS(first_order_symbol(FirstOrderOp::Dnu, e1), ArgumentError);
}

TEST_CASE("boundary maps: grad, div*, and the Def* identity") {
    std::vector<double> en{0.0, 1.0};
    Matrix bg = boundary_map(FirstOrderOp::Grad, en);
    CHECK(std::abs(bg(0, 0)) == 0.0);
    CHECK(std::abs(bg(1, 0) - cd{1.0, 0.0}) < 1e-15); // p -> p nu

    Matrix bd = boundary_map(FirstOrderOp::DivStar, en);
    CHECK(std::abs(bd(0, 1) - cd{-1.0, 0.0}) < 1e-15); // X -> -X.nu

    // d_nu^{Def*} o sigma_1(Def; zeta) = -sigma_1(Dnu; zeta) at random nu, zeta
    std::mt19937_64 rng(17);
    std::normal_distribution<double> nd(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        int n = (t % 2 == 0) ? 2 : 3;
        std::vector<double> nu(n);
        double nn = 0.0;
        for (auto& v : nu) {
            v = nd(rng);
            nn += v * v;
        }
        for (auto& v : nu) v /= std::sqrt(nn);
        auto zeta = rand_xi(n, rng);
        Matrix lhs = conormal_defstar(nu) * first_order_symbol(FirstOrderOp::Def, zeta);
        Matrix rhs = cd{-1.0, 0.0} *
                     first_order_symbol(FirstOrderOp::Dnu, zeta, std::span<const double>(nu));
        CHECK(mat_err(lhs, rhs) < 1e-13);
    }
}

TEST_CASE("inverse blocks match the assembled inverse; C = B*") {
    std::mt19937_64 rng(29);
    std::vector<double> e1{1.0, 0.0};
    Matrix a0 = block_symbol(InverseBlock::A, StokesSymbolParams{0.0, 0.0}, e1);
    CHECK(std::abs(a0(0, 0)) < 1e-15);
    CHECK(std::abs(a0(1, 1) - cd{1.0, 0.0}) < 1e-15);

    Matrix d = block_symbol(InverseBlock::D, StokesSymbolParams{0.0, 1.0}, e1);
    CHECK(std::abs(d(0, 0) - cd{-2.0 / 3.0, 0.0}) < 1e-15);

    for (int t = 0; t < 100; ++t) {
        int n = (t % 2 == 0) ? 2 : 3;
        StokesSymbolParams p{0.0, 0.3 * (t % 7)};
        auto xi = rand_xi(n, rng);
        Matrix b = block_symbol(InverseBlock::B, p, xi);
        Matrix c = block_symbol(InverseBlock::C, p, xi);
        CHECK(mat_err(c, b.adjoint()) < 1e-14);

        Matrix inv = stokes_symbol_inverse(p, xi);
        Matrix a = block_symbol(InverseBlock::A, p, xi);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) CHECK(std::abs(a(i, j) - inv(i, j)) < 1e-14);
        for (int i = 0; i < n; ++i) CHECK(std::abs(b(i, 0) - inv(i, n)) < 1e-14);
    }
}

TEST_CASE("double layer symbol: value at xi = nu, jump limits, composition") {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> nd(0.0, 1.0);

    for (double V0 : {0.0, 1.0, 4.0}) {
        StokesSymbolParams p{0.0, V0};
        // 1 - 2f + g = 0 exactly
        CHECK(std::abs(1.0 - 2.0 * p.f() + p.g()) < 1e-15);

        std::vector<double> nu{0.0, -1.0};
        Matrix at_nu = double_layer_sigma(p, nu, nu);
        CHECK(mat_err(at_nu, cd{0.0, 1.0} * Matrix::identity(2)) < 1e-14);

        // J+- = lim tau sigma(xi' - tau nu) = -i (limits taken along the
        // inward direction -nu, the e_n of the half-space model)
        std::vector<double> xiP{1.0, 0.0};
        for (double tau : {1e4, -1e4}) {
            std::vector<double> xi{xiP[0], -tau * nu[1]};
            Matrix lim = tau * double_layer_sigma(p, nu, xi);
            CHECK(mat_err(lim, cd{0.0, -1.0} * Matrix::identity(2)) < 1e-3);
        }

        // sigma_{-1}(P) = -2 sigma_{-2}(A) sigma_1(Dnu*) + sigma_{-1}(B) nu#
        for (int t = 0; t < 30; ++t) {
            int n = (t % 2 == 0) ? 2 : 3;
            std::vector<double> nuv(n);
            double nn = 0.0;
            for (auto& v : nuv) {
                v = nd(rng);
                nn += v * v;
            }
            for (auto& v : nuv) v /= std::sqrt(nn);
            auto xi = rand_xi(n, rng);
            Matrix a = block_symbol(InverseBlock::A, p, xi);
            Matrix dnus =
                first_order_symbol(FirstOrderOp::DnuStar, xi, std::span<const double>(nuv));
            Matrix b = block_symbol(InverseBlock::B, p, xi);
            Matrix nuRow(1, n);
            for (int i = 0; i < n; ++i) nuRow(0, i) = nuv[i];
            Matrix rhs = cd{-2.0, 0.0} * (a * dnus) + b * nuRow;
            Matrix lhs = double_layer_sigma(p, nuv, xi);
            CHECK(mat_err(lhs, rhs) < 1e-12);
        }
    }
}

TEST_CASE("boundary symbols: K, S, C0") {
    std::vector<double> nu{0.0, -1.0};
    std::vector<double> xiP{1.0, 0.0};

    Matrix k0 = sigma0_K(StokesSymbolParams{0.0, 0.0}, nu, xiP);
    CHECK(k0.max_abs() == 0.0);

    Matrix k1 = sigma0_K(StokesSymbolParams{0.0, 1.0}, nu, xiP);
    CHECK(mat_err(k1, k1.adjoint()) < 1e-15);
    auto ev = la::hermitian_eigenvalues(k1);
    CHECK(ev.front() == doctest::Approx(-1.0 / 6.0).epsilon(1e-12));
    CHECK(ev.back() == doctest::Approx(1.0 / 6.0).epsilon(1e-12));

    // ||sigma_0(K)|| < 1/4 for all V0 >= 0, so +-1/2 + K stays elliptic
    for (double V0 : {0.0, 0.1, 1.0, 10.0, 1e4}) {
        auto evv = la::hermitian_eigenvalues(sigma0_K(StokesSymbolParams{0.0, V0}, nu, xiP));
        CHECK(std::abs(evv.front()) < 0.25);
        CHECK(std::abs(evv.back()) < 0.25);
    }

    // S in 3-d at V0 = 0, |xi'| = 1: eigenvalues {1/4, 1/4, 1/2}
    std::vector<double> nu3{0.0, 0.0, 1.0}, xi3{1.0, 0.0, 0.0};
    auto evs = la::hermitian_eigenvalues(sigma_m1_S(StokesSymbolParams{0.0, 0.0}, nu3, xi3));
    CHECK(evs[0] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(evs[1] == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(evs[2] == doctest::Approx(0.5).epsilon(1e-12));

    // spectrum of sigma_{-1}(S) within [(2-f)/(4|xi'|), 2/(4|xi'|)], positive
    std::mt19937_64 rng(37);
    std::uniform_real_distribution<double> ud(0.2, 8.0);
    for (int t = 0; t < 40; ++t) {
        StokesSymbolParams p{0.0, ud(rng)};
        double r = ud(rng);
        std::vector<double> xp{r, 0.0};
        auto evr = la::hermitian_eigenvalues(sigma_m1_S(p, nu, xp));
        CHECK(evr.front() >= (2.0 - p.f()) / (4.0 * r) - 1e-12);
        CHECK(evr.back() <= 2.0 / (4.0 * r) + 1e-12);
        CHECK(evr.front() > 0.0);
    }

    Matrix c0 = sigma0_C0(StokesSymbolParams{0.0, 0.0}, nu, xiP);
    CHECK(std::abs(c0(0, 0) - cd{0.0, -0.5}) < 1e-15);

    std::vector<double> skew{1.0, 0.5};
    CHECK_THROWS_AS(sigma0_K(StokesSymbolParams{}, nu, skew), ArgumentError);
}

TEST_CASE("homogeneity of every leading symbol") {
    std::mt19937_64 rng(41);
    StokesSymbolParams p{0.0, 0.7};
    std::vector<double> nu{0.0, -1.0};
    for (double lambda : {2.0, 10.0}) {
        for (int t = 0; t < 20; ++t) {
            auto xi = rand_xi(2, rng);
            std::vector<double> lxi{lambda * xi[0], lambda * xi[1]};

            Matrix a1 = block_symbol(InverseBlock::A, p, lxi);
            Matrix a0 = block_symbol(InverseBlock::A, p, xi);
            CHECK(mat_err(a1, std::pow(lambda, -2.0) * a0) < 1e-13);

            Matrix b1 = block_symbol(InverseBlock::B, p, lxi);
            CHECK(mat_err(b1, std::pow(lambda, -1.0) * block_symbol(InverseBlock::B, p, xi)) <
                  1e-13);

            Matrix p1 = double_layer_sigma(p, nu, lxi);
            CHECK(mat_err(p1, std::pow(lambda, -1.0) * double_layer_sigma(p, nu, xi)) < 1e-13);

            std::vector<double> xiP{xi[0], 0.0};
            std::vector<double> lxiP{lambda * xi[0], 0.0};
            Matrix k1 = sigma0_K(p, nu, lxiP);
            CHECK(mat_err(k1, sigma0_K(p, nu, xiP)) < 1e-13); // order 0
            Matrix s1 = sigma_m1_S(p, nu, lxiP);
            CHECK(mat_err(s1, std::pow(lambda, -1.0) * sigma_m1_S(p, nu, xiP)) < 1e-13);
        }
    }
}

TEST_CASE("matrix symbol estimates hold numerically for the double layer") {
    // |d^beta_xi a(xi)| <= C <xi>^{m - |beta|} for |beta| <= 2, checked by
    // finite differences along a ray: the normalized bound must not grow as
    // |xi| does.
    StokesSymbolParams p{0.0, 1.0};
    std::vector<double> nu{0.0, -1.0};
    MatrixSymbol sym{
        -1, 2, 2,
        [p, nu](std::span<const double> xi) { return double_layer_sigma(p, nu, xi); },
        [p, nu](std::span<const double> xi) { return double_layer_sigma(p, nu, xi); }};
    CHECK(sym.has_leading());

    auto jb = [](const std::vector<double>& xi) {
        double s = 1.0;
        for (double v : xi) s += v * v;
        return std::sqrt(s);
    };
    auto deriv_norm = [&](const std::vector<double>& xi, int axis, int ord) {
        const double h = 1e-3;
        std::vector<double> a(xi), b(xi);
        a[axis] += h;
        b[axis] -= h;
        if (ord == 0) return sym(xi).max_abs();
        if (ord == 1) return ((sym(a) - sym(b)) * cd{1.0 / (2.0 * h), 0.0}).max_abs();
        Matrix dd = sym(a) - cd{2.0, 0.0} * sym(xi) + sym(b);
        return (dd * cd{1.0 / (h * h), 0.0}).max_abs();
    };

    std::vector<double> base{1.3, 0.7};
    for (int axis = 0; axis < 2; ++axis) {
        for (int ord = 0; ord <= 2; ++ord) {
            double at_small = 0.0;
            for (double s : {1.0, 2.0}) {
                std::vector<double> xi{s * base[0], s * base[1]};
                at_small = std::max(at_small,
                                    deriv_norm(xi, axis, ord) / std::pow(jb(xi), -1.0 - ord));
            }
            for (double s : {4.0, 8.0, 16.0, 32.0}) {
                std::vector<double> xi{s * base[0], s * base[1]};
                double bound = deriv_norm(xi, axis, ord) / std::pow(jb(xi), -1.0 - ord);
                CHECK(bound <= 1.25 * at_small + 1e-9);
            }
        }
    }

    // leading-term closeness: |a - sigma_m| <= C <xi>^{m-1} along the ray
    // (here a is itself homogeneous, so the gap is zero up to round-off)
    for (double s : {2.0, 8.0, 32.0}) {
        std::vector<double> xi{s * base[0], s * base[1]};
        Matrix gap = sym(xi) - sym.leading(xi);
        CHECK(gap.max_abs() < 1e-14);
    }
}
