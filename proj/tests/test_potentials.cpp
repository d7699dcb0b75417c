#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <sstream>

#include "stokeslp/core/fft.hpp"
#include "stokeslp/core/mode_sum.hpp"
#include "stokeslp/ops/green.hpp"
#include "stokeslp/pot/boundary_op.hpp"
#include "stokeslp/pot/jumps.hpp"
#include "stokeslp/symbols/boundary.hpp"

using namespace stokeslp;
using namespace stokeslp::pot;
using la::Matrix;

namespace {

StokesParams const_params(int dim, int N, double V, double V0) {
    return StokesParams(TorusGrid(dim, N), Coefficient::constant(V),
                        Coefficient::constant(V0));
}

StokesParams bump_params(int dim, int N, double V) {
    return StokesParams(TorusGrid(dim, N), Coefficient::constant(V),
                        Coefficient::bump(1.0, 1.5 * M_PI, 0.35 * M_PI, 8));
}

double field_max(const SpectralField& f) {
    double m = 0.0;
    for (const cd& v : f.raw()) m = std::max(m, std::abs(v));
    return m;
}

GammaDensity random_gamma_density(const StokesParams& p, int bw, std::mt19937_64& rng) {
    GammaDensity h(p.grid, p.grid.dim());
    h.comp[0] = random_density(p.grid, p.grid.dim(), bw, rng);
    h.comp[1] = random_density(p.grid, p.grid.dim(), bw, rng);
    return h;
}

double density_max(const BoundaryDensity& d) {
    double m = 0.0;
    for (const cd& v : d.coef) m = std::max(m, std::abs(v));
    return m;
}

} // namespace

TEST_CASE("kernel classification across the four coefficient cases") {
    struct Case {
        StokesParams p;
        int dim;
    };
    std::vector<Case> cases;
    cases.push_back({const_params(2, 16, 0.0, 0.0), 3});
    cases.push_back({const_params(2, 16, 0.0, 1.0), 2});
    cases.push_back({const_params(2, 16, 1.0, 0.0), 1});
    cases.push_back({const_params(2, 16, 1.0, 1.0), 0});
    cases.push_back({bump_params(2, 16, 0.0), 2});  // V=0, V0 bump
    cases.push_back({bump_params(2, 16, 1.0), 0});
    cases.push_back({const_params(3, 16, 0.0, 0.0), 4});

    for (const auto& c : cases) {
        KernelSpace ks = kernel_basis(c.p);
        CHECK(ks.dim() == c.dim);
        for (const auto& b : ks.basis) {
            SpectralField xb = ops::apply_xi(c.p, b);
            CHECK(field_max(xb) < 1e-8);
        }
    }

    StokesParams tiny(TorusGrid(2, 16), Coefficient::constant(1e-12),
                      Coefficient::constant(0.0));
    CHECK_THROWS_AS(tiny.classify(), ClassificationError);
}

TEST_CASE("pseudo inverse: defining relations and both routes") {
    std::mt19937_64 rng(31);
    // bump profiles resolve on N >= 64 (their k = 32 coefficient is ~1e-12)
    std::vector<StokesParams> cases{const_params(2, 16, 0.0, 0.0),
                                    const_params(2, 16, 1.0, 0.0), bump_params(2, 64, 0.0),
                                    const_params(2, 16, 1.0, 1.0)};
    for (const auto& p : cases) {
        KernelSpace ks = kernel_basis(p);
        for (int trial = 0; trial < 5; ++trial) {
            SpectralField F = random_band_limited(p.grid, 3, 5, rng);
            SpectralField Fp = ks.remove(F);
            // Xi Xi^(-1) F = F - p_N F
            SpectralField G = pseudo_inverse_apply(p, Fp);
            SpectralField XG = ops::apply_xi(p, G);
            SpectralField diff = XG;
            diff -= Fp;
            CHECK(field_max(diff) < 1e-8 * (1.0 + field_max(Fp)));
            // Xi^(-1) Xi G' = G' for G' orthogonal to the kernel
            SpectralField Gp = ks.remove(random_band_limited(p.grid, 3, 5, rng));
            SpectralField back = pseudo_inverse_apply(p, ops::apply_xi(p, Gp));
            SpectralField d2 = back;
            d2 -= Gp;
            CHECK(field_max(d2) < 1e-8 * (1.0 + field_max(Gp)));
            // output orthogonal to the kernel
            CHECK(field_max(ks.project(G)) < 1e-10);
        }
    }

    // zero maps to zero
    StokesParams p = const_params(2, 16, 1.0, 1.0);
    SpectralField z = make_vp<SpectralTag>(p.grid);
    CHECK(field_max(pseudo_inverse_apply(p, z)) == 0.0);

    // constant-coefficient route vs dense route on a 16^2 grid
    std::vector<StokesParams> both{const_params(2, 16, 1.0, 1.0), const_params(2, 16, 1.0, 0.0)};
    for (const auto& prm : both) {
        SpectralField F =
            kernel_basis(prm).remove(random_band_limited(prm.grid, 3, 5, rng));
        SpectralField a = pseudo_inverse_apply(prm, F);
        // force the dense route through an equivalent variable wrapper
        StokesParams densified(prm.grid, prm.V,
                               Coefficient::bump(0.0, 1.5 * M_PI, 0.4 * M_PI),
                               prm.strip_height);
        // bump amplitude zero is still "constant"; instead solve densely by
        // constructing the strip operator directly
        TorusGrid tg(1, prm.grid.npts());
        SpectralField b = make_vp<SpectralTag>(prm.grid);
        for (std::size_t t = 0; t < tg.total(); ++t) {
            StripOperator1D op(prm, transverse_xi(tg, t), prm.grid.npts());
            int N = prm.grid.npts();
            std::vector<cd> rhs(3 * N);
            for (int bin = 0; bin < N; ++bin) {
                std::array<int, 3> fb{static_cast<int>(tg.bins(t)[0]), bin, 0};
                std::size_t idx = prm.grid.flat(fb);
                for (int c = 0; c < 3; ++c) rhs[c * N + bin] = F.at(c, idx);
            }
            auto sol = op.solve(rhs);
            for (int bin = 0; bin < N; ++bin) {
                std::array<int, 3> fb{static_cast<int>(tg.bins(t)[0]), bin, 0};
                std::size_t idx = prm.grid.flat(fb);
                for (int c = 0; c < 3; ++c) b.at(c, idx) = sol[c * N + bin];
            }
        }
        b = kernel_basis(prm).remove(b);
        SpectralField d = a;
        d -= b;
        CHECK(field_max(d) < 1e-8 * (1.0 + field_max(a)));
    }
}

TEST_CASE("embed_density: constant density, pairing, Sobolev growth") {
    StokesParams p = const_params(2, 32, 1.0, 1.0);
    BoundaryDensity h = BoundaryDensity::for_ambient(p.grid, 2);
    h.at(0, 0) = 2.0;
    h.at(1, 0) = -1.0;
    SpectralField e = embed_density(p, h, 0);
    for (std::size_t idx = 0; idx < p.grid.total(); ++idx) {
        auto m = p.grid.modes(idx);
        bool live = m[0] == 0 && m[1] != -p.grid.npts() / 2; // Nyquist rows excluded
        cd want0 = live ? cd{2.0 / kTwoPi, 0.0} : cd{0.0, 0.0};
        cd want1 = live ? cd{-1.0 / kTwoPi, 0.0} : cd{0.0, 0.0};
        CHECK(std::abs(e.at(0, idx) - want0) < 1e-14);
        CHECK(std::abs(e.at(1, idx) - want1) < 1e-14);
        CHECK(std::abs(e.at(2, idx)) == 0.0);
    }

    // <h delta, phi> = int_Gamma h . conj(phi) dS for band-limited phi
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 20; ++trial) {
        BoundaryDensity hh = random_density(p.grid, 2, 6, rng);
        int comp = trial % 2;
        SpectralField emb = embed_density(p, hh, comp);
        SpectralField phi = random_band_limited(p.grid, 3, 7, rng);
        cd lhs = ops::strip_inner(emb, phi, kTwoPi); // whole-torus pairing
        SpectralField phiu(p.grid, 2);
        for (int i = 0; i < 2; ++i)
            for (std::size_t idx = 0; idx < p.grid.total(); ++idx)
                phiu.at(i, idx) = phi.at(i, idx);
        BoundaryDensity phis = slice_coeffs(phiu, p.component(comp).height);
        cd rhs = ops::boundary_inner(hh, phis, 2);
        CHECK(std::abs(lhs - rhs) < 1e-12 * (1.0 + std::abs(rhs)));
    }

    // ||h delta||_{H^{s'}} grows as s' increases toward -1/2
    BoundaryDensity rough = random_density(p.grid, 2, 15, rng);
    SpectralField emb = embed_density(p, rough, 0);
    double n1 = sobolev_norm(emb, -0.51);
    double n2 = sobolev_norm(emb, -0.505);
    double n3 = sobolev_norm(emb, -0.501);
    CHECK(std::isfinite(n1));
    CHECK(n2 > n1);
    CHECK(n3 > n2);
}

TEST_CASE("single layer: grid field matches the pseudo-inverse of the embedding") {
    std::mt19937_64 rng(21);
    for (auto prm : {const_params(2, 32, 1.0, 1.0), const_params(2, 32, 1.0, 0.0)}) {
        auto assembly = make_assembly(prm);
        GammaDensity h = random_gamma_density(prm, 6, rng);
        LayerPotential sl = layer_potential(assembly, nullptr, LayerKind::single, h);
        SpectralField direct = sl.grid_field();

        SpectralField rhs = embed_density(prm, h.comp[0], 0);
        rhs += embed_density(prm, h.comp[1], 1);
        SpectralField via = pseudo_inverse_apply(prm, rhs);
        SpectralField diff = direct;
        diff -= via;
        CHECK(field_max(diff) < 1e-10 * (1.0 + field_max(via)));

        // Xi o single layer reproduces the embedded density (minus kernel)
        SpectralField back = ops::apply_xi(prm, direct);
        SpectralField want = kernel_basis(prm).remove(rhs);
        SpectralField d2 = back;
        d2 -= want;
        CHECK(field_max(d2) < 1e-10 * (1.0 + field_max(want)));
    }
}

TEST_CASE("double layer: pressure-mean defect matches the kernel projection") {
    // V = 1, V0 = 0: kernel = constant pressures; Xi D(h) = T~* (h delta)
    // - (0, (1/vol M) int_Gamma h . nu dS)
    StokesParams prm = const_params(2, 32, 1.0, 0.0);
    std::mt19937_64 rng(3);
    auto assembly = make_assembly(prm);
    GammaDensity h = random_gamma_density(prm, 5, rng);
    LayerPotential dl = layer_potential(assembly, nullptr, LayerKind::dbl, h);
    SpectralField xd = ops::apply_xi(prm, dl.grid_field());

    // T~*(h delta) in truncated coefficients
    SpectralField rhs = make_vp<SpectralTag>(prm.grid);
    TorusGrid tg(1, prm.grid.npts());
    for (std::size_t t = 0; t < tg.total(); ++t) {
        ModeContext ctx(1.0, 0.0, transverse_xi(tg, t));
        for (int c = 0; c < 2; ++c) {
            auto nu = normal_of(prm, c);
            double ch = prm.component(c).height;
            for (int bin = 0; bin < prm.grid.npts(); ++bin) {
                double k = static_cast<double>(prm.grid.signed_mode(bin));
                if (static_cast<int>(k) == -prm.grid.npts() / 2 ||
                    tg.modes(t)[0] == -prm.grid.npts() / 2)
                    continue; // grid fields exclude unpaired Nyquist modes
                Matrix f = ctx.conormal_adjoint_factor(k, nu);
                cd phase = std::exp(cd{0.0, -ch * k}) / kTwoPi;
                std::array<int, 3> fb{static_cast<int>(tg.bins(t)[0]), bin, 0};
                std::size_t idx = prm.grid.flat(fb);
                for (int i = 0; i < 3; ++i) {
                    cd acc{0.0, 0.0};
                    for (int j = 0; j < 2; ++j) acc += f(i, j) * h.comp[c].at(j, t);
                    rhs.at(i, idx) += phase * acc;
                }
            }
        }
    }
    // defect = (1/vol M) int_Gamma h . nu dS = (2 pi)^{-1} sum_c sign_c hhat_{c,n-1}(0)
    cd defect = (h.comp[0].at(1, 0) * (-1.0) + h.comp[1].at(1, 0) * (+1.0)) / kTwoPi;
    SpectralField want = rhs;
    want.at(2, 0) -= defect;
    SpectralField diff = xd;
    diff -= want;
    CHECK(field_max(diff) < 1e-10 * (1.0 + field_max(want)));
}

TEST_CASE("jump relations are exact for the assembled traces") {
    std::mt19937_64 rng(17);
    for (auto prm : {const_params(2, 32, 1.0, 1.0), const_params(3, 16, 1.0, 1.0),
                     bump_params(2, 32, 1.0)}) {
        const int n = prm.grid.dim();
        auto assembly = make_assembly(prm);
        auto corrector = make_corrector(prm, assembly);
        GammaDensity h = random_gamma_density(prm, 4, rng);

        LayerPotential dl = layer_potential(assembly, corrector, LayerKind::dbl, h);
        LayerPotential sl = layer_potential(assembly, corrector, LayerKind::single, h);
        double g_edge = 1.0 / (2.0 * prm.V0(0.0) + 1.0); // V0 vanishes at Gamma for bumps

        for (int b = 0; b < 2; ++b) {
            BoundaryDensity wp = dl.trace(b, TraceSide::from_omega);
            BoundaryDensity wm = dl.trace(b, TraceSide::from_complement);
            BoundaryDensity vp = sl.trace(b, TraceSide::from_omega);
            BoundaryDensity vm = sl.trace(b, TraceSide::from_complement);
            BoundaryDensity tp = sl.conormal_trace(b, TraceSide::from_omega);
            BoundaryDensity tm = sl.conormal_trace(b, TraceSide::from_complement);
            double sgn = static_cast<double>(prm.component(b).normal_sign);

            double scale = 1.0 + density_max(h.comp[b]);
            for (std::size_t t = 0; t < wp.modes(); ++t) {
                for (int j = 0; j < n; ++j) {
                    // [W]+ - [W]- = h
                    CHECK(std::abs((wp.at(j, t) - wm.at(j, t)) - h.comp[b].at(j, t)) <
                          1e-10 * scale);
                    // [V]+ = [V]-
                    CHECK(std::abs(vp.at(j, t) - vm.at(j, t)) < 1e-10 * scale);
                    // [T_nu S]+ - [T_nu S]- = -h
                    CHECK(std::abs((tp.at(j, t) - tm.at(j, t)) + h.comp[b].at(j, t)) <
                          1e-10 * scale);
                }
                // pressure jump of the single layer: -g (nu . h)
                cd pj = vp.at(n, t) - vm.at(n, t);
                cd want = -g_edge * sgn * h.comp[b].at(n - 1, t);
                CHECK(std::abs(pj - want) < 1e-10 * scale);
            }
        }
    }
}

TEST_CASE("assembled boundary operators reproduce the one-sided traces") {
    std::mt19937_64 rng(23);
    StokesParams prm = const_params(2, 32, 1.0, 1.0);
    auto assembly = make_assembly(prm);
    GammaDensity h = random_gamma_density(prm, 5, rng);

    auto K = assemble_boundary_operator(prm, BoundaryOp::K, assembly, nullptr);
    auto S = assemble_boundary_operator(prm, BoundaryOp::S, assembly, nullptr);
    auto Ks = assemble_boundary_operator(prm, BoundaryOp::Kstar, assembly, nullptr);

    LayerPotential dl = layer_potential(assembly, nullptr, LayerKind::dbl, h);
    LayerPotential sl = layer_potential(assembly, nullptr, LayerKind::single, h);

    GammaDensity Kh = K.apply(h);
    GammaDensity Sh = S.apply(h);
    GammaDensity Ksh = Ks.apply(h);

    for (int b = 0; b < 2; ++b) {
        BoundaryDensity wp = dl.trace(b, TraceSide::from_omega);
        BoundaryDensity vp = sl.trace(b, TraceSide::from_omega);
        BoundaryDensity tp = sl.conormal_trace(b, TraceSide::from_omega);
        for (std::size_t t = 0; t < wp.modes(); ++t)
            for (int j = 0; j < 2; ++j) {
                cd wantW = 0.5 * h.comp[b].at(j, t) + Kh.comp[b].at(j, t);
                CHECK(std::abs(wp.at(j, t) - wantW) < 1e-10);
                CHECK(std::abs(vp.at(j, t) - Sh.comp[b].at(j, t)) < 1e-10);
                cd wantT = -0.5 * h.comp[b].at(j, t) + Ksh.comp[b].at(j, t);
                CHECK(std::abs(tp.at(j, t) - wantT) < 1e-10);
            }
    }
}

TEST_CASE("adjoint structure: K* = (K)^*, S = S*, J(P*) = J(P)^*") {
    for (auto prm : {const_params(2, 32, 1.0, 1.0), const_params(2, 32, 1.0, 0.0)}) {
        auto assembly = make_assembly(prm);
        auto K = assemble_boundary_operator(prm, BoundaryOp::K, assembly, nullptr);
        auto Ks = assemble_boundary_operator(prm, BoundaryOp::Kstar, assembly, nullptr);
        CHECK(K.adjoint().max_block_distance(Ks) < 1e-8);

        auto S = assemble_boundary_operator(prm, BoundaryOp::S, assembly, nullptr);
        CHECK(S.adjoint().max_block_distance(S) < 1e-8);

        // jump coefficients: J(P based on trac_single) = conj of J(double)
        const ModeAssembly& ma = assembly->mode(3);
        Matrix jd = ma.dbl[0].jump();
        Matrix jt = ma.trac_single[0].jump();
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j)
                CHECK(std::abs(jt(i, j) - std::conj(jd(j, i))) < 1e-11);
    }
}

TEST_CASE("no jump for the conormal of the double layer (operator level)") {
    for (auto prm : {const_params(2, 32, 1.0, 1.0), bump_params(2, 32, 1.0)}) {
        auto assembly = make_assembly(prm);
        auto corrector = make_corrector(prm, assembly);
        auto tdp = assemble_traction_double(prm, TraceSide::from_omega, assembly, corrector);
        auto tdm = assemble_traction_double(prm, TraceSide::from_complement, assembly,
                                            corrector);
        CHECK(tdp.max_block_distance(tdm) < 1e-9);
    }
}

TEST_CASE("boundary operator blocks approach their principal symbols") {
    // transverse modes up to 2k = 32 are needed, so run on the N = 128 grid
    // (assembly is lazy per mode, only the touched blocks are built)
    StokesParams prm = const_params(2, 128, 1.0, 1.0);
    auto assembly = make_assembly(prm);
    auto K = assemble_boundary_operator(prm, BoundaryOp::K, assembly, nullptr);
    auto S = assemble_boundary_operator(prm, BoundaryOp::S, assembly, nullptr);
    auto C0 = assemble_boundary_operator(prm, BoundaryOp::C0, assembly, nullptr);
    symbols::StokesSymbolParams sp{0.0, 1.0};

    auto dev = [&](int k) {
        std::vector<double> xiP{static_cast<double>(k), 0.0};
        std::vector<double> xiPn{static_cast<double>(k)};
        std::size_t t = assembly->tgrid().flat({assembly->tgrid().bin_of(k), 0, 0});
        double dK = 0.0, dS = 0.0, dC = 0.0;
        for (int b = 0; b < 2; ++b) {
            std::vector<double> nu{0.0, static_cast<double>(prm.component(b).normal_sign)};
            Matrix k0 = symbols::sigma0_K(sp, nu, xiP);
            Matrix s0 = symbols::sigma_m1_S(sp, nu, xiP);
            Matrix c0 = symbols::sigma0_C0(sp, nu, xiP);
            for (int i = 0; i < 2; ++i)
                for (int j = 0; j < 2; ++j) {
                    dK = std::max(dK, std::abs(K.block(t)(b * 2 + i, b * 2 + j) - k0(i, j)));
                    dS = std::max(dS, std::abs(S.block(t)(b * 2 + i, b * 2 + j) - s0(i, j)));
                }
            for (int j = 0; j < 2; ++j)
                dC = std::max(dC, std::abs(C0.block(t)(b, b * 2 + j) - c0(0, j)));
        }
        return std::array<double, 3>{dK, dS, dC};
    };

    for (int k : {4, 8, 16}) {
        auto d1 = dev(k);
        auto d2 = dev(2 * k);
        for (int q = 0; q < 3; ++q) CHECK(d2[q] <= 0.75 * d1[q] + 1e-13);
    }

    // K eigenvalues at |xi'| = 16 within O(1/16) of +-1/6
    std::size_t t16 = assembly->tgrid().flat({assembly->tgrid().bin_of(16), 0, 0});
    Matrix kb(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) kb(i, j) = K.block(t16)(i, j); // Gamma_0 diagonal block
    auto ev = la::hermitian_eigenvalues(kb);
    CHECK(std::abs(ev.front() + 1.0 / 6.0) < 0.5 / 16.0);
    CHECK(std::abs(ev.back() - 1.0 / 6.0) < 0.5 / 16.0);
}

TEST_CASE("K decays like an order -1 operator when V0 = 0") {
    StokesParams prm = const_params(2, 128, 1.0, 0.0);
    auto assembly = make_assembly(prm);
    auto K = assemble_boundary_operator(prm, BoundaryOp::K, assembly, nullptr);
    auto norm_at = [&](int k) {
        std::size_t t = assembly->tgrid().flat({assembly->tgrid().bin_of(k), 0, 0});
        Matrix b(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) b(i, j) = K.block(t)(i, j);
        return b.frob_norm();
    };
    for (int k : {4, 8, 16}) CHECK(norm_at(2 * k) <= 0.75 * norm_at(k));
}

TEST_CASE("dual route: truncated symmetrized mode sums agree with the assembly") {
    StokesParams prm = const_params(2, 32, 1.0, 1.0);
    auto assembly = make_assembly(prm);
    auto K = assemble_boundary_operator(prm, BoundaryOp::K, assembly, nullptr);

    // diagonal block at xi' = 3 via a plain symmetrized sum with tail fit
    std::vector<double> xiP{3.0};
    ModeContext ctx(1.0, 1.0, xiP);
    std::vector<double> nu0{0.0, -1.0};
    auto term = [&](long k) {
        Matrix full = (k == 0 && !ctx.zero_mode_regular())
                          ? ctx.double_potential_zero(nu0)
                          : ctx.double_potential(static_cast<double>(k), nu0);
        Matrix vel(2, 2);
        for (int i = 0; i < 2; ++i)
            for (int j = 0; j < 2; ++j) vel(i, j) = full(i, j);
        return vel;
    };
    auto ms = mode_sum<Matrix>(term, 8 * 32, true);
    std::size_t t3 = assembly->tgrid().flat({assembly->tgrid().bin_of(3), 0, 0});
    Matrix got(2, 2);
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) got(i, j) = K.block(t3)(i, j);
    Matrix want = (1.0 / kTwoPi) * ms.value;
    CHECK((got - want).max_abs() < (ms.tail_bound + 1e-9) / kTwoPi);
}

TEST_CASE("boundary operator serialization round trip") {
    StokesParams prm = const_params(2, 16, 1.0, 1.0);
    auto assembly = make_assembly(prm);
    auto S = assemble_boundary_operator(prm, BoundaryOp::S, assembly, nullptr);
    std::stringstream ss;
    S.serialize(ss);
    auto back = BoundaryOperatorMatrix::deserialize(ss);
    CHECK(S.max_block_distance(back) < 1e-15);
}

TEST_CASE("pompeiu representation formula") {
    // bump supported in the complement: every term vanishes on the strip
    {
        StokesParams prm = const_params(2, 64, 1.0, 1.0);
        SpectralField U = make_vp<SpectralTag>(prm.grid);
        Coefficient bump = Coefficient::bump(1.0, 1.5 * M_PI, 0.35 * M_PI, 8);
        GridField uv(prm.grid, 3);
        for (std::size_t idx = 0; idx < prm.grid.total(); ++idx) {
            auto x = prm.grid.point(idx);
            uv.at(0, idx) = bump(x[1]) * std::cos(x[0]);
            uv.at(1, idx) = bump(x[1]);
            uv.at(2, idx) = bump(x[1]) * std::sin(2.0 * x[0]);
        }
        U = fft::forward(uv);
        CHECK(pompeiu_residual(prm, U) < 1e-6);
    }

    // kernel field (V = V0 = 0): the identity reduces to the projection term
    {
        StokesParams prm = const_params(2, 32, 0.0, 0.0);
        SpectralField U = make_vp<SpectralTag>(prm.grid);
        U.at(0, 0) = 1.0;
        U.at(1, 0) = -0.7;
        U.at(2, 0) = 0.3;
        CHECK(pompeiu_residual(prm, U) < 1e-8);
    }

    // random band-limited fields at two resolutions
    {
        std::mt19937_64 rng(71);
        StokesParams p64 = const_params(2, 64, 1.0, 1.0);
        SpectralField U = random_band_limited(p64.grid, 3, 8, rng);
        double r64 = pompeiu_residual(p64, U);
        CHECK(r64 < 1e-4);
        StokesParams p128 = const_params(2, 128, 1.0, 1.0);
        SpectralField U2 = make_vp<SpectralTag>(p128.grid);
        for (int c = 0; c < 3; ++c)
            for (int k1 = -8; k1 <= 8; ++k1)
                for (int k2 = -8; k2 <= 8; ++k2)
                    U2.at(c, p128.grid.flat({p128.grid.bin_of(k1), p128.grid.bin_of(k2), 0})) =
                        U.at(c, p64.grid.flat({p64.grid.bin_of(k1), p64.grid.bin_of(k2), 0}));
        CHECK(pompeiu_residual(p128, U2) < 1e-5);
    }
}

TEST_CASE("pseudoinverse relations across the four coefficient cases, 20 draws") {
    std::mt19937_64 rng(81);
    std::vector<StokesParams> cases{const_params(2, 16, 0.0, 0.0),
                                    const_params(2, 16, 1.0, 0.0),
                                    const_params(2, 16, 1.0, 1.0)};
    for (const auto& p : cases) {
        KernelSpace ks = kernel_basis(p);
        for (int trial = 0; trial < 20; ++trial) {
            SpectralField F = ks.remove(random_band_limited(p.grid, 3, 5, rng));
            SpectralField G = pseudo_inverse_apply(p, F);
            SpectralField XG = ops::apply_xi(p, G);
            XG -= F;
            CHECK(field_max(XG) < 1e-8 * (1.0 + field_max(F)));
        }
    }
}
