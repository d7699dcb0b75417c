#include "stokeslp/bvp/solver.hpp"

#include "stokeslp/core/fft.hpp"
#include "stokeslp/ops/diff.hpp"
#include "stokeslp/ops/strip.hpp"
#include "stokeslp/pot/ladder.hpp"

namespace stokeslp::bvp {

namespace {

// per-mode solve of (block) g = f with SVD fallback on (near-)singular
// blocks; one round of iterative refinement
GammaDensity block_solve(const BoundaryOperatorMatrix& op, const GammaDensity& f,
                         double* residual_out) {
    const TorusGrid& tg = op.tgrid();
    const int per = op.block_cols() / 2;
    GammaDensity g;
    for (int c = 0; c < 2; ++c) g.comp[c] = BoundaryDensity(tg, per);

    double res = 0.0;
    for (std::size_t t = 0; t < tg.total(); ++t) {
        const la::Matrix& m = op.block(t);
        std::vector<cd> rhs(op.block_rows());
        for (int c = 0; c < 2; ++c)
            for (int j = 0; j < per; ++j) rhs[c * per + j] = f.comp[c].at(j, t);

        la::Lu lu = la::lu_factor(m);
        std::vector<cd> x;
        bool svd_path = lu.singular;
        if (!svd_path) {
            x = la::lu_solve(lu, rhs);
            double xn = 0.0, rn = 0.0, bn = 0.0;
            auto chk = m.apply(x);
            for (std::size_t i = 0; i < chk.size(); ++i) {
                rn += std::norm(chk[i] - rhs[i]);
                bn += std::norm(rhs[i]);
            }
            for (const cd& v : x) xn += std::norm(v);
            if (!std::isfinite(xn) || rn > 1e-16 * (bn + 1e-300)) svd_path = true;
        }
        if (svd_path) {
            la::Svd sv = la::svd(m);
            double tol = 1e-10 * (sv.sigma.empty() ? 1.0 : sv.sigma.front());
            x.assign(m.cols(), cd{0.0, 0.0});
            for (int j = 0; j < m.cols(); ++j) {
                if (sv.sigma[j] <= tol) continue;
                cd ub{0.0, 0.0};
                for (int i = 0; i < m.rows(); ++i) ub += std::conj(sv.u(i, j)) * rhs[i];
                ub /= sv.sigma[j];
                for (int i = 0; i < m.cols(); ++i) x[i] += sv.v(i, j) * ub;
            }
        } else {
            // one step of iterative refinement
            auto r = m.apply(x);
            for (std::size_t i = 0; i < r.size(); ++i) r[i] = rhs[i] - r[i];
            auto dx = la::lu_solve(lu, r);
            for (std::size_t i = 0; i < x.size(); ++i) x[i] += dx[i];
        }
        auto check = m.apply(x);
        for (std::size_t i = 0; i < check.size(); ++i)
            res = std::max(res, std::abs(check[i] - rhs[i]));
        for (int c = 0; c < 2; ++c)
            for (int j = 0; j < per; ++j) g.comp[c].at(j, t) = x[c * per + j];
    }
    if (residual_out) *residual_out = res;
    return g;
}

// mean of the potential pressure over Omega, from exact interior slices
// (the grid-truncated mean would carry the slow single-layer pressure tail)
cd exact_pressure_mean(const LayerPotential& pot, const StokesParams& params) {
    const int n = params.grid.dim();
    const double L = params.strip_height;
    // composite 16-point Gauss on [0, L]; the pressure is smooth inside
    static const int npan = 4;
    cd acc{0.0, 0.0};
    for (int pan = 0; pan < npan; ++pan) {
        double a = L * pan / npan, b = L * (pan + 1) / npan;
        // 8-point Gauss-Legendre nodes on [-1, 1]
        static const double gx[8] = {-0.9602898564975363, -0.7966664774136267,
                                     -0.5255324099163290, -0.1834346424956498,
                                     0.1834346424956498,  0.5255324099163290,
                                     0.7966664774136267,  0.9602898564975363};
        static const double gw[8] = {0.1012285362903763, 0.2223810344533745,
                                     0.3137066458778873, 0.3626837833783620,
                                     0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};
        for (int q = 0; q < 8; ++q) {
            double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[q];
            acc += 0.5 * (b - a) * gw[q] * pot.slice(x).at(n, 0);
        }
    }
    return acc / L;
}

double density_sobolev(const GammaDensity& f, double s) {
    double acc = 0.0;
    for (int c = 0; c < 2; ++c) {
        const TorusGrid& tg = f.comp[c].tgrid;
        for (std::size_t t = 0; t < tg.total(); ++t) {
            auto m = tg.modes(t);
            double b = 1.0;
            for (int d = 0; d < tg.dim(); ++d) b += static_cast<double>(m[d]) * m[d];
            double wt = std::pow(b, s);
            for (int j = 0; j < f.comp[c].comps; ++j)
                acc += wt * std::norm(f.comp[c].at(j, t));
        }
    }
    return std::sqrt(acc);
}

// weak Xi-residual against smooth test functions supported strictly inside
// the strip: their coefficients decay fast enough to see only the genuine
// interior content of Xi U, not the boundary-supported right-hand side
double weak_interior_residual(const StokesParams& params, const SpectralField& field) {
    const TorusGrid& g = params.grid;
    const int n = g.dim();
    const double L = params.strip_height;
    SpectralField xiU = ops::apply_xi(params, field);
    GridField xv = fft::inverse(xiU);

    Coefficient window = Coefficient::bump(1.0, 0.5 * L, 0.3 * L, 8);
    double h = 1.0;
    for (int d = 0; d < n; ++d) h *= g.spacing();

    double worst = 0.0;
    for (int trial = 0; trial < 6; ++trial) {
        int comp = trial % (n + 1);
        int q = trial / (n + 1); // transverse oscillation of the test field
        cd pair{0.0, 0.0};
        double nrm = 0.0;
        for (std::size_t idx = 0; idx < g.total(); ++idx) {
            auto x = g.point(idx);
            double w = window(x[n - 1]);
            if (w == 0.0) continue;
            cd phi = w * std::exp(cd{0.0, q * x[0]});
            pair += xv.at(comp, idx) * std::conj(phi) * h;
            nrm += std::norm(phi) * h;
        }
        worst = std::max(worst, std::abs(pair) / std::sqrt(nrm));
    }
    return worst;
}

} // namespace

BoundaryDensity DirichletSolution::slice(double xn) const {
    BoundaryDensity s = potential->slice(xn);
    const int n = s.comps - 1;
    s.at(n, 0) -= pressure_gauge;
    return s;
}

BoundaryDensity DirichletSolution::conormal_from_omega(int component) const {
    BoundaryDensity t = potential->conormal_trace(component, TraceSide::from_omega);
    // gauging p -> p - c shifts T_nu U by -c nu
    const int n = t.comps;
    double sgn = static_cast<double>(params->component(component).normal_sign);
    t.at(n - 1, 0) -= pressure_gauge * sgn;
    return t;
}

BoundaryDensity DirichletSolution::traction_slice(int component, double xn) const {
    BoundaryDensity t = potential->traction_slice(component, xn);
    const int n = t.comps;
    double sgn = static_cast<double>(params->component(component).normal_sign);
    t.at(n - 1, 0) -= pressure_gauge * sgn;
    return t;
}

DirichletSolution solve_dirichlet(const DirichletProblem& problem, SolveRoute route,
                                  Workspace& ws) {
    const StokesParams& prm = ws.params;
    const int n = prm.grid.dim();
    DirichletSolution sol;
    sol.params = &ws.params;

    GammaDensity f = problem.f;
    const double fnorm = f.norm() + 1e-300;

    // compatibility (f, nu) = 0 whenever the constant pressure is in play
    GammaDensity nu = normal_density(prm);
    cd defect = gamma_inner(f, nu, n);
    sol.diag.compat_defect = std::abs(defect) / fnorm;
    if (prm.v0_zero_on_omega()) {
        if (sol.diag.compat_defect > 1e-10) {
            // project the datum onto {nu}^perp and record the warning
            GammaDensity corr = nu;
            corr *= defect / gamma_inner(nu, nu, n);
            f -= corr;
            sol.diag.compat_projected = true;
        }
    }

    BoundaryOperatorMatrix op;
    if (route == SolveRoute::double_layer) {
        op = assemble_boundary_operator(prm, BoundaryOp::K, ws.assembly, ws.corrector);
        op.shift_identity(cd{0.5, 0.0});
    } else {
        op = assemble_boundary_operator(prm, BoundaryOp::S, ws.assembly, ws.corrector);
    }
    sol.density = block_solve(op, f, &sol.diag.bie_residual);

    LayerKind kind = route == SolveRoute::double_layer ? LayerKind::dbl : LayerKind::single;
    sol.potential = std::make_shared<LayerPotential>(
        layer_potential(ws.assembly, ws.corrector, kind, sol.density));
    sol.field = sol.potential->grid_field();

    // pressure gauge: zero mean over Omega, from exact interior slices.
    // Only meaningful when the constant pressure is a gauge freedom (V0
    // vanishing on Omega); with V0 != 0 the solution is unique and the
    // constant pressure is not Xi-harmonic.
    if (problem.pressure_mean_zero && prm.v0_zero_on_omega()) {
        sol.pressure_gauge = exact_pressure_mean(*sol.potential, prm);
        sol.field.at(n, 0) -= sol.pressure_gauge;
    }

    // diagnostics
    double terr = 0.0;
    for (int b = 0; b < 2; ++b) {
        BoundaryDensity tr = sol.potential->trace(b, TraceSide::from_omega);
        for (std::size_t t = 0; t < tr.modes(); ++t)
            for (int j = 0; j < n; ++j)
                terr = std::max(terr, std::abs(tr.at(j, t) - f.comp[b].at(j, t)));
    }
    sol.diag.trace_error = terr / (1.0 + fnorm);

    std::vector<double> eps = trace_ladder(prm);
    std::vector<double> w = ladder_weights(eps);
    double terr2 = 0.0;
    for (int b = 0; b < 2; ++b) {
        double d = prm.component(b).height;
        double dir = b == 0 ? +1.0 : -1.0;
        BoundaryDensity ex(ws.assembly->tgrid(), n);
        for (std::size_t r = 0; r < eps.size(); ++r) {
            BoundaryDensity s = sol.potential->slice(d + dir * eps[r]);
            for (std::size_t t = 0; t < ex.modes(); ++t)
                for (int j = 0; j < n; ++j) ex.at(j, t) += w[r] * s.at(j, t);
        }
        for (std::size_t t = 0; t < ex.modes(); ++t)
            for (int j = 0; j < n; ++j)
                terr2 = std::max(terr2, std::abs(ex.at(j, t) - f.comp[b].at(j, t)));
    }
    sol.diag.trace_error_extrap = terr2 / (1.0 + fnorm);

    sol.diag.interior_residual = weak_interior_residual(prm, sol.field) / (1.0 + fnorm);

    // stability constants for m = 0, 1, 2, with H^s(Omega) norms evaluated
    // from exact interior slices (the global torus norm would diverge with N
    // because the potential is only H^{3/2-} across Gamma)
    {
        static const double gx[8] = {-0.9602898564975363, -0.7966664774136267,
                                     -0.5255324099163290, -0.1834346424956498,
                                     0.1834346424956498,  0.5255324099163290,
                                     0.7966664774136267,  0.9602898564975363};
        static const double gw[8] = {0.1012285362903763, 0.2223810344533745,
                                     0.3137066458778873, 0.3626837833783620,
                                     0.3626837833783620, 0.3137066458778873,
                                     0.2223810344533745, 0.1012285362903763};
        const double L = prm.strip_height;
        const double h = 1e-3;
        const int npan = 4;
        // accumulated squares: velN[j][s-j] style sums via anisotropic norm
        double usum[4][4] = {{0.0}}; // usum[j][r]: int ||<xi'>^r d_n^j u||^2
        double psum[3][3] = {{0.0}};
        for (int pan = 0; pan < npan; ++pan) {
            double a = L * pan / npan, b = L * (pan + 1) / npan;
            for (int q = 0; q < 8; ++q) {
                double x = 0.5 * (a + b) + 0.5 * (b - a) * gx[q];
                double wq = 0.5 * (b - a) * gw[q] * std::pow(kTwoPi, n - 1);
                // five-point stencil of exact slices for normal derivatives
                BoundaryDensity st[5] = {sol.slice(x - 2 * h), sol.slice(x - h), sol.slice(x),
                                         sol.slice(x + h), sol.slice(x + 2 * h)};
                const TorusGrid& tgr = st[2].tgrid;
                for (std::size_t t = 0; t < st[2].modes(); ++t) {
                    auto m = tgr.modes(t);
                    double br = 1.0;
                    for (int d = 0; d < tgr.dim(); ++d) br += static_cast<double>(m[d]) * m[d];
                    for (int c = 0; c <= n; ++c) {
                        cd v[5];
                        for (int s5 = 0; s5 < 5; ++s5) v[s5] = st[s5].at(c, t);
                        cd d0 = v[2];
                        cd d1 = (v[0] - 8.0 * v[1] + 8.0 * v[3] - v[4]) / (12.0 * h);
                        cd d2 = (-v[0] + 16.0 * v[1] - 30.0 * v[2] + 16.0 * v[3] - v[4]) /
                                (12.0 * h * h);
                        cd d3 = (-v[0] + 2.0 * v[1] - 2.0 * v[3] + v[4]) / (-2.0 * h * h * h);
                        cd ds[4] = {d0, d1, d2, d3};
                        for (int j = 0; j <= 3; ++j)
                            for (int r = 0; r + j <= 3; ++r) {
                                double term = wq * std::pow(br, r) * std::norm(ds[j]);
                                if (c < n)
                                    usum[j][r] += term;
                                else if (j <= 2 && r <= 2)
                                    psum[j][r] += term;
                            }
                    }
                }
            }
        }
        for (int m = 0; m <= 2; ++m) {
            double un = 0.0, pn = 0.0;
            for (int j = 0; j <= m + 1; ++j) un += usum[j][m + 1 - j];
            for (int j = 0; j <= m; ++j) pn += psum[j][m - j];
            double num = std::sqrt(un) + std::sqrt(pn);
            double den = density_sobolev(f, m + 0.5) + 1e-300;
            sol.diag.stability_constant[m] = num / den;
        }
    }
    return sol;
}

DtnResult dtn(const StokesParams& params, const GammaDensity& f, Workspace& ws) {
    const int n = params.grid.dim();
    DirichletProblem pb{params, f, /*pressure_mean_zero=*/true};
    DirichletSolution sol = solve_dirichlet(pb, SolveRoute::double_layer, ws);

    DtnResult out;
    out.neumann = GammaDensity(params.grid, n);
    GammaDensity ungauged(params.grid, n);
    for (int b = 0; b < 2; ++b) {
        out.neumann.comp[b] = sol.conormal_from_omega(b);
        ungauged.comp[b] = sol.potential->conormal_trace(b, TraceSide::from_omega);
    }

    auto S = assemble_boundary_operator(params, BoundaryOp::S, ws.assembly, ws.corrector);
    auto K = assemble_boundary_operator(params, BoundaryOp::K, ws.assembly, ws.corrector);
    GammaDensity lhs = S.apply(out.neumann);
    GammaDensity rhs = K.apply(f);
    GammaDensity mh = f;
    mh *= cd{-0.5, 0.0};
    rhs += mh;

    GammaDensity dif = lhs;
    dif -= rhs;
    out.identity_residual = dif.norm() / (1.0 + f.norm());

    GammaDensity lhs2 = S.apply(ungauged);
    GammaDensity dif2 = lhs2;
    dif2 -= rhs;
    out.identity_residual_ungauged = dif2.norm() / (1.0 + f.norm());

    // ladder-extrapolated Neumann trace feeds the resolution-dependent
    // version of the identity residual
    std::vector<double> eps = trace_ladder(params);
    std::vector<double> w = ladder_weights(eps);
    GammaDensity next(params.grid, n);
    for (int b = 0; b < 2; ++b) {
        double d = params.component(b).height;
        double dir = b == 0 ? +1.0 : -1.0;
        for (std::size_t r = 0; r < eps.size(); ++r) {
            BoundaryDensity s = sol.traction_slice(b, d + dir * eps[r]);
            for (std::size_t t = 0; t < next.comp[b].modes(); ++t)
                for (int j = 0; j < n; ++j) next.comp[b].at(j, t) += w[r] * s.at(j, t);
        }
    }
    GammaDensity lhs3 = S.apply(next);
    GammaDensity dif3 = lhs3;
    dif3 -= rhs;
    out.identity_residual_extrap = dif3.norm() / (1.0 + f.norm());
    return out;
}

NoJumpResult no_jump_check(const StokesParams& params, const GammaDensity& f, Workspace& ws) {
    const int n = params.grid.dim();
    NoJumpResult out;

    // the statement concerns the double layer of the datum itself
    LayerPotential dl = layer_potential(ws.assembly, ws.corrector, LayerKind::dbl, f);

    // operator-level jump of [T_nu D]
    auto tdp = assemble_traction_double(params, TraceSide::from_omega, ws.assembly,
                                        ws.corrector);
    auto tdm = assemble_traction_double(params, TraceSide::from_complement, ws.assembly,
                                        ws.corrector);
    out.jump_operator = tdp.max_block_distance(tdm);

    // ladder-extrapolated traces from both sides
    std::vector<double> eps = trace_ladder(params);
    std::vector<double> w = ladder_weights(eps);
    GammaDensity plus(params.grid, n), minus(params.grid, n);
    for (int b = 0; b < 2; ++b) {
        double d = params.component(b).height;
        for (int side = 0; side < 2; ++side) {
            double dir = (b == 0) == (side == 0) ? +1.0 : -1.0;
            GammaDensity& target = side == 0 ? plus : minus;
            for (std::size_t r = 0; r < eps.size(); ++r) {
                BoundaryDensity s = dl.traction_slice(b, d + dir * eps[r]);
                for (std::size_t t = 0; t < target.comp[b].modes(); ++t)
                    for (int j = 0; j < n; ++j) target.comp[b].at(j, t) += w[r] * s.at(j, t);
            }
        }
    }
    GammaDensity jd = plus;
    jd -= minus;
    out.jump = jd.norm() / (1.0 + f.norm());

    // equality with (1/2 + K*) N f
    DtnResult nf = dtn(params, f, ws);
    auto Ks = assemble_boundary_operator(params, BoundaryOp::Kstar, ws.assembly, ws.corrector);
    Ks.shift_identity(cd{0.5, 0.0});
    GammaDensity want = Ks.apply(nf.neumann);
    double eq = 0.0;
    for (int side = 0; side < 2; ++side) {
        GammaDensity& got = side == 0 ? plus : minus;
        // the gauge shift of N f also shifts T_nu D by nothing here: the
        // double layer of g carries its own pressure; compare the jump-free
        // average instead
        GammaDensity d = got;
        d -= want;
        eq = std::max(eq, d.norm() / (1.0 + f.norm()));
    }
    out.equality = eq;
    return out;
}

SpectrumReport operator_spectrum(const StokesParams& params, Workspace& ws) {
    const int n = params.grid.dim();
    SpectrumReport rep;

    auto K = assemble_boundary_operator(params, BoundaryOp::K, ws.assembly, ws.corrector);
    K.shift_identity(cd{0.5, 0.0});
    auto S = assemble_boundary_operator(params, BoundaryOp::S, ws.assembly, ws.corrector);

    const TorusGrid& tg = K.tgrid();
    double sminK = 1e300, smaxK = 0.0, sminS = 1e300;
    std::vector<double> s_smallest;
    int kerK = 0, kerKadj = 0, kerS = 0;
    double numin_corr = 0.0;
    double sminK_perp = 1e300;

    // nu direction in block coordinates at the transverse zero mode
    std::vector<cd> nuvec(2 * n, cd{0.0, 0.0});
    nuvec[0 * n + (n - 1)] = -1.0 / std::sqrt(2.0);
    nuvec[1 * n + (n - 1)] = +1.0 / std::sqrt(2.0);

    for (std::size_t t = 0; t < tg.total(); ++t) {
        la::Svd svK = la::svd(K.block(t));
        la::Svd svS = la::svd(S.block(t));
        smaxK = std::max(smaxK, svK.sigma.front());
        sminK = std::min(sminK, svK.sigma.back());
        sminS = std::min(sminS, svS.sigma.back());
        if (t == 0)
            for (double s : svS.sigma) s_smallest.push_back(s);
        for (double s : svK.sigma)
            if (s < 1e-6) ++kerK;
        // the adjoint operator has conjugate-transposed blocks, whose
        // singular values coincide; counting them separately keeps the
        // index-zero proxy explicit
        la::Svd svKa = la::svd(K.block(t).adjoint());
        for (double s : svKa.sigma)
            if (s < 1e-6) ++kerKadj;
        for (std::size_t j = 0; j < svS.sigma.size(); ++j) {
            if (svS.sigma[j] < 1e-6) {
                ++kerS;
                if (t == 0) {
                    cd corr{0.0, 0.0};
                    for (int i = 0; i < 2 * n; ++i)
                        corr += std::conj(svS.v(i, static_cast<int>(j))) * nuvec[i];
                    numin_corr = std::max(numin_corr, std::abs(corr));
                }
            }
        }
        if (t == 0) {
            // restriction of 1/2 + K to {nu}^perp: project out nu
            la::Matrix b = K.block(0);
            // build an orthonormal basis of nu^perp (2n-1 columns)
            la::Matrix q(2 * n, 2 * n - 1);
            int col = 0;
            for (int i = 0; i < 2 * n && col < 2 * n - 1; ++i) {
                std::vector<cd> e(2 * n, cd{0.0, 0.0});
                e[i] = 1.0;
                cd proj{0.0, 0.0};
                for (int l = 0; l < 2 * n; ++l) proj += std::conj(nuvec[l]) * e[l];
                for (int l = 0; l < 2 * n; ++l) e[l] -= proj * nuvec[l];
                // Gram-Schmidt against accepted columns
                for (int cc = 0; cc < col; ++cc) {
                    cd pr{0.0, 0.0};
                    for (int l = 0; l < 2 * n; ++l) pr += std::conj(q(l, cc)) * e[l];
                    for (int l = 0; l < 2 * n; ++l) e[l] -= pr * q(l, cc);
                }
                double nn = 0.0;
                for (const cd& v : e) nn += std::norm(v);
                if (nn < 1e-20) continue;
                for (int l = 0; l < 2 * n; ++l) q(l, col) = e[l] / std::sqrt(nn);
                ++col;
            }
            la::Matrix restricted = q.adjoint() * b * q;
            la::Svd svp = la::svd(restricted);
            sminK_perp = svp.sigma.back();
        }
    }
    std::sort(s_smallest.begin(), s_smallest.end());
    rep.kernel_dim_K = kerK;
    rep.kernel_dim_K_adj = kerKadj;
    rep.kernel_dim_S = kerS;
    rep.smin_K = sminK;
    rep.smin_K_perp = sminK_perp;
    rep.smin_S = sminS;
    rep.s_second_smallest = s_smallest.size() > 1 ? s_smallest[1] : 0.0;
    rep.nu_correlation = numin_corr;
    rep.cond_K = smaxK / std::max(sminK, 1e-300);
    return rep;
}

} // namespace stokeslp::bvp
