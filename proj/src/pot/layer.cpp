#include "stokeslp/pot/layer.hpp"

#include "stokeslp/core/fft.hpp"

namespace stokeslp::pot {

namespace {

double wrap_2pi(double t) {
    double w = std::fmod(t, kTwoPi);
    if (w < 0.0) w += kTwoPi;
    return w;
}

// the unpaired -N/2 modes are excluded from grid representations (matching
// the derivative convention, which zeroes them to keep real fields real)
bool has_nyquist(const TorusGrid& g, std::size_t idx) {
    auto m = g.modes(idx);
    for (int d = 0; d < g.dim(); ++d)
        if (m[d] == -g.npts() / 2) return true;
    return false;
}

} // namespace

// ------------------------------------------------------- ConstantAssembly --

ConstantAssembly::ConstantAssembly(const StokesParams& params)
    : params_(params), tgrid_(params.grid.dim() - 1, params.grid.npts()) {}

StokesParams ConstantAssembly::const_params() const {
    return StokesParams(params_.grid, Coefficient::constant(params_.V.constant_value()),
                        Coefficient::constant(params_.V0.constant_value()),
                        params_.strip_height);
}

const ModeAssembly& ConstantAssembly::mode(std::size_t tIdx) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(tIdx);
        if (it != cache_.end()) return *it->second;
    }
    auto xiP = transverse_xi(tgrid_, tIdx);
    auto built = std::make_shared<ModeAssembly>(build_mode_assembly(const_params(), xiP));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache_.emplace(tIdx, built);
    return *it->second;
}

// ------------------------------------------------------ VariableCorrector --

VariableCorrector::VariableCorrector(const StokesParams& params,
                                     std::shared_ptr<ConstantAssembly> base)
    : params_(params), base_(std::move(base)) {
    active_ = !params.V0.is_constant() || !params.V.is_constant();
    // the correction must resolve the product of the profile with the
    // constant-coefficient pressure; that bandwidth is set by the geometry
    // of the profile, not by the grid
    K_ = std::max(params.grid.npts(), 128);
}

const StripOperator1D& VariableCorrector::op(std::size_t tIdx) const {
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = ops_.find(tIdx);
        if (it != ops_.end()) return *it->second;
    }
    auto xiP = transverse_xi(base_->tgrid(), tIdx);
    auto built = std::make_shared<StripOperator1D>(params_, xiP, K_);
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = ops_.emplace(tIdx, built);
    return *it->second;
}

std::vector<cd> VariableCorrector::build_unit(std::size_t tIdx, int kind, int source_comp,
                                              int j, const ModeAssembly& ma) const {
    const int n = params_.grid.dim();
    const double V0c = params_.V0.constant_value();
    const double Vc = params_.V.constant_value();
    const double ch = params_.component(source_comp).height;
    const int K = K_;
    std::vector<cd> rhs(static_cast<std::size_t>(n + 1) * K, cd{0.0, 0.0});

    // pressure right-hand side v(x) * p_const(x) on the x_n grid; v vanishes
    // near the source slices so the constant-part evaluation never sits on
    // the singular offset
    const rational::MatrixDecomp& dec =
        kind == 0 ? ma.single : ma.dbl[source_comp]; // (n+1) x n
    const rational::ScalarDecomp& pressure_entry = dec.entries[n * n + j];
    std::vector<cd> pv(K, cd{0.0, 0.0});
    bool any = false;
    for (int gp = 0; gp < K; ++gp) {
        double x = kTwoPi * gp / K;
        double v = params_.V0(x) - V0c;
        if (v == 0.0) continue;
        double t = wrap_2pi(x - ch);
        pv[gp] = v * pressure_entry.value(t) / kTwoPi;
        any = true;
    }
    if (any) {
        fft::transform(pv.data(), K, /*inverse=*/false);
        for (auto& z : pv) z /= static_cast<double>(K);
        for (int bin = 0; bin < K; ++bin) rhs[n * K + bin] = pv[bin];
    }

    // kernel-component zero modes of the reference operator pick up the
    // projected part of the true right-hand side
    double rho2 = 0.0;
    for (double v : transverse_xi(base_->tgrid(), tIdx)) rho2 += v * v;
    if (rho2 == 0.0) {
        if (Vc == 0.0 && kind == 0) rhs[j * K + 0] += 1.0 / kTwoPi;
        if (V0c == 0.0 && kind == 1 && j == n - 1)
            rhs[n * K + 0] +=
                static_cast<double>(params_.component(source_comp).normal_sign) / kTwoPi;
    }
    return op(tIdx).solve(rhs);
}

const std::vector<cd>& VariableCorrector::unit_correction(std::size_t tIdx, int kind,
                                                          int source_comp, int j,
                                                          const ModeAssembly& ma) const {
    const int n = params_.grid.dim();
    std::size_t key = ((tIdx * 2 + kind) * 2 + source_comp) * n + j;
    {
        std::lock_guard<std::mutex> lock(mu_);
        auto it = cache_.find(key);
        if (it != cache_.end()) return *it->second;
    }
    auto built = std::make_shared<std::vector<cd>>(build_unit(tIdx, kind, source_comp, j, ma));
    std::lock_guard<std::mutex> lock(mu_);
    auto [it, inserted] = cache_.emplace(key, built);
    return *it->second;
}

// ---------------------------------------------------------- LayerPotential --

std::shared_ptr<ConstantAssembly> make_assembly(const StokesParams& params) {
    return std::make_shared<ConstantAssembly>(params);
}

std::shared_ptr<VariableCorrector> make_corrector(const StokesParams& params,
                                                  std::shared_ptr<ConstantAssembly> base) {
    return std::make_shared<VariableCorrector>(params, std::move(base));
}

LayerPotential layer_potential(std::shared_ptr<ConstantAssembly> assembly,
                               std::shared_ptr<VariableCorrector> corrector, LayerKind kind,
                               const GammaDensity& h) {
    return LayerPotential(std::move(assembly), std::move(corrector), kind, h);
}

LayerPotential::LayerPotential(std::shared_ptr<ConstantAssembly> assembly,
                               std::shared_ptr<VariableCorrector> corrector, LayerKind kind,
                               GammaDensity density)
    : asm_(std::move(assembly)), corr_(std::move(corrector)), kind_(kind),
      h_(std::move(density)), n_(asm_->params().grid.dim()) {}

SpectralField embed_density(const StokesParams& params, const BoundaryDensity& h,
                            int component) {
    const TorusGrid& g = params.grid;
    const int n = g.dim();
    const double c = params.component(component).height;
    SpectralField out = make_vp<SpectralTag>(g);
    TorusGrid tg(n - 1, g.npts());
    for (std::size_t t = 0; t < tg.total(); ++t) {
        auto tb = tg.bins(t);
        std::array<int, 3> fb{0, 0, 0};
        for (int d = 0; d < n - 1; ++d) fb[d] = tb[d];
        for (int bin = 0; bin < g.npts(); ++bin) {
            fb[n - 1] = bin;
            std::size_t idx = g.flat(fb);
            if (has_nyquist(g, idx)) continue;
            cd phase = std::exp(cd{0.0, -c * g.signed_mode(bin)}) / kTwoPi;
            for (int j = 0; j < n; ++j) out.at(j, idx) = phase * h.at(j, t);
        }
    }
    return out;
}

SpectralField pseudo_inverse_apply(const StokesParams& params, const SpectralField& F) {
    const TorusGrid& g = params.grid;
    const int n = g.dim();
    if (F.grid() != g || F.comps() != n + 1)
        throw DimensionError("pseudo_inverse_apply: field shape mismatch");
    SpectralField out = make_vp<SpectralTag>(g);
    TorusGrid tg(n - 1, g.npts());
    const int N = g.npts();

    if (params.constant_coefficients()) {
        const double V = params.V.constant_value();
        const double V0 = params.V0.constant_value();
        for (std::size_t t = 0; t < tg.total(); ++t) {
            ModeContext ctx(V, V0, transverse_xi(tg, t));
            auto tb = tg.bins(t);
            std::array<int, 3> fb{0, 0, 0};
            for (int d = 0; d < n - 1; ++d) fb[d] = tb[d];
            for (int bin = 0; bin < N; ++bin) {
                fb[n - 1] = bin;
                std::size_t idx = g.flat(fb);
                double k = static_cast<double>(g.signed_mode(bin));
                la::Matrix inv = (k == 0.0 && !ctx.zero_mode_regular())
                                     ? ctx.pseudo_zero()
                                     : ctx.inverse_blocks(k);
                std::vector<cd> in(n + 1);
                for (int c = 0; c <= n; ++c) in[c] = F.at(c, idx);
                auto y = inv.apply(in);
                for (int c = 0; c <= n; ++c) out.at(c, idx) = y[c];
            }
        }
        return out;
    }

    // variable coefficients: dense per-transverse-mode solve
    for (std::size_t t = 0; t < tg.total(); ++t) {
        StripOperator1D op(params, transverse_xi(tg, t), N);
        std::vector<cd> rhs(static_cast<std::size_t>(n + 1) * N);
        auto tb = tg.bins(t);
        std::array<int, 3> fb{0, 0, 0};
        for (int d = 0; d < n - 1; ++d) fb[d] = tb[d];
        for (int bin = 0; bin < N; ++bin) {
            fb[n - 1] = bin;
            std::size_t idx = g.flat(fb);
            for (int c = 0; c <= n; ++c) rhs[c * N + bin] = F.at(c, idx);
        }
        auto sol = op.solve(rhs);
        for (int bin = 0; bin < N; ++bin) {
            fb[n - 1] = bin;
            std::size_t idx = g.flat(fb);
            for (int c = 0; c <= n; ++c) out.at(c, idx) = sol[c * N + bin];
        }
    }
    // output orthogonal to the kernel
    KernelSpace ks = kernel_basis(params);
    if (ks.dim() > 0) out = ks.remove(out);
    return out;
}

namespace {

// evaluate the (n+1) x n multiplier of the given kind at integer k,
// respecting the pseudo-inverted zero mode
la::Matrix mult_eval(const ModeAssembly& ma, const StokesParams& params, LayerKind kind,
                     int source_comp, double k) {
    auto nu = normal_of(params, source_comp);
    const bool zero = (k == 0.0) && !ma.ctx.zero_mode_regular();
    if (kind == LayerKind::single)
        return zero ? ma.ctx.single_potential_zero() : ma.ctx.single_potential(k);
    return zero ? ma.ctx.double_potential_zero(nu) : ma.ctx.double_potential(k, nu);
}

const rational::MatrixDecomp& potential_dec(const ModeAssembly& ma, LayerKind kind,
                                            int source_comp) {
    return kind == LayerKind::single ? ma.single : ma.dbl[source_comp];
}

} // namespace

std::vector<cd> LayerPotential::correction_coeffs(std::size_t tIdx) const {
    const int K = corr_ ? corr_->kmodes() : 0;
    std::vector<cd> out(static_cast<std::size_t>(n_ + 1) * K, cd{0.0, 0.0});
    if (!corr_ || !corr_->active()) return out;
    const ModeAssembly& ma = asm_->mode(tIdx);
    const int kind = kind_ == LayerKind::single ? 0 : 1;
    for (int c = 0; c < 2; ++c)
        for (int j = 0; j < n_; ++j) {
            cd w = h_.comp[c].at(j, tIdx);
            if (w == cd{0.0, 0.0}) continue;
            const std::vector<cd>& unit = corr_->unit_correction(tIdx, kind, c, j, ma);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += w * unit[i];
        }
    return out;
}

SpectralField LayerPotential::grid_field() const {
    const StokesParams& prm = asm_->params();
    const TorusGrid& g = prm.grid;
    const int N = g.npts();
    SpectralField out = make_vp<SpectralTag>(g);
    const TorusGrid& tg = asm_->tgrid();
    for (std::size_t t = 0; t < tg.total(); ++t) {
        const ModeAssembly& ma = asm_->mode(t);
        auto tb = tg.bins(t);
        std::array<int, 3> fb{0, 0, 0};
        for (int d = 0; d < n_ - 1; ++d) fb[d] = tb[d];

        std::vector<cd> corr = correction_coeffs(t);
        const int K = corr_ ? corr_->kmodes() : 0;

        for (int bin = 0; bin < N; ++bin) {
            fb[n_ - 1] = bin;
            std::size_t idx = g.flat(fb);
            if (has_nyquist(g, idx)) continue;
            double k = static_cast<double>(g.signed_mode(bin));
            for (int c = 0; c < 2; ++c) {
                double ch = prm.component(c).height;
                la::Matrix m = mult_eval(ma, prm, kind_, c, k);
                cd phase = std::exp(cd{0.0, -ch * k}) / kTwoPi;
                for (int i = 0; i <= n_; ++i) {
                    cd acc{0.0, 0.0};
                    for (int j = 0; j < n_; ++j) acc += m(i, j) * h_.comp[c].at(j, t);
                    out.at(i, idx) += phase * acc;
                }
            }
            if (K > 0) {
                int kk = g.signed_mode(bin);
                int cb = kk >= 0 ? kk : kk + K;
                for (int i = 0; i <= n_; ++i) out.at(i, idx) += corr[i * K + cb];
            }
        }
    }
    return out;
}

BoundaryDensity LayerPotential::slice(double xn) const {
    const StokesParams& prm = asm_->params();
    const TorusGrid& tg = asm_->tgrid();
    BoundaryDensity out(tg, n_ + 1);
    for (std::size_t t = 0; t < tg.total(); ++t) {
        const ModeAssembly& ma = asm_->mode(t);
        for (int c = 0; c < 2; ++c) {
            double off = wrap_2pi(xn - prm.component(c).height);
            la::Matrix m = potential_dec(ma, kind_, c).value(off);
            for (int i = 0; i <= n_; ++i) {
                cd acc{0.0, 0.0};
                for (int j = 0; j < n_; ++j) acc += m(i, j) * h_.comp[c].at(j, t);
                out.at(i, t) += acc / kTwoPi;
            }
        }
        if (corr_ && corr_->active()) {
            std::vector<cd> corr = correction_coeffs(t);
            const int K = corr_->kmodes();
            TorusGrid line(1, K);
            for (int bin = 0; bin < K; ++bin) {
                cd ph = std::exp(cd{0.0, xn * line.signed_mode(bin)});
                for (int i = 0; i <= n_; ++i) out.at(i, t) += corr[i * K + bin] * ph;
            }
        }
    }
    return out;
}

BoundaryDensity LayerPotential::trace(int component, TraceSide side) const {
    const StokesParams& prm = asm_->params();
    const TorusGrid& tg = asm_->tgrid();
    const double d = prm.component(component).height;
    BoundaryDensity out(tg, n_ + 1);
    for (std::size_t t = 0; t < tg.total(); ++t) {
        const ModeAssembly& ma = asm_->mode(t);
        for (int c = 0; c < 2; ++c) {
            const auto& dec = potential_dec(ma, kind_, c);
            la::Matrix m = (c == component)
                               ? dec.limit(lattice_side(component, side))
                               : dec.value(wrap_2pi(d - prm.component(c).height));
            for (int i = 0; i <= n_; ++i) {
                cd acc{0.0, 0.0};
                for (int j = 0; j < n_; ++j) acc += m(i, j) * h_.comp[c].at(j, t);
                out.at(i, t) += acc / kTwoPi;
            }
        }
        if (corr_ && corr_->active()) {
            std::vector<cd> corr = correction_coeffs(t);
            const int K = corr_->kmodes();
            TorusGrid line(1, K);
            for (int bin = 0; bin < K; ++bin) {
                cd ph = std::exp(cd{0.0, d * line.signed_mode(bin)});
                for (int i = 0; i <= n_; ++i) out.at(i, t) += corr[i * K + bin] * ph;
            }
        }
    }
    return out;
}

BoundaryDensity LayerPotential::traction_slice(int component, double xn) const {
    const StokesParams& prm = asm_->params();
    const TorusGrid& tg = asm_->tgrid();
    auto nu_b = normal_of(prm, component);
    BoundaryDensity out(tg, n_);
    for (std::size_t t = 0; t < tg.total(); ++t) {
        const ModeAssembly& ma = asm_->mode(t);
        for (int c = 0; c < 2; ++c) {
            const auto& dec = kind_ == LayerKind::single ? ma.trac_single[component]
                                                         : ma.trac_double[component][c];
            la::Matrix m = dec.value(wrap_2pi(xn - prm.component(c).height));
            for (int i = 0; i < n_; ++i) {
                cd acc{0.0, 0.0};
                for (int j = 0; j < n_; ++j) acc += m(i, j) * h_.comp[c].at(j, t);
                out.at(i, t) += acc / kTwoPi;
            }
        }
        if (corr_ && corr_->active()) {
            std::vector<cd> corr = correction_coeffs(t);
            const int K = corr_->kmodes();
            TorusGrid line(1, K);
            for (int bin = 0; bin < K; ++bin) {
                double k = static_cast<double>(line.signed_mode(bin));
                la::Matrix f = ma.ctx.traction_factor(k, nu_b);
                cd ph = std::exp(cd{0.0, xn * k});
                for (int i = 0; i < n_; ++i) {
                    cd acc{0.0, 0.0};
                    for (int j = 0; j <= n_; ++j) acc += f(i, j) * corr[j * K + bin];
                    out.at(i, t) += acc * ph;
                }
            }
        }
    }
    return out;
}

BoundaryDensity LayerPotential::conormal_trace(int component, TraceSide side) const {
    const StokesParams& prm = asm_->params();
    const TorusGrid& tg = asm_->tgrid();
    const double d = prm.component(component).height;
    auto nu_b = normal_of(prm, component);
    BoundaryDensity out(tg, n_);
    for (std::size_t t = 0; t < tg.total(); ++t) {
        const ModeAssembly& ma = asm_->mode(t);
        for (int c = 0; c < 2; ++c) {
            const auto& dec = kind_ == LayerKind::single ? ma.trac_single[component]
                                                         : ma.trac_double[component][c];
            la::Matrix m = (c == component)
                               ? dec.limit(lattice_side(component, side))
                               : dec.value(wrap_2pi(d - prm.component(c).height));
            for (int i = 0; i < n_; ++i) {
                cd acc{0.0, 0.0};
                for (int j = 0; j < n_; ++j) acc += m(i, j) * h_.comp[c].at(j, t);
                out.at(i, t) += acc / kTwoPi;
            }
        }
        if (corr_ && corr_->active()) {
            std::vector<cd> corr = correction_coeffs(t);
            const int K = corr_->kmodes();
            TorusGrid line(1, K);
            for (int bin = 0; bin < K; ++bin) {
                double k = static_cast<double>(line.signed_mode(bin));
                la::Matrix f = ma.ctx.traction_factor(k, nu_b);
                cd ph = std::exp(cd{0.0, d * k});
                for (int i = 0; i < n_; ++i) {
                    cd acc{0.0, 0.0};
                    for (int j = 0; j <= n_; ++j) acc += f(i, j) * corr[j * K + bin];
                    out.at(i, t) += acc * ph;
                }
            }
        }
    }
    return out;
}

} // namespace stokeslp::pot
