#include "stokeslp/pot/assembly.hpp"

#include "stokeslp/core/fft.hpp"

namespace stokeslp::pot {

ModeAssembly build_mode_assembly(const StokesParams& params, const std::vector<double>& xiP) {
    if (!params.V.is_constant())
        throw ArgumentError("constant-coefficient assembly requires constant V");
    const int n = params.grid.dim();
    ModeContext ctx(params.V.constant_value(), params.V0.constant_value(), xiP);
    const bool regular0 = ctx.zero_mode_regular();

    auto wrap_zero = [&](auto&& regular, auto&& pseudo) {
        return regular0 ? regular() : pseudo();
    };

    ModeAssembly out{ctx, {}, {}, {}, {}};
    auto poles = ctx.poles();
    double scale = ctx.node_scale();

    out.single = rational::decompose_matrix(
        [&](double k) { return ctx.single_potential(k); }, n + 1, n, poles,
        wrap_zero([&] { return ctx.single_potential(0.0); },
                  [&] { return ctx.single_potential_zero(); }),
        scale);

    for (int c = 0; c < 2; ++c) {
        auto nu_s = normal_of(params, c);
        out.dbl[c] = rational::decompose_matrix(
            [&](double k) { return ctx.double_potential(k, nu_s); }, n + 1, n, poles,
            wrap_zero([&] { return ctx.double_potential(0.0, nu_s); },
                      [&] { return ctx.double_potential_zero(nu_s); }),
            scale);
    }
    for (int b = 0; b < 2; ++b) {
        auto nu_b = normal_of(params, b);
        out.trac_single[b] = rational::decompose_matrix(
            [&](double k) { return ctx.traction_of_single(k, nu_b); }, n, n, poles,
            wrap_zero([&] { return ctx.traction_of_single(0.0, nu_b); },
                      [&] { return ctx.traction_of_single_zero(nu_b); }),
            scale);
        for (int c = 0; c < 2; ++c) {
            auto nu_s = normal_of(params, c);
            out.trac_double[b][c] = rational::decompose_matrix(
                [&](double k) { return ctx.traction_of_double(k, nu_b, nu_s); }, n, n, poles,
                wrap_zero([&] { return ctx.traction_of_double(0.0, nu_b, nu_s); },
                          [&] { return ctx.traction_of_double_zero(nu_b, nu_s); }),
                scale);
        }
    }
    return out;
}

std::vector<cd> profile_coefficients(const Coefficient& c, int kmodes) {
    // coefficients of the K-point samples: the grid product of fields is the
    // circular convolution with exactly these numbers, which keeps the dense
    // operator identical to the spectral one on the grid
    std::vector<cd> out(kmodes, cd{0.0, 0.0});
    if (c.is_constant()) {
        out[0] = c.constant_value();
        return out;
    }
    for (int j = 0; j < kmodes; ++j) out[j] = c(kTwoPi * j / kmodes);
    fft::transform(out.data(), kmodes, /*inverse=*/false);
    for (auto& v : out) v /= static_cast<double>(kmodes);
    return out;
}

StripOperator1D::StripOperator1D(const StokesParams& params, const std::vector<double>& xiP,
                                 int kmodes)
    : n_(params.grid.dim()), K_(kmodes) {
    const int n = n_;
    const int dim = (n + 1) * K_;
    double rho2 = 0.0;
    for (double v : xiP) rho2 += v * v;

    std::vector<cd> vV = profile_coefficients(params.V, K_);
    std::vector<cd> vV0 = profile_coefficients(params.V0, K_);

    la::Matrix m(dim, dim);
    auto idx = [&](int comp, int bin) { return comp * K_ + bin; };
    TorusGrid line(1, K_);
    for (int kb = 0; kb < K_; ++kb) {
        double k = static_cast<double>(line.signed_mode(kb));
        std::vector<double> xi(xiP);
        xi.push_back(k);
        double beta = rho2 + k * k;
        for (int i = 0; i < n; ++i) {
            m(idx(i, kb), idx(i, kb)) += beta;
            for (int j = 0; j < n; ++j) m(idx(i, kb), idx(j, kb)) += xi[i] * xi[j];
            m(idx(i, kb), idx(n, kb)) += cd{0.0, xi[i]};
            m(idx(n, kb), idx(i, kb)) += cd{0.0, -xi[i]};
        }
        // variable coefficients couple xi_n modes through the circular
        // convolution of the sampled profile
        for (int lb = 0; lb < K_; ++lb) {
            int dbin = (kb - lb + K_) % K_;
            cd vv = vV[dbin];
            cd vv0 = vV0[dbin];
            if (vv != cd{0.0, 0.0})
                for (int i = 0; i < n; ++i) m(idx(i, kb), idx(i, lb)) += vv;
            if (vv0 != cd{0.0, 0.0}) m(idx(n, kb), idx(n, lb)) -= vv0;
        }
    }

    // decouple the unpaired Nyquist bin to match the grid convention (the
    // spectral derivative zeroes it); its rows/cols become identity
    {
        int nb = K_ / 2; // bin of the -K/2 mode
        for (int c = 0; c <= n; ++c) {
            int r = idx(c, nb);
            for (int j = 0; j < dim; ++j) {
                m(r, j) = cd{0.0, 0.0};
                m(j, r) = cd{0.0, 0.0};
            }
            m(r, r) = 1.0;
        }
    }

    // the zero transverse mode can carry the kernel; use an SVD pseudo-solve
    use_svd_ = rho2 == 0.0 && params.kernel_dim() > 0;
    if (use_svd_) {
        svd_ = la::svd(m);
        sigma_ = svd_.sigma;
        double smax = sigma_.empty() ? 1.0 : sigma_.front();
        sigma_tol_ = 1e-10 * std::max(1.0, smax);
    } else {
        lu_ = la::lu_factor(std::move(m));
        if (lu_.singular) throw SolverError("StripOperator1D: singular mode block");
    }
}

std::vector<cd> StripOperator1D::solve(const std::vector<cd>& rhs_in) const {
    std::vector<cd> rhs(rhs_in);
    for (int c = 0; c <= n_; ++c) rhs[c * K_ + K_ / 2] = cd{0.0, 0.0}; // Nyquist bin
    if (!use_svd_) return la::lu_solve(lu_, rhs);
    const int dim = static_cast<int>(rhs.size());
    // x = V diag(1/sigma) U^H b on the numerical range
    std::vector<cd> ub(dim, cd{0.0, 0.0});
    for (int j = 0; j < dim; ++j) {
        cd acc{0.0, 0.0};
        for (int i = 0; i < dim; ++i) acc += std::conj(svd_.u(i, j)) * rhs[i];
        ub[j] = acc;
    }
    std::vector<cd> x(dim, cd{0.0, 0.0});
    for (int j = 0; j < dim; ++j) {
        if (sigma_[j] <= sigma_tol_) continue;
        cd w = ub[j] / sigma_[j];
        for (int i = 0; i < dim; ++i) x[i] += svd_.v(i, j) * w;
    }
    return x;
}

} // namespace stokeslp::pot
