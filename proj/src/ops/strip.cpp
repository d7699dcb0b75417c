#include "stokeslp/ops/strip.hpp"

namespace stokeslp::ops {

namespace {

// int_0^L e^{i m x} dx
cd segment_integral(int m, double L) {
    if (m == 0) return cd{L, 0.0};
    cd im{0.0, static_cast<double>(m)};
    return (std::exp(im * L) - 1.0) / im;
}

} // namespace

cd strip_inner(const SpectralField& f, const SpectralField& g, double height) {
    if (f.grid() != g.grid() || f.comps() != g.comps())
        throw DimensionError("strip_inner: shape mismatch");
    const TorusGrid& gr = f.grid();
    const int n = gr.dim();
    const int N = gr.npts();
    const std::size_t tTotal = gr.total() / N;
    TorusGrid tg(std::max(1, n - 1), N);

    std::vector<cd> seg(2 * N + 1);
    for (int m = -N; m <= N; ++m) seg[m + N] = segment_integral(m, height);

    double area = std::pow(kTwoPi, n - 1);
    cd acc{0.0, 0.0};
    std::vector<cd> fk(N), gk(N);
    for (int c = 0; c < f.comps(); ++c) {
        for (std::size_t t = 0; t < tTotal; ++t) {
            auto tb = (n > 1) ? tg.bins(t) : std::array<int, 3>{0, 0, 0};
            std::array<int, 3> fb{0, 0, 0};
            for (int d = 0; d < n - 1; ++d) fb[d] = tb[d];
            for (int bin = 0; bin < N; ++bin) {
                fb[n - 1] = bin;
                std::size_t idx = gr.flat(fb);
                fk[bin] = f.at(c, idx);
                gk[bin] = g.at(c, idx);
            }
            for (int kb = 0; kb < N; ++kb) {
                if (fk[kb] == cd{0.0, 0.0}) continue;
                int k = gr.signed_mode(kb);
                for (int lb = 0; lb < N; ++lb) {
                    if (gk[lb] == cd{0.0, 0.0}) continue;
                    int l = gr.signed_mode(lb);
                    acc += fk[kb] * std::conj(gk[lb]) * seg[k - l + N];
                }
            }
        }
    }
    return area * acc;
}

cd boundary_inner(const BoundaryDensity& f, const BoundaryDensity& g, int dim_ambient) {
    if (f.comps != g.comps || f.tgrid != g.tgrid)
        throw DimensionError("boundary_inner: shape mismatch");
    cd acc{0.0, 0.0};
    for (std::size_t i = 0; i < f.coef.size(); ++i) acc += f.coef[i] * std::conj(g.coef[i]);
    return std::pow(kTwoPi, dim_ambient - 1) * acc;
}

cd strip_mean(const SpectralField& f, int comp, double height) {
    const TorusGrid& gr = f.grid();
    const int n = gr.dim();
    const int N = gr.npts();
    // mean = (1/(L (2pi)^{n-1})) * (2pi)^{n-1} sum_k fhat(0', k) I(k)
    cd acc{0.0, 0.0};
    std::array<int, 3> fb{0, 0, 0};
    for (int bin = 0; bin < N; ++bin) {
        fb[n - 1] = bin;
        acc += f.at(comp, gr.flat(fb)) * segment_integral(gr.signed_mode(bin), height);
    }
    return acc / height;
}

} // namespace stokeslp::ops
