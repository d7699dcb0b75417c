#include "stokeslp/core/sobolev.hpp"

#include "stokeslp/simd/complex_kernels.hpp"

namespace stokeslp {

double sobolev_norm(const SpectralField& f, double s) {
    const TorusGrid& g = f.grid();
    const std::size_t total = g.total();
    std::vector<double> w(total);
    for (std::size_t idx = 0; idx < total; ++idx) {
        auto m = g.modes(idx);
        double b = 1.0;
        for (int d = 0; d < g.dim(); ++d) b += static_cast<double>(m[d]) * m[d];
        w[idx] = std::pow(b, s); // <xi>^{2s}
    }
    double acc = 0.0;
    for (int c = 0; c < f.comps(); ++c)
        acc += simd::weighted_norm2(w.data(), f.data(c), total);
    return std::sqrt(acc);
}

double l2_grid_norm(const GridField& f) {
    const TorusGrid& g = f.grid();
    double h = 1.0;
    for (int d = 0; d < g.dim(); ++d) h *= g.spacing();
    double acc = 0.0;
    for (const cd& v : f.raw()) acc += std::norm(v);
    return std::sqrt(h * acc);
}

double coeff_norm2(const SpectralField& f) {
    double acc = 0.0;
    for (const cd& v : f.raw()) acc += std::norm(v);
    return acc;
}

SpectralField random_band_limited(const TorusGrid& g, int comps, int bandwidth,
                                  std::mt19937_64& rng) {
    SpectralField f(g, comps);
    std::normal_distribution<double> dist(0.0, 1.0);
    const std::size_t total = g.total();
    for (int c = 0; c < comps; ++c) {
        for (std::size_t idx = 0; idx < total; ++idx) {
            auto m = g.modes(idx);
            bool in = true;
            for (int d = 0; d < g.dim(); ++d)
                if (std::abs(m[d]) > bandwidth) in = false;
            if (!in) continue;
            f.at(c, idx) = cd{dist(rng), dist(rng)};
        }
        // symmetrize: fhat(-xi) = conj(fhat(xi)); modes at -N/2 have no
        // partner, but bandwidth < N/2 keeps them zero anyway
        for (std::size_t idx = 0; idx < total; ++idx) {
            auto mm = g.modes(idx);
            bool in = true;
            for (int d = 0; d < g.dim(); ++d)
                if (std::abs(mm[d]) > bandwidth || mm[d] == -g.npts() / 2) in = false;
            if (!in) continue;
            std::array<int, 3> nb{0, 0, 0};
            for (int d = 0; d < g.dim(); ++d) nb[d] = g.bin_of(-mm[d]);
            std::size_t jdx = g.flat(nb);
            if (jdx < idx) continue;
            cd a = f.at(c, idx);
            cd b = f.at(c, jdx);
            cd half = 0.5 * (a + std::conj(b));
            f.at(c, idx) = half;
            f.at(c, jdx) = std::conj(half);
        }
    }
    return f;
}

} // namespace stokeslp
