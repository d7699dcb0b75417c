#ifndef STOKESLP_OPS_DENSITY_HPP
#define STOKESLP_OPS_DENSITY_HPP

#include <random>

#include "stokeslp/core/field.hpp"
#include "stokeslp/core/sobolev.hpp"

namespace stokeslp {

// A vector-valued function on one boundary component, stored per transverse
// mode xi' (dim-1 dimensional FFT-ordered grid). Component count is n for
// tangent-bundle densities (normal components permitted), n+1 for
// velocity-pressure traces.
struct BoundaryDensity {
    TorusGrid tgrid; // transverse grid, dim = ambient dim - 1
    int comps = 0;
    std::vector<cd> coef; // comps x tgrid.total(), component-major

    BoundaryDensity() = default;
    BoundaryDensity(const TorusGrid& transverse, int c)
        : tgrid(transverse), comps(c), coef(transverse.total() * c, cd{0.0, 0.0}) {}

    static BoundaryDensity for_ambient(const TorusGrid& g, int c) {
        return BoundaryDensity(TorusGrid(g.dim() - 1, g.npts()), c);
    }

    cd& at(int comp, std::size_t idx) { return coef[comp * tgrid.total() + idx]; }
    const cd& at(int comp, std::size_t idx) const { return coef[comp * tgrid.total() + idx]; }

    std::size_t modes() const { return tgrid.total(); }

    double norm() const {
        double s = 0.0;
        for (const cd& v : coef) s += std::norm(v);
        return std::sqrt(s);
    }

    BoundaryDensity& operator+=(const BoundaryDensity& o) {
        if (comps != o.comps || tgrid != o.tgrid) throw DimensionError("BoundaryDensity: shape");
        for (std::size_t i = 0; i < coef.size(); ++i) coef[i] += o.coef[i];
        return *this;
    }
    BoundaryDensity& operator-=(const BoundaryDensity& o) {
        if (comps != o.comps || tgrid != o.tgrid) throw DimensionError("BoundaryDensity: shape");
        for (std::size_t i = 0; i < coef.size(); ++i) coef[i] -= o.coef[i];
        return *this;
    }
    BoundaryDensity& operator*=(cd s) {
        for (auto& v : coef) v *= s;
        return *this;
    }
};

// transverse frequencies of a mode index as doubles
inline std::vector<double> transverse_xi(const TorusGrid& tgrid, std::size_t idx) {
    auto m = tgrid.modes(idx);
    std::vector<double> xi(tgrid.dim());
    for (int d = 0; d < tgrid.dim(); ++d) xi[d] = static_cast<double>(m[d]);
    return xi;
}

// restriction of a spectral field to the slice {x_n = height}:
// ghat(xi') = sum_k fhat(xi', k) e^{i k height}
inline BoundaryDensity slice_coeffs(const SpectralField& f, double height) {
    const TorusGrid& g = f.grid();
    BoundaryDensity out = BoundaryDensity::for_ambient(g, f.comps());
    const int N = g.npts();
    std::vector<cd> phase(N);
    for (int bin = 0; bin < N; ++bin) {
        int k = g.signed_mode(bin);
        phase[bin] = std::exp(cd{0.0, height * k});
    }
    for (int c = 0; c < f.comps(); ++c) {
        for (std::size_t tIdx = 0; tIdx < out.modes(); ++tIdx) {
            auto tb = out.tgrid.bins(tIdx);
            cd acc{0.0, 0.0};
            std::array<int, 3> fb{0, 0, 0};
            for (int d = 0; d < g.dim() - 1; ++d) fb[d] = tb[d];
            for (int bin = 0; bin < N; ++bin) {
                fb[g.dim() - 1] = bin;
                acc += f.at(c, g.flat(fb)) * phase[bin];
            }
            out.at(c, tIdx) = acc;
        }
    }
    return out;
}

// random real band-limited density on a component
inline BoundaryDensity random_density(const TorusGrid& g, int comps, int bandwidth,
                                      std::mt19937_64& rng) {
    TorusGrid tg(g.dim() - 1, g.npts());
    SpectralField tmp = random_band_limited(tg, comps, bandwidth, rng);
    BoundaryDensity out(tg, comps);
    out.coef = tmp.raw();
    return out;
}

} // namespace stokeslp

#endif
