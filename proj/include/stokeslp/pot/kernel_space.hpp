#ifndef STOKESLP_POT_KERNEL_SPACE_HPP
#define STOKESLP_POT_KERNEL_SPACE_HPP

#include "stokeslp/ops/params.hpp"

namespace stokeslp::pot {

// ker Xi on the flat torus: constant velocity fields (the Killing fields)
// and/or the constant pressure, depending on which coefficients vanish.
// Basis fields are L2-orthonormal.
struct KernelSpace {
    KernelCase kcase = KernelCase::case4;
    std::vector<SpectralField> basis;

    int dim() const { return static_cast<int>(basis.size()); }

    // L2-orthogonal projection onto the kernel
    SpectralField project(const SpectralField& f) const {
        SpectralField out(f.grid(), f.comps());
        const double vol = std::pow(kTwoPi, f.grid().dim());
        for (const auto& b : basis) {
            cd coef{0.0, 0.0};
            for (int c = 0; c < f.comps(); ++c)
                coef += f.at(c, 0) * std::conj(b.at(c, 0)) * vol;
            for (int c = 0; c < f.comps(); ++c) out.at(c, 0) += coef * b.at(c, 0);
        }
        return out;
    }

    SpectralField remove(const SpectralField& f) const {
        SpectralField out = f;
        out -= project(f);
        return out;
    }
};

inline KernelSpace kernel_basis(const StokesParams& params) {
    KernelSpace ks;
    ks.kcase = params.classify();
    const TorusGrid& g = params.grid;
    const int n = g.dim();
    const double scale = std::pow(kTwoPi, -0.5 * n); // unit L2 norm
    auto unit = [&](int comp) {
        SpectralField f = make_vp<SpectralTag>(g);
        f.at(comp, 0) = scale;
        return f;
    };
    switch (ks.kcase) {
    case KernelCase::case1:
        for (int i = 0; i <= n; ++i) ks.basis.push_back(unit(i));
        break;
    case KernelCase::case2:
        for (int i = 0; i < n; ++i) ks.basis.push_back(unit(i));
        break;
    case KernelCase::case3:
        ks.basis.push_back(unit(n));
        break;
    case KernelCase::case4:
        break;
    }
    return ks;
}

} // namespace stokeslp::pot

#endif
