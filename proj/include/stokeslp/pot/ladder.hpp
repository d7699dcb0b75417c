#ifndef STOKESLP_POT_LADDER_HPP
#define STOKESLP_POT_LADDER_HPP

#include <cmath>
#include <vector>

#include "stokeslp/ops/params.hpp"

namespace stokeslp::pot {

// Extrapolation ladder for one-sided traces. The rungs start at the
// 2^{-3} L_s of the coarse design and continue geometrically to 2^{-10};
// a four-rung cubic ladder has an extrapolation floor around 1e-3 times the
// data scale for bandwidth-4 densities, which would drown the 1e-4 budgets,
// so the ladder is deepened and the whole of it shrinks like 1/N to keep the
// reported residuals resolution-dependent.
inline std::vector<double> trace_ladder(const StokesParams& params) {
    const double scale = 64.0 / params.grid.npts();
    std::vector<double> eps;
    for (int j = 3; j <= 10; ++j)
        eps.push_back(params.strip_height * std::pow(2.0, -j) * scale);
    return eps;
}

// Lagrange weights for polynomial extrapolation to 0 (geometric nodes keep
// these uniformly bounded)
inline std::vector<double> ladder_weights(const std::vector<double>& eps) {
    std::vector<double> w(eps.size(), 1.0);
    for (std::size_t j = 0; j < eps.size(); ++j)
        for (std::size_t l = 0; l < eps.size(); ++l)
            if (l != j) w[j] *= (0.0 - eps[l]) / (eps[j] - eps[l]);
    return w;
}

} // namespace stokeslp::pot

#endif
