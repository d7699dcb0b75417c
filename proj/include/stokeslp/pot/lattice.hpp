#ifndef STOKESLP_POT_LATTICE_HPP
#define STOKESLP_POT_LATTICE_HPP

#include <cmath>
#include <complex>
#include <vector>

#include "stokeslp/core/errors.hpp"
#include "stokeslp/core/grid.hpp"

// Closed forms for the lattice sums
//   G_m(z; t) = sum_{k in Z} e^{ikt} / (k - z)^m,   z = +- i a, a > 0,
//   F_m(t)    = sum_{k != 0} e^{ikt} / k^m,
// for t in (0, 2pi), m = 1..3, together with their one-sided limits at the
// endpoints and the symmetric (principal value) value at t = 0. These drive
// the mode sums behind every boundary operator and potential slice: the sums
// converge geometrically through e^{-at} / e^{-a(2pi-t)} and stay bounded
// for arbitrarily large a.
//
// Basis facts used:
//   sum_k e^{ikt}/(k-z) = -pi e^{iz(t-pi)} / sin(pi z)
//   higher m by d/dz, with log-derivative L(z) = i(t-pi) - pi cot(pi z).

namespace stokeslp::lattice {

using cd = std::complex<double>;

enum class Side { interior_plus, exterior_minus }; // t -> 0+ vs t -> 2pi-

struct GValues {
    cd g1, g2, g3;
};

// z = sign * i * a, a > 0, t in [0, 2pi); t = 0 evaluates the t -> 0+ limit
inline GValues g_kernels(int sign, double a, double t) {
    if (!(a > 0.0)) throw ArgumentError("g_kernels: a must be > 0");
    const double q = std::exp(-kTwoPi * a);
    const double om = 1.0 - q;
    cd g1, L;
    if (sign > 0) {
        g1 = cd{0.0, kTwoPi} * std::exp(-a * t) / om;
        L = cd{0.0, 1.0} * (t + kTwoPi * q / om);
    } else {
        g1 = cd{0.0, -kTwoPi} * std::exp(-a * (kTwoPi - t)) / om;
        L = cd{0.0, 1.0} * (t - kTwoPi / om);
    }
    const double Lp = -4.0 * M_PI * M_PI * q / (om * om);
    return {g1, g1 * L, 0.5 * g1 * (L * L + Lp)};
}

inline GValues g_limit(int sign, double a, Side side) {
    return side == Side::interior_plus ? g_kernels(sign, a, 0.0)
                                       : g_kernels(sign, a, kTwoPi);
}

// symmetric-partial-sum value at t = 0 (average of the one-sided limits)
inline GValues g_pv0(int sign, double a) {
    GValues p = g_limit(sign, a, Side::interior_plus);
    GValues m = g_limit(sign, a, Side::exterior_minus);
    return {0.5 * (p.g1 + m.g1), 0.5 * (p.g2 + m.g2), 0.5 * (p.g3 + m.g3)};
}

// ---------------------------------------------------------------- F_m ------
// F_m(t) = -(2 pi i)^m B_m(t / 2pi) / m!   (Bernoulli polynomial), valid on
// (0, 2pi); F_1 jumps at 0, the others are continuous.

namespace detail {

inline double bernoulli_number(int n) {
    // B_1 = -1/2 convention; magic-static init keeps concurrent use safe
    static const std::vector<double> cache = [] {
        const int N = 40;
        std::vector<double> c(N + 1, 0.0);
        c[0] = 1.0;
        for (int m = 1; m <= N; ++m) {
            // sum_{j=0}^{m} binom(m+1, j) B_j = 0
            double s = 0.0;
            double binom = 1.0; // binom(m+1, 0)
            for (int j = 0; j < m; ++j) {
                s += binom * c[j];
                binom = binom * (m + 1 - j) / (j + 1);
            }
            c[m] = -s / binom; // binom(m+1, m) = m+1
        }
        return c;
    }();
    return cache[n];
}

inline double bernoulli_poly(int m, double x) {
    // B_m(x) = sum_k binom(m,k) B_k x^{m-k}
    double s = 0.0;
    double binom = 1.0;
    for (int k = 0; k <= m; ++k) {
        s += binom * bernoulli_number(k) * std::pow(x, m - k);
        binom = binom * (m - k) / (k + 1);
    }
    return s;
}

} // namespace detail

inline cd f_kernel(int m, double t) {
    if (m < 1) throw ArgumentError("f_kernel: m >= 1");
    cd factor = -std::pow(cd{0.0, kTwoPi}, m);
    double fact = 1.0;
    for (int j = 2; j <= m; ++j) fact *= j;
    return factor / fact * detail::bernoulli_poly(m, t / kTwoPi);
}

inline cd f_limit(int m, Side side) {
    if (m == 1) return side == Side::interior_plus ? cd{0.0, M_PI} : cd{0.0, -M_PI};
    return f_kernel(m, 0.0);
}

inline cd f_pv0(int m) {
    if (m % 2 == 1) return cd{0.0, 0.0};
    return f_kernel(m, 0.0); // 2 zeta(m) for even m
}

} // namespace stokeslp::lattice

#endif
