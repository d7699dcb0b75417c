#ifndef STOKESLP_CORE_MODE_SUM_HPP
#define STOKESLP_CORE_MODE_SUM_HPP

#include <cmath>
#include <complex>
#include <functional>

#include "stokeslp/core/errors.hpp"
#include "stokeslp/la/matrix.hpp"

// Truncated sums over xi_n in Z with symmetric pairing and a fitted
// inverse-power tail correction. This is the generic (sampling) route; the
// layer-potential assembly has a closed-form evaluation of the same sums and
// the two are checked against each other.

namespace stokeslp {

inline double norm_of(std::complex<double> v) { return std::abs(v); }
inline double norm_of(const la::Matrix& m) { return m.frob_norm(); }

// sum_{k > L} k^{-p} by Euler-Maclaurin
inline double zeta_tail(long L, double p) {
    double x = static_cast<double>(L);
    return std::pow(x, 1.0 - p) / (p - 1.0) - 0.5 * std::pow(x, -p) +
           p / 12.0 * std::pow(x, -p - 1.0) -
           p * (p + 1.0) * (p + 2.0) / 720.0 * std::pow(x, -p - 3.0);
}

template <class T>
struct ModeSumResult {
    T value;
    double tail_bound = 0.0;
};

// term(k) for k in Z; the sum runs over |k| <= cutoff with k paired with -k.
// With symmetrize set, the paired term is assumed to decay like k^{-2} and a
// c2/k^2 + c4/k^4 tail fitted at cutoff/2 and cutoff is added; the reported
// bound is the size of that estimated tail.
template <class T, class F>
ModeSumResult<T> mode_sum(F&& term, long cutoff, bool symmetrize) {
    if (cutoff < 1) throw ArgumentError("mode_sum: cutoff must be >= 1");
    T value = term(0);
    T s_half = value; // initialized to correct shape below
    T s_full = value;
    bool have_half = false, have_full = false;
    for (long k = 1; k <= cutoff; ++k) {
        T pair = term(k) + term(-k);
        value += pair;
        if (k == cutoff / 2) {
            s_half = pair;
            have_half = true;
        }
        if (k == cutoff) {
            s_full = pair;
            have_full = true;
        }
    }
    ModeSumResult<T> out{value, 0.0};
    if (symmetrize && have_half && have_full && cutoff >= 8) {
        const double L = static_cast<double>(cutoff);
        // fit s(k) = c2/k^2 + c4/k^4 through k = L/2 and k = L
        T c2 = (16.0 / 12.0 * L * L) * s_full + (-1.0 / 12.0 * L * L) * s_half;
        T c4 = (L * L * L * L / 12.0) * s_half + (-4.0 / 12.0 * L * L * L * L) * s_full;
        double z2 = zeta_tail(cutoff, 2.0);
        double z4 = zeta_tail(cutoff, 4.0);
        out.value += c2 * z2 + c4 * z4;
        out.tail_bound = norm_of(c2) * z2 + norm_of(c4) * z4;
    }
    return out;
}

} // namespace stokeslp

#endif
