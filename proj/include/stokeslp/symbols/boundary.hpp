#ifndef STOKESLP_SYMBOLS_BOUNDARY_HPP
#define STOKESLP_SYMBOLS_BOUNDARY_HPP

#include "stokeslp/symbols/first_order.hpp"

// Principal symbols of the boundary layer operators: the double-layer
// velocity symbol sigma_{-1}(P) with its jump coefficients J+- = -i, and the
// leading symbols of K, S, C0 on the boundary (xi' orthogonal to nu).

namespace stokeslp::symbols {

namespace detail {
inline void check_tangent(std::span<const double> xiP, std::span<const double> nu) {
    double dot = 0.0, nn = 0.0;
    for (std::size_t i = 0; i < xiP.size(); ++i) {
        dot += xiP[i] * nu[i];
        nn += xiP[i] * xiP[i];
    }
    if (nn == 0.0) throw SingularPointError("boundary symbol: xi' = 0");
    if (std::abs(dot) > 1e-12 * std::sqrt(nn))
        throw ArgumentError("boundary symbol: xi' must be orthogonal to nu");
}
} // namespace detail

// sigma_{-1}(P; xi) for P = -2 A Dnu* + B nu#, the operator behind the
// double-layer velocity potential:
//   (i/|xi|^2) ( xi(nu) + nu (x) xi - (2 f xi(nu)/|xi|^2) xi (x) xi
//               + g xi (x) nu )
inline Matrix double_layer_sigma(const StokesSymbolParams& p, std::span<const double> nu,
                                 std::span<const double> xi) {
    p.validate();
    const int n = static_cast<int>(xi.size());
    const double b = norm2(xi);
    if (b == 0.0) throw SingularPointError("double_layer_sigma: xi = 0");
    const double f = p.f(), g = p.g();
    double xn = 0.0;
    for (int i = 0; i < n; ++i) xn += xi[i] * nu[i];
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) += xn;
        for (int j = 0; j < n; ++j) {
            m(i, j) += nu[i] * xi[j];
            m(i, j) -= 2.0 * f * xn / b * xi[i] * xi[j];
            m(i, j) += g * xi[i] * nu[j];
        }
    }
    return cd{0.0, 1.0 / b} * m;
}

// J+ = J- = -i (times the identity) for the double-layer symbol
inline Matrix double_layer_jump(int n) {
    Matrix j = Matrix::identity(n);
    return cd{0.0, -1.0} * j;
}

// sigma_0(K; xi') = (i V0 / (2 (2V0+1) |xi'|)) (nu (x) xi' - xi' (x) nu)
inline Matrix sigma0_K(const StokesSymbolParams& p, std::span<const double> nu,
                       std::span<const double> xiP) {
    p.validate();
    detail::check_tangent(xiP, nu);
    const int n = static_cast<int>(xiP.size());
    const double r = std::sqrt(norm2(xiP));
    const double c = p.V0 / (2.0 * (2.0 * p.V0 + 1.0) * r);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m(i, j) = cd{0.0, c} * (nu[i] * xiP[j] - xiP[i] * nu[j]);
    return m;
}

// sigma_{-1}(S; xi') = (1/(4|xi'|)) (2 - f nu (x) nu - f eta (x) eta),
// eta = xi'/|xi'|
inline Matrix sigma_m1_S(const StokesSymbolParams& p, std::span<const double> nu,
                         std::span<const double> xiP) {
    p.validate();
    detail::check_tangent(xiP, nu);
    const int n = static_cast<int>(xiP.size());
    const double r = std::sqrt(norm2(xiP));
    const double f = p.f();
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 2.0;
        for (int j = 0; j < n; ++j) {
            m(i, j) -= f * nu[i] * nu[j];
            m(i, j) -= f * xiP[i] * xiP[j] / (r * r);
        }
    }
    return (1.0 / (4.0 * r)) * m;
}

// sigma_0(C0; xi') = -(g i / (2 |xi'|)) xi'   (row covector)
inline Matrix sigma0_C0(const StokesSymbolParams& p, std::span<const double> nu,
                        std::span<const double> xiP) {
    p.validate();
    detail::check_tangent(xiP, nu);
    const int n = static_cast<int>(xiP.size());
    const double r = std::sqrt(norm2(xiP));
    Matrix m(1, n);
    for (int i = 0; i < n; ++i) m(0, i) = cd{0.0, -p.g() / (2.0 * r) * xiP[i]};
    return m;
}

} // namespace stokeslp::symbols

#endif
