#ifndef STOKESLP_SYMBOLS_FIRST_ORDER_HPP
#define STOKESLP_SYMBOLS_FIRST_ORDER_HPP

#include <optional>
#include <span>
#include <vector>

#include "stokeslp/symbols/stokes.hpp"

// Principal symbols of the first-order operators around Def, and the
// boundary map P |-> d_nu^P = -i sigma_1(P; nu) from the integration by
// parts formula (P u, v)_Omega = (u, P* v)_Omega + (d_nu^P u, v)_Gamma.
//
// Symmetric 2-tensor values are flattened row major, so Def maps C^n to
// C^{n^2} and Def* maps back.

namespace stokeslp::symbols {

enum class FirstOrderOp { Def, DefStar, Grad, DivStar, Dnu, DnuStar };

inline Matrix first_order_symbol(FirstOrderOp which, std::span<const double> xi,
                                 std::optional<std::span<const double>> nu = std::nullopt) {
    const int n = static_cast<int>(xi.size());
    const cd ih{0.0, 0.5}; // i/2
    switch (which) {
    case FirstOrderOp::Def: {
        // X -> (i/2)(xi (x) X + X (x) xi), rows indexed by (i,j)
        Matrix m(n * n, n);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                m(i * n + j, j) += ih * xi[i];
                m(i * n + j, i) += ih * xi[j];
            }
        return m;
    }
    case FirstOrderOp::DefStar: {
        // Y (x) Z -> -(i/2)(xi(Y) Z + xi(Z) Y)
        Matrix m(n, n * n);
        for (int a = 0; a < n; ++a)
            for (int b = 0; b < n; ++b) {
                m(b, a * n + b) += -ih * xi[a];
                m(a, a * n + b) += -ih * xi[b];
            }
        return m;
    }
    case FirstOrderOp::Grad: {
        Matrix m(n, 1);
        for (int i = 0; i < n; ++i) m(i, 0) = cd{0.0, xi[i]};
        return m;
    }
    case FirstOrderOp::DivStar: {
        // grad* = -div, sigma_1(grad*; xi) X = -i xi . X
        Matrix m(1, n);
        for (int i = 0; i < n; ++i) m(0, i) = cd{0.0, -xi[i]};
        return m;
    }
    case FirstOrderOp::Dnu: {
        if (!nu) throw ArgumentError("first_order_symbol: Dnu requires nu");
        double xn = 0.0;
        for (int i = 0; i < n; ++i) xn += xi[i] * (*nu)[i];
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) {
            m(i, i) += ih * xn;
            for (int j = 0; j < n; ++j) m(i, j) += ih * xi[i] * (*nu)[j];
        }
        return m;
    }
    case FirstOrderOp::DnuStar: {
        if (!nu) throw ArgumentError("first_order_symbol: DnuStar requires nu");
        double xn = 0.0;
        for (int i = 0; i < n; ++i) xn += xi[i] * (*nu)[i];
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) {
            m(i, i) += -ih * xn;
            for (int j = 0; j < n; ++j) m(i, j) += -ih * (*nu)[i] * xi[j];
        }
        return m;
    }
    }
    throw ArgumentError("first_order_symbol: unknown selector");
}

// sigma_2(Def* Def; xi) = (1/2)(|xi|^2 + xi (x) xi)
inline Matrix defstar_def_symbol(std::span<const double> xi) {
    const int n = static_cast<int>(xi.size());
    const double b = norm2(xi);
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 0.5 * b;
        for (int j = 0; j < n; ++j) m(i, j) += 0.5 * xi[i] * xi[j];
    }
    return m;
}

// d_nu^P = -i sigma_1(P; nu)
inline Matrix boundary_map(FirstOrderOp which, std::span<const double> nu) {
    Matrix s = first_order_symbol(which, nu,
                                  which == FirstOrderOp::Dnu || which == FirstOrderOp::DnuStar
                                      ? std::optional<std::span<const double>>(nu)
                                      : std::nullopt);
    return cd{0.0, -1.0} * s;
}

// d_nu^{Def*} applied to symmetric-tensor values; composed with Def it
// equals -Dnu.
inline Matrix conormal_defstar(std::span<const double> nu) {
    return boundary_map(FirstOrderOp::DefStar, nu);
}

} // namespace stokeslp::symbols

#endif
