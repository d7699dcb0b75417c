#ifndef STOKESLP_SYMBOLS_STOKES_HPP
#define STOKESLP_SYMBOLS_STOKES_HPP

#include <span>

#include "stokeslp/la/matrix.hpp"

// Principal symbols of the generalized Stokes operator
//   Xi = [ 2 Def*Def + V   grad ]
//        [ grad*           -V0  ]
// on a flat torus, and the exact inverse of its mixed-order symbol. All maps
// are matrices in the coordinate frame; the musical isomorphism is the
// identity.

namespace stokeslp::symbols {

using la::Matrix;
using la::cd;

struct StokesSymbolParams {
    double V = 0.0;
    double V0 = 0.0;

    double f() const { return (V0 + 1.0) / (2.0 * V0 + 1.0); }
    double g() const { return 1.0 / (2.0 * V0 + 1.0); }

    void validate() const {
        if (V < 0.0 || V0 < 0.0) throw ArgumentError("StokesSymbolParams: V, V0 must be >= 0");
    }
};

inline double norm2(std::span<const double> xi) {
    double s = 0.0;
    for (double v : xi) s += v * v;
    return s;
}

// Mixed-order principal symbol; at xi = 0 the zero-frequency block
// diag(V, ..., V, -V0) of the full operator is returned instead (the leading
// symbol is undefined there, but the torus zero mode needs this block).
inline Matrix stokes_symbol(const StokesSymbolParams& p, std::span<const double> xi) {
    p.validate();
    const int n = static_cast<int>(xi.size());
    Matrix m(n + 1, n + 1);
    const double b = norm2(xi);
    if (b == 0.0) {
        for (int i = 0; i < n; ++i) m(i, i) = p.V;
        m(n, n) = -p.V0;
        return m;
    }
    for (int i = 0; i < n; ++i) {
        m(i, i) = b;
        for (int j = 0; j < n; ++j) m(i, j) += xi[i] * xi[j];
        m(i, n) = cd{0.0, xi[i]};  //  i xi
        m(n, i) = cd{0.0, -xi[i]}; // -i xi
    }
    m(n, n) = -p.V0;
    return m;
}

inline Matrix stokes_symbol_inverse(const StokesSymbolParams& p, std::span<const double> xi) {
    p.validate();
    const int n = static_cast<int>(xi.size());
    const double b = norm2(xi);
    if (b == 0.0) throw SingularPointError("stokes_symbol_inverse: xi = 0");
    const double f = p.f(), g = p.g();
    Matrix m(n + 1, n + 1);
    for (int i = 0; i < n; ++i) {
        m(i, i) = 1.0 / b;
        for (int j = 0; j < n; ++j) m(i, j) -= f / (b * b) * xi[i] * xi[j];
        m(i, n) = cd{0.0, g * xi[i] / b};
        m(n, i) = cd{0.0, -g * xi[i] / b};
    }
    m(n, n) = -2.0 * g;
    return m;
}

enum class InverseBlock { A, B, C, D };

// Blocks of the inverse symbol: sigma_{-2}(A), sigma_{-1}(B), sigma_{-1}(C),
// sigma_0(D). Shapes n x n, n x 1, 1 x n, 1 x 1.
inline Matrix block_symbol(InverseBlock which, const StokesSymbolParams& p,
                           std::span<const double> xi) {
    p.validate();
    const int n = static_cast<int>(xi.size());
    const double b = norm2(xi);
    if (b == 0.0) throw SingularPointError("block_symbol: xi = 0");
    const double f = p.f(), g = p.g();
    switch (which) {
    case InverseBlock::A: {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) {
            m(i, i) = 1.0 / b;
            for (int j = 0; j < n; ++j) m(i, j) -= f / (b * b) * xi[i] * xi[j];
        }
        return m;
    }
    case InverseBlock::B: {
        Matrix m(n, 1);
        for (int i = 0; i < n; ++i) m(i, 0) = cd{0.0, g * xi[i] / b};
        return m;
    }
    case InverseBlock::C: {
        Matrix m(1, n);
        for (int i = 0; i < n; ++i) m(0, i) = cd{0.0, -g * xi[i] / b};
        return m;
    }
    case InverseBlock::D: {
        Matrix m(1, 1);
        m(0, 0) = -2.0 * g;
        return m;
    }
    }
    throw ArgumentError("block_symbol: unknown selector");
}

} // namespace stokeslp::symbols

#endif
