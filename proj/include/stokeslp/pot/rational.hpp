#ifndef STOKESLP_POT_RATIONAL_HPP
#define STOKESLP_POT_RATIONAL_HPP

#include <functional>
#include <vector>

#include "stokeslp/la/matrix.hpp"
#include "stokeslp/pot/lattice.hpp"

// Exact partial-fraction decomposition of the per-mode multipliers. Every
// constant-coefficient multiplier entry is a rational function of xi_n with
// known denominator (k^2+a1^2)(k^2+a2^2)(k^2+a3^2) (factors merge when the
// a's coincide, and a = 0 factors appear on the zero transverse mode), and
// numerator degree at most the denominator degree. The decomposition
//   W(k) = c0 + sum_z sum_m R_{z,m} / (k - z)^m
// is recovered by interpolating W * D on real nodes and peeling residues off
// with synthetic division; lattice sums of W then evaluate in closed form.

namespace stokeslp::rational {

using la::cd;
using la::Matrix;

// ------------------------------------------------------------------ Poly ---

struct Poly {
    std::vector<cd> c; // c[j] k^j

    int deg() const { return static_cast<int>(c.size()) - 1; }

    cd eval(cd k) const {
        cd v{0.0, 0.0};
        for (int j = deg(); j >= 0; --j) v = v * k + c[j];
        return v;
    }

    void trim(double tol) {
        while (c.size() > 1 && std::abs(c.back()) <= tol) c.pop_back();
    }

    // divide by (k - z), discarding the remainder (caller guarantees it)
    void deflate(cd z) {
        std::vector<cd> out(c.size() - 1);
        cd carry = c.back();
        for (int j = static_cast<int>(c.size()) - 2; j >= 0; --j) {
            out[j] = carry;
            carry = c[j] + carry * z;
        }
        c = std::move(out);
        if (c.empty()) c.push_back(cd{0.0, 0.0});
    }

    static Poly from_root(cd z) { return Poly{{-z, cd{1.0, 0.0}}}; }

    friend Poly operator*(const Poly& a, const Poly& b) {
        Poly out;
        out.c.assign(a.c.size() + b.c.size() - 1, cd{0.0, 0.0});
        for (std::size_t i = 0; i < a.c.size(); ++i)
            for (std::size_t j = 0; j < b.c.size(); ++j) out.c[i + j] += a.c[i] * b.c[j];
        return out;
    }

    friend Poly operator-(Poly a, const Poly& b) {
        if (a.c.size() < b.c.size()) a.c.resize(b.c.size(), cd{0.0, 0.0});
        for (std::size_t j = 0; j < b.c.size(); ++j) a.c[j] -= b.c[j];
        return a;
    }

    friend Poly operator*(cd s, Poly a) {
        for (auto& v : a.c) v *= s;
        return a;
    }
};

// Newton interpolation through (x_i, y_i), returned in monomial form
inline Poly interpolate(const std::vector<double>& x, const std::vector<cd>& y) {
    const int n = static_cast<int>(x.size());
    std::vector<cd> dd(y);
    for (int lev = 1; lev < n; ++lev)
        for (int i = n - 1; i >= lev; --i)
            dd[i] = (dd[i] - dd[i - 1]) / (x[i] - x[i - lev]);
    Poly p{{dd[n - 1]}};
    for (int i = n - 2; i >= 0; --i) {
        Poly lin{{cd{-x[i], 0.0}, cd{1.0, 0.0}}};
        p = p * lin;
        p.c[0] += dd[i];
    }
    return p;
}

// ----------------------------------------------------------------- poles ---

struct Pole {
    double a = 0.0; // pole at sign * i * a; a == 0 marks the k = 0 pole pair
    int sign = +1;  // ignored for a == 0
    int mult = 1;
};

// coefficients of one decomposed scalar entry
struct ScalarDecomp {
    cd c0{0.0, 0.0};
    struct Term {
        double a;
        int sign;
        int mult;   // power of 1/(k - z)
        cd coeff;
    };
    std::vector<Term> terms;      // poles with a > 0
    std::vector<cd> zero_terms;   // zero_terms[m-1] / k^m
    cd w0{0.0, 0.0};              // the physical k = 0 coefficient

    // value of the non-zero-pole part at k = 0 (used to splice in w0)
    cd regular_at_zero() const {
        cd v = c0;
        for (const auto& t : terms) {
            cd z{0.0, t.sign * t.a};
            v += t.coeff / std::pow(-z, t.mult);
        }
        return v;
    }

    // sum_{k != 0} W(k) e^{ikt} + w0, for t in (0, 2pi)
    cd value(double t) const {
        cd s = w0 - regular_at_zero();
        for (const auto& tm : terms) {
            auto g = lattice::g_kernels(tm.sign, tm.a, t);
            s += tm.coeff * (tm.mult == 1 ? g.g1 : tm.mult == 2 ? g.g2 : g.g3);
        }
        for (std::size_t m = 0; m < zero_terms.size(); ++m)
            if (zero_terms[m] != cd{0.0, 0.0})
                s += zero_terms[m] * lattice::f_kernel(static_cast<int>(m) + 1, t);
        return s;
    }

    cd limit(lattice::Side side) const {
        cd s = w0 - regular_at_zero();
        for (const auto& tm : terms) {
            auto g = lattice::g_limit(tm.sign, tm.a, side);
            s += tm.coeff * (tm.mult == 1 ? g.g1 : tm.mult == 2 ? g.g2 : g.g3);
        }
        for (std::size_t m = 0; m < zero_terms.size(); ++m)
            if (zero_terms[m] != cd{0.0, 0.0})
                s += zero_terms[m] * lattice::f_limit(static_cast<int>(m) + 1, side);
        return s;
    }

    // symmetric principal value at t = 0; requires c0 to vanish
    cd pv0() const {
        cd s = w0 - regular_at_zero();
        for (const auto& tm : terms) {
            auto g = lattice::g_pv0(tm.sign, tm.a);
            s += tm.coeff * (tm.mult == 1 ? g.g1 : tm.mult == 2 ? g.g2 : g.g3);
        }
        for (std::size_t m = 0; m < zero_terms.size(); ++m)
            if (zero_terms[m] != cd{0.0, 0.0})
                s += zero_terms[m] * lattice::f_pv0(static_cast<int>(m) + 1);
        return s;
    }

    // coefficient of 1/k at infinity; i * jump_coeff is the lateral jump
    cd jump_coeff() const {
        cd j{0.0, 0.0};
        for (const auto& t : terms)
            if (t.mult == 1) j += t.coeff;
        if (!zero_terms.empty()) j += zero_terms[0];
        return j;
    }
};

// Decompose a scalar rational sampler with the given poles. w0 is the
// physical k = 0 coefficient (it differs from the analytic continuation when
// the zero mode is pseudo-inverted or lies on a pole).
ScalarDecomp decompose_scalar(const std::function<cd(double)>& sampler,
                              const std::vector<Pole>& poles, cd w0, double node_scale);

// matrix-valued version sharing one set of samples
struct MatrixDecomp {
    int rows = 0, cols = 0;
    std::vector<ScalarDecomp> entries; // row major

    Matrix value(double t) const {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = entries[i * cols + j].value(t);
        return m;
    }
    Matrix limit(lattice::Side side) const {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = entries[i * cols + j].limit(side);
        return m;
    }
    Matrix pv0() const {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = entries[i * cols + j].pv0();
        return m;
    }
    Matrix jump() const {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = entries[i * cols + j].jump_coeff();
        return m;
    }
    Matrix c0() const {
        Matrix m(rows, cols);
        for (int i = 0; i < rows; ++i)
            for (int j = 0; j < cols; ++j) m(i, j) = entries[i * cols + j].c0;
        return m;
    }
};

MatrixDecomp decompose_matrix(const std::function<Matrix(double)>& sampler, int rows, int cols,
                              const std::vector<Pole>& poles, const Matrix& w0,
                              double node_scale);

} // namespace stokeslp::rational

#endif
