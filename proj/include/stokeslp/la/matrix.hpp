#ifndef STOKESLP_LA_MATRIX_HPP
#define STOKESLP_LA_MATRIX_HPP

#include <algorithm>
#include <cmath>
#include <complex>
#include <vector>

#include "stokeslp/core/errors.hpp"

// Dense complex matrices at the sizes this project needs: per-mode symbol
// blocks (up to 8x8) and per-transverse-mode 1-d systems (a few hundred).
// Row major storage.

namespace stokeslp::la {

using cd = std::complex<double>;

class Matrix {
  public:
    Matrix() = default;
    Matrix(int r, int c) : r_(r), c_(c), a_(static_cast<std::size_t>(r) * c, cd{0, 0}) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return r_; }
    int cols() const { return c_; }

    cd& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * c_ + j]; }
    const cd& operator()(int i, int j) const { return a_[static_cast<std::size_t>(i) * c_ + j]; }

    cd* data() { return a_.data(); }
    const cd* data() const { return a_.data(); }

    Matrix& operator+=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] += o.a_[i];
        return *this;
    }
    Matrix& operator-=(const Matrix& o) {
        check_same(o);
        for (std::size_t i = 0; i < a_.size(); ++i) a_[i] -= o.a_[i];
        return *this;
    }
    Matrix& operator*=(cd s) {
        for (auto& v : a_) v *= s;
        return *this;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
    friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
    friend Matrix operator*(Matrix a, cd s) { return a *= s; }
    friend Matrix operator*(cd s, Matrix a) { return a *= s; }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.c_ != b.r_) throw DimensionError("Matrix multiply: shape mismatch");
        Matrix out(a.r_, b.c_);
        for (int i = 0; i < a.r_; ++i)
            for (int k = 0; k < a.c_; ++k) {
                cd aik = a(i, k);
                if (aik == cd{0, 0}) continue;
                for (int j = 0; j < b.c_; ++j) out(i, j) += aik * b(k, j);
            }
        return out;
    }

    Matrix adjoint() const {
        Matrix out(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) out(j, i) = std::conj((*this)(i, j));
        return out;
    }

    Matrix transpose() const {
        Matrix out(c_, r_);
        for (int i = 0; i < r_; ++i)
            for (int j = 0; j < c_; ++j) out(j, i) = (*this)(i, j);
        return out;
    }

    double frob_norm() const {
        double s = 0.0;
        for (const cd& v : a_) s += std::norm(v);
        return std::sqrt(s);
    }

    double max_abs() const {
        double s = 0.0;
        for (const cd& v : a_) s = std::max(s, std::abs(v));
        return s;
    }

    std::vector<cd> apply(const std::vector<cd>& x) const {
        if (static_cast<int>(x.size()) != c_) throw DimensionError("Matrix apply: size mismatch");
        std::vector<cd> y(r_, cd{0, 0});
        for (int i = 0; i < r_; ++i) {
            cd acc{0, 0};
            for (int j = 0; j < c_; ++j) acc += (*this)(i, j) * x[j];
            y[i] = acc;
        }
        return y;
    }

  private:
    void check_same(const Matrix& o) const {
        if (r_ != o.r_ || c_ != o.c_) throw DimensionError("Matrix: shape mismatch");
    }

    int r_ = 0, c_ = 0;
    std::vector<cd> a_;
};

// ------------------------------------------------------------------- LU ---

struct Lu {
    Matrix lu;              // combined factors
    std::vector<int> perm;  // row permutation
    bool singular = false;
};

inline Lu lu_factor(Matrix m) {
    const int n = m.rows();
    if (m.cols() != n) throw DimensionError("lu_factor: square matrix required");
    Lu f;
    f.perm.resize(n);
    for (int i = 0; i < n; ++i) f.perm[i] = i;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(m(k, k));
        for (int i = k + 1; i < n; ++i)
            if (std::abs(m(i, k)) > best) best = std::abs(m(i, k)), piv = i;
        if (best == 0.0) {
            f.singular = true;
            f.lu = std::move(m);
            return f;
        }
        if (piv != k) {
            for (int j = 0; j < n; ++j) std::swap(m(k, j), m(piv, j));
            std::swap(f.perm[k], f.perm[piv]);
        }
        for (int i = k + 1; i < n; ++i) {
            cd l = m(i, k) / m(k, k);
            m(i, k) = l;
            for (int j = k + 1; j < n; ++j) m(i, j) -= l * m(k, j);
        }
    }
    f.lu = std::move(m);
    return f;
}

inline std::vector<cd> lu_solve(const Lu& f, const std::vector<cd>& b) {
    const int n = f.lu.rows();
    if (f.singular) throw SolverError("lu_solve: singular matrix");
    std::vector<cd> x(n);
    for (int i = 0; i < n; ++i) x[i] = b[f.perm[i]];
    for (int i = 1; i < n; ++i)
        for (int j = 0; j < i; ++j) x[i] -= f.lu(i, j) * x[j];
    for (int i = n - 1; i >= 0; --i) {
        for (int j = i + 1; j < n; ++j) x[i] -= f.lu(i, j) * x[j];
        x[i] /= f.lu(i, i);
    }
    return x;
}

inline Matrix solve(const Matrix& a, const Matrix& b) {
    Lu f = lu_factor(a);
    Matrix x(a.rows(), b.cols());
    std::vector<cd> col(a.rows());
    for (int j = 0; j < b.cols(); ++j) {
        for (int i = 0; i < a.rows(); ++i) col[i] = b(i, j);
        auto s = lu_solve(f, col);
        for (int i = 0; i < a.rows(); ++i) x(i, j) = s[i];
    }
    return x;
}

inline Matrix inverse(const Matrix& a) { return solve(a, Matrix::identity(a.rows())); }

// ------------------------------------------------------------------ SVD ---
// One-sided Jacobi. Adequate for the modest sizes here, and it delivers the
// tiny singular values cleanly (kernel detection relies on that).

struct Svd {
    Matrix u;                    // r x c (economy)
    std::vector<double> sigma;   // descending
    Matrix v;                    // c x c
};

inline Svd svd(Matrix m) {
    const int r = m.rows(), c = m.cols();
    bool transposed = false;
    if (r < c) {
        m = m.adjoint();
        transposed = true;
    }
    const int rows = m.rows(), cols = m.cols();
    Matrix v = Matrix::identity(cols);
    const double eps = 1e-30;
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < cols - 1; ++p) {
            for (int q = p + 1; q < cols; ++q) {
                cd cpq{0, 0};
                double app = 0.0, aqq = 0.0;
                for (int i = 0; i < rows; ++i) {
                    cpq += std::conj(m(i, p)) * m(i, q);
                    app += std::norm(m(i, p));
                    aqq += std::norm(m(i, q));
                }
                double ac = std::abs(cpq);
                off = std::max(off, ac / std::max(std::sqrt(app * aqq), eps));
                if (ac < eps || ac * ac < 1e-34 * app * aqq) continue;
                // complex Jacobi rotation zeroing the (p,q) Gram entry
                cd phase = cpq / ac;
                double tau = (aqq - app) / (2.0 * ac);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double cs = 1.0 / std::sqrt(1.0 + t * t);
                double sn = cs * t;
                for (int i = 0; i < rows; ++i) {
                    cd mp = m(i, p), mq = m(i, q);
                    m(i, p) = cs * mp - sn * std::conj(phase) * mq;
                    m(i, q) = sn * phase * mp + cs * mq;
                }
                for (int i = 0; i < cols; ++i) {
                    cd vp = v(i, p), vq = v(i, q);
                    v(i, p) = cs * vp - sn * std::conj(phase) * vq;
                    v(i, q) = sn * phase * vp + cs * vq;
                }
            }
        }
        if (off < 1e-15) break;
    }
    Svd out;
    out.sigma.resize(cols);
    Matrix u(rows, cols);
    for (int j = 0; j < cols; ++j) {
        double nrm = 0.0;
        for (int i = 0; i < rows; ++i) nrm += std::norm(m(i, j));
        nrm = std::sqrt(nrm);
        out.sigma[j] = nrm;
        for (int i = 0; i < rows; ++i) u(i, j) = nrm > 0 ? m(i, j) / nrm : cd{0, 0};
    }
    // sort descending
    std::vector<int> ord(cols);
    for (int i = 0; i < cols; ++i) ord[i] = i;
    std::sort(ord.begin(), ord.end(),
              [&](int a, int b) { return out.sigma[a] > out.sigma[b]; });
    Matrix us(rows, cols), vs(cols, cols);
    std::vector<double> ss(cols);
    for (int j = 0; j < cols; ++j) {
        ss[j] = out.sigma[ord[j]];
        for (int i = 0; i < rows; ++i) us(i, j) = u(i, ord[j]);
        for (int i = 0; i < cols; ++i) vs(i, j) = v(i, ord[j]);
    }
    out.sigma = std::move(ss);
    if (!transposed) {
        out.u = std::move(us);
        out.v = std::move(vs);
    } else {
        out.u = std::move(vs);
        out.v = std::move(us);
    }
    return out;
}

// Hermitian eigenvalues via the SVD of the shifted matrix would lose signs;
// small Hermitian matrices get a classic two-sided Jacobi instead.
inline std::vector<double> hermitian_eigenvalues(Matrix m) {
    const int n = m.rows();
    for (int sweep = 0; sweep < 60; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n - 1; ++p)
            for (int q = p + 1; q < n; ++q) off += std::norm(m(p, q));
        if (off < 1e-30) break;
        for (int p = 0; p < n - 1; ++p) {
            for (int q = p + 1; q < n; ++q) {
                cd apq = m(p, q);
                double ac = std::abs(apq);
                if (ac < 1e-18) continue;
                cd phase = apq / ac;
                double app = m(p, p).real(), aqq = m(q, q).real();
                double tau = (aqq - app) / (2.0 * ac);
                double t = (tau >= 0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
                double cs = 1.0 / std::sqrt(1.0 + t * t);
                double sn = cs * t;
                // G has G(p,p)=cs, G(p,q)=sn*phase, G(q,p)=-sn*conj(phase), G(q,q)=cs
                Matrix g = Matrix::identity(n);
                g(p, p) = cs;
                g(p, q) = sn * phase;
                g(q, p) = -sn * std::conj(phase);
                g(q, q) = cs;
                m = g.adjoint() * m * g;
            }
        }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = m(i, i).real();
    std::sort(ev.begin(), ev.end());
    return ev;
}

} // namespace stokeslp::la

#endif
