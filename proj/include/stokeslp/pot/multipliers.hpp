#ifndef STOKESLP_POT_MULTIPLIERS_HPP
#define STOKESLP_POT_MULTIPLIERS_HPP

#include <span>
#include <vector>

#include "stokeslp/pot/rational.hpp"
#include "stokeslp/symbols/stokes.hpp"

// Per-mode matrices of the constant-coefficient operator and the rational
// multipliers of the layer potentials at a fixed transverse mode xi'. With
// beta = |xi|^2 the full mode matrix is
//   [ (beta + V) I + xi (x) xi   i xi ]
//   [ -i xi^T                    -V0  ]
// whose inverse has the closed blocks (q = (2V0+1) beta + V V0)
//   InvA = I/(beta+V) - xi (x) xi [ 1/((beta+V)(2beta+V)) + 1/((2beta+V) q) ]
//   InvB = i xi / q,  InvC = -i xi^T / q,  InvD = -(2beta+V)/q.
// Everything downstream (potential slices, boundary operators, tractions) is
// a composition of these with first-order factors, hence rational in xi_n
// with poles +- i a_j, a_j^2 = rho^2 + {V, V/2, V V0/(2V0+1)}.

namespace stokeslp::pot {

using la::Matrix;
using la::cd;

class ModeContext {
  public:
    // xiP: the n-1 transverse frequencies (doubles); n = xiP.size() + 1
    ModeContext(double V, double V0, std::vector<double> xiP)
        : V_(V), V0_(V0), xiP_(std::move(xiP)), n_(static_cast<int>(xiP_.size()) + 1) {
        rho2_ = 0.0;
        for (double v : xiP_) rho2_ += v * v;
    }

    int dim() const { return n_; }
    double rho() const { return std::sqrt(rho2_); }
    double V() const { return V_; }
    double V0() const { return V0_; }

    std::vector<double> xi(double k) const {
        std::vector<double> full(xiP_);
        full.push_back(k);
        return full;
    }

    // full operator matrix at (xi', k), including V in the velocity block
    Matrix mode_matrix(double k) const {
        auto full = xi(k);
        const double b = rho2_ + k * k;
        Matrix m(n_ + 1, n_ + 1);
        for (int i = 0; i < n_; ++i) {
            m(i, i) = b + V_;
            for (int j = 0; j < n_; ++j) m(i, j) += full[i] * full[j];
            m(i, n_) = cd{0.0, full[i]};
            m(n_, i) = cd{0.0, -full[i]};
        }
        m(n_, n_) = -V0_;
        return m;
    }

    // exact inverse for (xi', k) != 0
    Matrix inverse_blocks(double k) const {
        auto full = xi(k);
        const double b = rho2_ + k * k;
        if (b == 0.0) throw SingularPointError("inverse_blocks: xi = 0");
        const double q = (2.0 * V0_ + 1.0) * b + V_ * V0_;
        const double w = 1.0 / ((b + V_) * (2.0 * b + V_)) + 1.0 / ((2.0 * b + V_) * q);
        Matrix m(n_ + 1, n_ + 1);
        for (int i = 0; i < n_; ++i) {
            m(i, i) = 1.0 / (b + V_);
            for (int j = 0; j < n_; ++j) m(i, j) -= w * full[i] * full[j];
            m(i, n_) = cd{0.0, full[i] / q};
            m(n_, i) = cd{0.0, -full[i] / q};
        }
        m(n_, n_) = -(2.0 * b + V_) / q;
        return m;
    }

    // Moore-Penrose inverse of the zero-mode block diag(V,...,V,-V0)
    Matrix pseudo_zero() const {
        Matrix m(n_ + 1, n_ + 1);
        for (int i = 0; i < n_; ++i) m(i, i) = V_ > 0.0 ? 1.0 / V_ : 0.0;
        m(n_, n_) = V0_ > 0.0 ? -1.0 / V0_ : 0.0;
        return m;
    }

    // the three quadratic pole shifts; merged into a pole list for the
    // rational decomposition
    std::vector<rational::Pole> poles() const {
        double shifts[3] = {V_, 0.5 * V_, V_ * V0_ / (2.0 * V0_ + 1.0)};
        std::vector<double> a2s;
        std::vector<int> mult;
        for (double s : shifts) {
            double a2 = rho2_ + s;
            bool merged = false;
            for (std::size_t i = 0; i < a2s.size(); ++i) {
                if (std::abs(a2 - a2s[i]) <= 1e-12 * (1.0 + std::abs(a2))) {
                    ++mult[i];
                    merged = true;
                    break;
                }
            }
            if (!merged) {
                a2s.push_back(a2);
                mult.push_back(1);
            }
        }
        std::vector<rational::Pole> out;
        for (std::size_t i = 0; i < a2s.size(); ++i) {
            if (a2s[i] <= 1e-14 * (1.0 + rho2_)) {
                out.push_back({0.0, +1, 2 * mult[i]}); // k^{2m} at the origin
            } else {
                double a = std::sqrt(a2s[i]);
                out.push_back({a, +1, mult[i]});
                out.push_back({a, -1, mult[i]});
            }
        }
        return out;
    }

    double node_scale() const { return std::max(1.0, std::sqrt(rho2_ + V_ + 1.0)); }

    // ------------------------------------------------------ multipliers ---
    // nu vectors are n-dimensional (+-e_n for the strip).

    // i [ (xi . nu) I + nu (x) xi ]  (the -2 Dnu* factor acting on a slice
    // density), stacked over the pressure row nu^T: (n+1) x n
    Matrix conormal_adjoint_factor(double k, std::span<const double> nu) const {
        auto full = xi(k);
        double xn = 0.0;
        for (int i = 0; i < n_; ++i) xn += full[i] * nu[i];
        Matrix m(n_ + 1, n_);
        for (int i = 0; i < n_; ++i) {
            m(i, i) += cd{0.0, xn};
            for (int j = 0; j < n_; ++j) m(i, j) += cd{0.0, nu[i] * full[j]};
        }
        for (int j = 0; j < n_; ++j) m(n_, j) = nu[j];
        return m;
    }

    // -i [ (xi . nu) I + xi (x) nu ] : the -2 Dnu trace factor; together with
    // + nu p this turns a potential column into its conormal trace: n x (n+1)
    Matrix traction_factor(double k, std::span<const double> nu) const {
        auto full = xi(k);
        double xn = 0.0;
        for (int i = 0; i < n_; ++i) xn += full[i] * nu[i];
        Matrix m(n_, n_ + 1);
        for (int i = 0; i < n_; ++i) {
            m(i, i) += cd{0.0, -xn};
            for (int j = 0; j < n_; ++j) m(i, j) += cd{0.0, -full[i] * nu[j]};
            m(i, n_) = nu[i];
        }
        return m;
    }

    // single-layer potential multiplier (n+1) x n: columns = density comps
    Matrix single_potential(double k) const {
        Matrix inv = inverse_blocks(k);
        Matrix m(n_ + 1, n_);
        for (int i = 0; i <= n_; ++i)
            for (int j = 0; j < n_; ++j) m(i, j) = inv(i, j);
        return m;
    }

    // double-layer potential multiplier (n+1) x n for source normal nu_s
    Matrix double_potential(double k, std::span<const double> nu_s) const {
        return inverse_blocks(k) * conormal_adjoint_factor(k, nu_s);
    }

    // traction of the single/double layer: n x n
    Matrix traction_of_single(double k, std::span<const double> nu_b) const {
        return traction_factor(k, nu_b) * single_potential(k);
    }
    Matrix traction_of_double(double k, std::span<const double> nu_b,
                              std::span<const double> nu_s) const {
        return traction_factor(k, nu_b) * double_potential(k, nu_s);
    }

    // physical k = 0 values (pseudo-inverse aware); valid for rho = 0 too
    Matrix single_potential_zero() const {
        Matrix p = pseudo_zero();
        Matrix m(n_ + 1, n_);
        for (int i = 0; i <= n_; ++i)
            for (int j = 0; j < n_; ++j) m(i, j) = p(i, j);
        return m;
    }
    Matrix double_potential_zero(std::span<const double> nu_s) const {
        return pseudo_zero() * conormal_adjoint_factor(0.0, nu_s);
    }
    Matrix traction_of_single_zero(std::span<const double> nu_b) const {
        return traction_factor(0.0, nu_b) * single_potential_zero();
    }
    Matrix traction_of_double_zero(std::span<const double> nu_b,
                                   std::span<const double> nu_s) const {
        return traction_factor(0.0, nu_b) * double_potential_zero(nu_s);
    }

    bool zero_mode_regular() const { return rho2_ > 0.0; }

  private:
    double V_, V0_;
    std::vector<double> xiP_;
    int n_;
    double rho2_;
};

} // namespace stokeslp::pot

#endif
