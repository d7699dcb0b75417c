#ifndef STOKESLP_OPS_PARAMS_HPP
#define STOKESLP_OPS_PARAMS_HPP

#include <cmath>
#include <optional>
#include <string>

#include "stokeslp/core/field.hpp"

namespace stokeslp {

// A nonnegative coefficient that is either a constant or a smooth profile of
// x_n alone. The bump profile is cos^{2p} on its support, so it vanishes
// identically outside [center - width, center + width] yet its Fourier
// coefficients decay like k^{-2p-1}.
class Coefficient {
  public:
    Coefficient() = default;
    static Coefficient constant(double v) {
        Coefficient c;
        c.const_ = v;
        return c;
    }
    static Coefficient bump(double amplitude, double center, double width, int power = 10) {
        Coefficient c;
        c.const_ = 0.0;
        c.amp_ = amplitude;
        c.center_ = center;
        c.width_ = width;
        c.power_ = power;
        return c;
    }

    bool is_constant() const { return amp_ == 0.0; }
    double constant_value() const { return const_; }

    double operator()(double xn) const {
        double v = const_;
        if (amp_ != 0.0) {
            double d = std::remainder(xn - center_, kTwoPi);
            if (std::abs(d) < width_) {
                double c = std::cos(0.5 * M_PI * d / width_);
                v += amp_ * std::pow(c * c, power_);
            }
        }
        return v;
    }

    double max_value() const { return const_ + amp_; }

    // identically zero / strictly positive somewhere, decided exactly from
    // the parameters (no sampling ambiguity)
    bool identically_zero() const { return const_ == 0.0 && amp_ == 0.0; }
    bool not_identically_zero() const { return !identically_zero(); }

    // zero on the open set (lo, hi) mod 2pi?
    bool zero_on(double lo, double hi) const {
        if (const_ != 0.0) return false;
        if (amp_ == 0.0) return true;
        // support is [center - width, center + width]
        for (double s = -kTwoPi; s <= kTwoPi; s += kTwoPi) {
            double a = center_ - width_ + s, b = center_ + width_ + s;
            if (a < hi && b > lo) return false;
        }
        return true;
    }

    double amplitude() const { return amp_; }
    double center() const { return center_; }
    double width() const { return width_; }
    int power() const { return power_; }

  private:
    double const_ = 0.0;
    double amp_ = 0.0;
    double center_ = 0.0;
    double width_ = 0.0;
    int power_ = 10;
};

// One boundary component of the strip: the slice {x_n = height} with the
// outer normal of Omega = {0 < x_n < L_s} along +-e_n.
struct BoundaryComponent {
    double height = 0.0;
    int normal_sign = -1; // nu = normal_sign * e_n
};

// Kernel classification on the flat torus (Killing fields = constants):
//   case1: V == 0, V0 == 0        -> dim n + 1
//   case2: V == 0, V0 != 0        -> dim n
//   case3: V != 0, V0 == 0        -> dim 1
//   case4: V != 0, V0 != 0        -> dim 0
enum class KernelCase { case1, case2, case3, case4 };

struct StokesParams {
    TorusGrid grid;
    Coefficient V;
    Coefficient V0;
    double strip_height = M_PI; // L_s

    StokesParams() = default;
    StokesParams(const TorusGrid& g, Coefficient v, Coefficient v0, double ls = M_PI)
        : grid(g), V(v), V0(v0), strip_height(ls) {
        if (ls <= 0.0 || ls >= kTwoPi) throw ArgumentError("StokesParams: strip height");
    }

    BoundaryComponent gamma0() const { return {0.0, -1}; }
    BoundaryComponent gamma1() const { return {strip_height, +1}; }
    BoundaryComponent component(int c) const { return c == 0 ? gamma0() : gamma1(); }

    // smooth global extension of the outer normal field: nu_ext = -cos(pi
    // x_n / L_s scaled) e_n would only fit L_s = pi; for general heights use
    // -cos(pi x_n / L_s) on [0, L_s] continued smoothly; the default strip
    // (L_s = pi) gives nu_ext(x) = -cos(x_n) e_n.
    double normal_extension(double xn) const { return -std::cos(M_PI * xn / strip_height); }

    bool constant_coefficients() const { return V.is_constant() && V0.is_constant(); }

    KernelCase classify() const {
        auto effectively_zero = [](const Coefficient& c) {
            double m = c.max_value();
            if (m == 0.0) return true;
            if (m < 1e-10)
                throw ClassificationError(
                    "coefficient is numerically ~0 but not exactly 0; pass 0 explicitly");
            return false;
        };
        bool v0z = effectively_zero(V);
        bool v00z = effectively_zero(V0);
        if (v0z && v00z) return KernelCase::case1;
        if (v0z) return KernelCase::case2;
        if (v00z) return KernelCase::case3;
        return KernelCase::case4;
    }

    int kernel_dim() const {
        switch (classify()) {
        case KernelCase::case1: return grid.dim() + 1;
        case KernelCase::case2: return grid.dim();
        case KernelCase::case3: return 1;
        case KernelCase::case4: return 0;
        }
        return 0;
    }

    // Assumption bookkeeping for the invertibility theorems: with Killing
    // fields present on a torus, V must not vanish identically; V0 must not
    // vanish identically on the complement component Omega_-.
    bool v_not_identically_zero() const { return V.not_identically_zero(); }
    bool v0_zero_on_omega() const { return V0.zero_on(0.0, strip_height); }
    bool v0_active_on_complement() const {
        return !V0.zero_on(strip_height, kTwoPi);
    }
};

} // namespace stokeslp

#endif
