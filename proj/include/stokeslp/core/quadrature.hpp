#ifndef STOKESLP_CORE_QUADRATURE_HPP
#define STOKESLP_CORE_QUADRATURE_HPP

#include <complex>
#include <functional>

namespace stokeslp {

// Controls for the whole-line quadrature. decay_order is the (negative)
// power the integrand envelope falls off with; oscillation_freq declares a
// factor exp(i * freq * x) so the tail can be integrated by parts instead of
// power-law extrapolated.
struct QuadratureSpec {
    double abs_tol = 1e-12;
    double rel_tol = 1e-10;
    int max_subdivisions = 4000;
    double decay_order = -2.0;
    double oscillation_freq = 0.0;

    void validate() const;
};

struct QuadResult {
    std::complex<double> value{0.0, 0.0};
    double error_estimate = 0.0;
    int panels = 0;
};

// integral of f over [a, b], adaptive bisection with 15-point Gauss panels
QuadResult integrate_interval(const std::function<std::complex<double>(double)>& f, double a,
                              double b, const QuadratureSpec& spec);

// integral of f over the whole real line: adaptive core window plus a tail
// handled by Richardson extrapolation in the window size (decay hint) or by
// asymptotic integration by parts (declared oscillation). Throws
// QuadratureError when the tolerance cannot be certified.
QuadResult line_quadrature(const std::function<std::complex<double>(double)>& f,
                           const QuadratureSpec& spec);

} // namespace stokeslp

#endif
