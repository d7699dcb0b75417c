#include "stokeslp/core/quadrature.hpp"

#include <cmath>
#include <vector>

#include "stokeslp/core/errors.hpp"

namespace stokeslp {
namespace {

using std::complex;

// Gauss-Legendre nodes/weights on [-1,1], generated once by Newton iteration
// on the Legendre recurrence (no typed-in tables).
struct GaussRule {
    std::vector<double> x, w;
    explicit GaussRule(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-16) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = t;
            w[i] = 2.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

const GaussRule& gl15() {
    static GaussRule rule(15);
    return rule;
}

complex<double> panel(const std::function<complex<double>(double)>& f, double a, double b) {
    const GaussRule& r = gl15();
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    complex<double> s{0.0, 0.0};
    for (std::size_t i = 0; i < r.x.size(); ++i) s += r.w[i] * f(mid + half * r.x[i]);
    return half * s;
}

} // namespace

void QuadratureSpec::validate() const {
    if (abs_tol <= 0.0 || rel_tol <= 0.0) throw ArgumentError("QuadratureSpec: tolerances must be > 0");
    if (max_subdivisions < 16) throw ArgumentError("QuadratureSpec: max_subdivisions < 16");
}

QuadResult integrate_interval(const std::function<complex<double>(double)>& f, double a, double b,
                              const QuadratureSpec& spec) {
    spec.validate();
    struct Node {
        double a, b;
        complex<double> whole;
        int depth;
    };
    QuadResult res;
    std::vector<Node> stack{{a, b, panel(f, a, b), 0}};
    int used = 1;
    const double total_len = b - a;
    double tol = spec.abs_tol;
    while (!stack.empty()) {
        Node nd = stack.back();
        stack.pop_back();
        double m = 0.5 * (nd.a + nd.b);
        complex<double> left = panel(f, nd.a, m);
        complex<double> right = panel(f, m, nd.b);
        used += 2;
        double err = std::abs(nd.whole - left - right);
        double budget = tol * std::max((nd.b - nd.a) / total_len, 1e-12);
        // round-off floor: the two-half estimate cannot resolve below a few
        // ulps of the local magnitude
        double floor = 4e-16 * (std::abs(left) + std::abs(right));
        if (err <= budget || err <= floor || nd.depth >= 48) {
            res.value += left + right;
            res.error_estimate += err;
        } else {
            if (used > spec.max_subdivisions)
                throw QuadratureError("integrate_interval: subdivision budget exhausted",
                                      res.error_estimate + err);
            stack.push_back({nd.a, m, left, nd.depth + 1});
            stack.push_back({m, nd.b, right, nd.depth + 1});
        }
    }
    res.panels = used;
    return res;
}

namespace {

// asymptotic tail  int_T^inf g(x) e^{i t x} dx  by three integrations by parts
complex<double> oscillatory_tail(const std::function<complex<double>(double)>& f, double T,
                                 double t) {
    auto g = [&](double x) { return f(x) * std::exp(complex<double>(0.0, -t * x)); };
    const double h = 0.02 * std::abs(T);
    complex<double> g0 = g(T);
    complex<double> gp = (g(T + h) - g(T - h)) / (2.0 * h);
    complex<double> gpp = (g(T + h) - 2.0 * g0 + g(T - h)) / (h * h);
    complex<double> it{0.0, t};
    complex<double> e = std::exp(complex<double>(0.0, t * T));
    return e * (-g0 / it + gp / (it * it) - gpp / (it * it * it));
}

} // namespace

QuadResult line_quadrature(const std::function<complex<double>(double)>& f,
                           const QuadratureSpec& spec) {
    spec.validate();
    const double t = spec.oscillation_freq;
    const bool oscillatory = std::abs(t) > 1e-9;

    // the by-parts tail is asymptotic in 1/(t T); start far enough out that
    // the window already covers many oscillations
    double T = oscillatory ? std::min(1e6, std::max(16.0, 32.0 / std::abs(t))) : 16.0;
    QuadResult core = integrate_interval(f, -T, T, spec);
    complex<double> prev_total{0.0, 0.0};
    bool have_prev = false;
    int grow = 0;
    complex<double> extrap = core.value;
    double err = core.error_estimate;

    if (oscillatory) {
        auto fr = [&](double x) { return f(-x); };
        for (; grow < 16; ++grow) {
            complex<double> tail_p = oscillatory_tail(f, T, t);
            complex<double> tail_m = oscillatory_tail(fr, T, -t);
            complex<double> total = core.value + tail_p + tail_m;
            if (have_prev) {
                double diff = std::abs(total - prev_total);
                if (diff <= std::max(spec.abs_tol, spec.rel_tol * std::abs(total))) {
                    return {total, diff + core.error_estimate, core.panels};
                }
            }
            prev_total = total;
            have_prev = true;
            QuadResult add_l = integrate_interval(f, -2.0 * T, -T, spec);
            QuadResult add_r = integrate_interval(f, T, 2.0 * T, spec);
            core.value += add_l.value + add_r.value;
            core.error_estimate += add_l.error_estimate + add_r.error_estimate;
            core.panels += add_l.panels + add_r.panels;
            T *= 2.0;
        }
        throw QuadratureError("line_quadrature: oscillatory tail did not settle",
                              std::abs(prev_total - core.value));
    }

    // power-law tail: window doubling plus Richardson with the decay hint
    const double r = std::pow(2.0, spec.decay_order + 1.0);
    complex<double> a_prev = core.value;
    complex<double> extrap_prev{0.0, 0.0};
    bool have_extrap = false;
    for (; grow < 24; ++grow) {
        QuadResult add_l = integrate_interval(f, -2.0 * T, -T, spec);
        QuadResult add_r = integrate_interval(f, T, 2.0 * T, spec);
        complex<double> a_cur = core.value + add_l.value + add_r.value;
        core.value = a_cur;
        core.error_estimate += add_l.error_estimate + add_r.error_estimate;
        core.panels += add_l.panels + add_r.panels;
        T *= 2.0;
        complex<double> d = a_cur - a_prev;
        extrap = a_cur + d * (r / (1.0 - r));
        a_prev = a_cur;
        if (have_extrap) {
            err = std::abs(extrap - extrap_prev) + core.error_estimate;
            if (err <= std::max(spec.abs_tol, spec.rel_tol * std::abs(extrap)))
                return {extrap, err, core.panels};
        }
        extrap_prev = extrap;
        have_extrap = true;
    }
    throw QuadratureError("line_quadrature: tail extrapolation did not converge", err);
}

} // namespace stokeslp
