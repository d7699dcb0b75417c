#include "stokeslp/pot/rational.hpp"

#include <cmath>

namespace stokeslp::rational {

namespace {

// expand the denominator polynomial for the pole set
Poly denominator(const std::vector<Pole>& poles) {
    Poly d{{cd{1.0, 0.0}}};
    for (const auto& p : poles) {
        cd z = p.a == 0.0 ? cd{0.0, 0.0} : cd{0.0, p.sign * p.a};
        for (int m = 0; m < p.mult; ++m) d = d * Poly::from_root(z);
    }
    return d;
}

std::vector<double> nodes(int count, double node_scale) {
    // real nodes straddling zero, avoiding k = 0 (possible pole)
    const double h = std::max(1.0, node_scale);
    std::vector<double> xs;
    for (int s = 0; s < count; ++s)
        xs.push_back((s % 2 == 0 ? 1.0 : -1.0) * (std::floor(s / 2.0) + 0.5) * h);
    return xs;
}

ScalarDecomp decompose_from_samples(const std::vector<double>& xs, const std::vector<cd>& ys,
                                    const std::vector<Pole>& poles, cd w0) {
    Poly d = denominator(poles);
    const int degD = d.deg();
    std::vector<cd> py(ys.size());
    for (std::size_t i = 0; i < ys.size(); ++i) py[i] = ys[i] * d.eval(cd{xs[i], 0.0});
    Poly p = interpolate(xs, py);

    ScalarDecomp out;
    out.w0 = w0;
    double scale = 1.0;
    for (const cd& v : p.c) scale = std::max(scale, std::abs(v));
    p.trim(1e-12 * scale);

    if (p.deg() > degD)
        throw InconsistentSymbolError("rational decomposition: multiplier grows at infinity");
    if (p.deg() == degD) {
        out.c0 = p.c.back() / d.c.back();
        p = p - out.c0 * d;
        if (static_cast<int>(p.c.size()) > degD) p.c.resize(degD ? degD : 1);
    }

    Poly dcur = d;
    for (const auto& pl : poles) {
        cd z = pl.a == 0.0 ? cd{0.0, 0.0} : cd{0.0, pl.sign * pl.a};
        for (int m = pl.mult; m >= 1; --m) {
            Poly rest = dcur;
            for (int j = 0; j < m; ++j) rest.deflate(z);
            cd r = p.eval(z) / rest.eval(z);
            if (pl.a == 0.0) {
                if (static_cast<int>(out.zero_terms.size()) < m)
                    out.zero_terms.resize(m, cd{0.0, 0.0});
                out.zero_terms[m - 1] += r;
            } else if (std::abs(r) != 0.0) {
                out.terms.push_back({pl.a, pl.sign, m, r});
            }
            p = p - r * rest;
            p.deflate(z);
            dcur.deflate(z);
        }
    }
    return out;
}

} // namespace

ScalarDecomp decompose_scalar(const std::function<cd(double)>& sampler,
                              const std::vector<Pole>& poles, cd w0, double node_scale) {
    Poly d = denominator(poles);
    std::vector<double> xs = nodes(d.deg() + 1, node_scale);
    std::vector<cd> ys;
    ys.reserve(xs.size());
    for (double x : xs) ys.push_back(sampler(x));
    return decompose_from_samples(xs, ys, poles, w0);
}

MatrixDecomp decompose_matrix(const std::function<Matrix(double)>& sampler, int rows, int cols,
                              const std::vector<Pole>& poles, const Matrix& w0,
                              double node_scale) {
    Poly d = denominator(poles);
    std::vector<double> xs = nodes(d.deg() + 1, node_scale);
    std::vector<Matrix> samples;
    samples.reserve(xs.size());
    for (double x : xs) samples.push_back(sampler(x));

    MatrixDecomp out;
    out.rows = rows;
    out.cols = cols;
    out.entries.reserve(static_cast<std::size_t>(rows) * cols);
    std::vector<cd> ys(xs.size());
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            for (std::size_t s = 0; s < xs.size(); ++s) ys[s] = samples[s](i, j);
            out.entries.push_back(decompose_from_samples(xs, ys, poles, w0(i, j)));
        }
    }
    return out;
}

} // namespace stokeslp::rational
