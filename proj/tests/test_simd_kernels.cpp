#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>
#include <vector>

#include "stokeslp/simd/complex_kernels.hpp"
#include "stokeslp/simd/dispatch.hpp"

using namespace stokeslp;
using simd::cd;

namespace {

std::vector<cd> random_vec(std::size_t n, std::mt19937_64& rng) {
    std::normal_distribution<double> d(0.0, 1.0);
    std::vector<cd> v(n);
    for (auto& z : v) z = cd{d(rng), d(rng)};
    return v;
}

double max_err(const std::vector<cd>& a, const std::vector<cd>& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

} // namespace

// Every SIMD variant must agree with the scalar reference on random data,
// including odd lengths that exercise the remainder loops.
TEST_CASE("avx2 kernels match scalar reference") {
    if (!simd::cpu_has_avx2()) {
        MESSAGE("CPU lacks AVX2; dispatch stays on scalar");
        return;
    }
    std::mt19937_64 rng(42);
    for (std::size_t n : {std::size_t(1), std::size_t(2), std::size_t(7), std::size_t(64),
                          std::size_t(1023)}) {
        auto x = random_vec(n, rng);
        auto y0 = random_vec(n, rng);
        cd alpha{0.3, -1.1};

        auto y1 = y0;
        simd::detail::scale_scalar(y0.data(), alpha, n);
        simd::detail::scale_avx2(y1.data(), alpha, n);
        CHECK(max_err(y0, y1) < 1e-14);

        auto z0 = y0, z1 = y0;
        simd::detail::axpy_scalar(z0.data(), alpha, x.data(), n);
        simd::detail::axpy_avx2(z1.data(), alpha, x.data(), n);
        CHECK(max_err(z0, z1) < 1e-14);

        std::vector<cd> h0(n), h1(n);
        simd::detail::hadamard_scalar(h0.data(), x.data(), z0.data(), n);
        simd::detail::hadamard_avx2(h1.data(), x.data(), z0.data(), n);
        CHECK(max_err(h0, h1) < 1e-14);

        auto m0 = x, m1 = x;
        simd::detail::mul_inplace_scalar(m0.data(), z0.data(), n);
        simd::detail::mul_inplace_avx2(m1.data(), z0.data(), n);
        CHECK(max_err(m0, m1) < 1e-14);

        cd d0 = simd::detail::dot_scalar(x.data(), z0.data(), n);
        cd d1 = simd::detail::dot_avx2(x.data(), z0.data(), n);
        CHECK(std::abs(d0 - d1) < 1e-12 * (1.0 + std::abs(d0)));

        std::vector<double> w(n);
        std::uniform_real_distribution<double> ud(0.0, 2.0);
        for (auto& u : w) u = ud(rng);
        double n0 = simd::detail::weighted_norm2_scalar(w.data(), x.data(), n);
        double n1 = simd::detail::weighted_norm2_avx2(w.data(), x.data(), n);
        CHECK(n0 == doctest::Approx(n1).epsilon(1e-12));
    }
}

TEST_CASE("batched block application matches reference") {
    if (!simd::cpu_has_avx2()) return;
    std::mt19937_64 rng(7);
    for (int r : {2, 3, 4}) {
        int c = r;
        std::size_t n = 129;
        auto mats = random_vec(n * r * c, rng);
        auto in = random_vec(n * c, rng);
        std::vector<cd> out0(n * r), out1(n * r);
        simd::detail::apply_block_batch_scalar(mats.data(), r, c, in.data(), out0.data(), n);
        simd::detail::apply_block_batch_avx2(mats.data(), r, c, in.data(), out1.data(), n);
        CHECK(max_err(out0, out1) < 1e-13);
    }
}

TEST_CASE("dispatch honors forced level") {
    auto before = simd::active_level();
    simd::set_level(simd::Level::scalar);
    CHECK(simd::active_level() == simd::Level::scalar);
    simd::set_level(before);
}
