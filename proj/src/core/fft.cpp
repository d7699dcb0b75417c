#include "stokeslp/core/fft.hpp"

#include <cmath>
#include <map>
#include <mutex>

#include "stokeslp/simd/complex_kernels.hpp"
#include "stokeslp/simd/dispatch.hpp"

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define STOKESLP_X86 1
#endif

namespace stokeslp {
namespace {

// Twiddle tables w_j = exp(-2 pi i j / len) for every stage length. Tables
// are immutable once built; the cache lookup is mutex-guarded so transforms
// can run concurrently.
struct TwiddleSet {
    // twiddles[s] has length 2^s (for stage length 2^{s+1})
    std::vector<std::vector<cd>> stages;
};

const TwiddleSet& twiddles_for(std::size_t n) {
    static std::mutex mu;
    static std::map<std::size_t, TwiddleSet> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(n);
    if (it != cache.end()) return it->second;
    TwiddleSet ts;
    for (std::size_t len = 2; len <= n; len <<= 1) {
        std::vector<cd> w(len / 2);
        for (std::size_t j = 0; j < len / 2; ++j) {
            double ang = -kTwoPi * static_cast<double>(j) / static_cast<double>(len);
            w[j] = cd{std::cos(ang), std::sin(ang)};
        }
        ts.stages.push_back(std::move(w));
    }
    return cache.emplace(n, std::move(ts)).first->second;
}

void bit_reverse(cd* a, std::size_t n) {
    for (std::size_t i = 1, j = 0; i < n; ++i) {
        std::size_t bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(a[i], a[j]);
    }
}

void stage_scalar(cd* a, std::size_t n, std::size_t len, const cd* w, bool inverse) {
    const std::size_t half = len / 2;
    for (std::size_t i = 0; i < n; i += len) {
        for (std::size_t j = 0; j < half; ++j) {
            cd tw = inverse ? std::conj(w[j]) : w[j];
            cd t = tw * a[i + j + half];
            a[i + j + half] = a[i + j] - t;
            a[i + j] += t;
        }
    }
}

#ifdef STOKESLP_X86

__attribute__((target("avx2,fma"))) inline __m256d cmul2(__m256d x, __m256d y) {
    __m256d xr = _mm256_movedup_pd(x);
    __m256d xi = _mm256_permute_pd(x, 0xF);
    __m256d ys = _mm256_permute_pd(y, 0x5);
    return _mm256_fmaddsub_pd(xr, y, _mm256_mul_pd(xi, ys));
}

__attribute__((target("avx2,fma"))) void stage_avx2(cd* a, std::size_t n, std::size_t len,
                                                    const cd* w, bool inverse) {
    const std::size_t half = len / 2;
    if (half < 2) {
        stage_scalar(a, n, len, w, inverse);
        return;
    }
    const __m256d conj_mask = _mm256_setr_pd(1.0, -1.0, 1.0, -1.0);
    double* ad = reinterpret_cast<double*>(a);
    const double* wd = reinterpret_cast<const double*>(w);
    for (std::size_t i = 0; i < n; i += len) {
        for (std::size_t j = 0; j + 2 <= half; j += 2) {
            __m256d vw = _mm256_loadu_pd(wd + 2 * j);
            if (inverse) vw = _mm256_mul_pd(vw, conj_mask);
            __m256d hi = _mm256_loadu_pd(ad + 2 * (i + j + half));
            __m256d lo = _mm256_loadu_pd(ad + 2 * (i + j));
            __m256d t = cmul2(vw, hi);
            _mm256_storeu_pd(ad + 2 * (i + j + half), _mm256_sub_pd(lo, t));
            _mm256_storeu_pd(ad + 2 * (i + j), _mm256_add_pd(lo, t));
        }
    }
}

#endif

void run_stage(cd* a, std::size_t n, std::size_t len, const cd* w, bool inverse) {
#ifdef STOKESLP_X86
    if (simd::active_level() == simd::Level::avx2) {
        stage_avx2(a, n, len, w, inverse);
        return;
    }
#endif
    stage_scalar(a, n, len, w, inverse);
}

} // namespace

namespace fft {

void transform(cd* a, std::size_t n, bool inverse) {
    if (n == 0 || (n & (n - 1)) != 0) throw DimensionError("fft: length must be a power of two");
    if (n == 1) return;
    const TwiddleSet& ts = twiddles_for(n);
    bit_reverse(a, n);
    int s = 0;
    for (std::size_t len = 2; len <= n; len <<= 1, ++s)
        run_stage(a, n, len, ts.stages[s].data(), inverse);
}

namespace {

// transform along one axis of a dim-dimensional cube of side N
void transform_axis(cd* data, int dim, int N, int axis, bool inverse) {
    std::size_t total = 1;
    for (int d = 0; d < dim; ++d) total *= static_cast<std::size_t>(N);
    std::size_t stride = 1;
    for (int d = dim - 1; d > axis; --d) stride *= static_cast<std::size_t>(N);

    if (stride == 1) {
        for (std::size_t off = 0; off < total; off += N) transform(data + off, N, inverse);
        return;
    }
    std::vector<cd> scratch(N);
    const std::size_t block = stride * static_cast<std::size_t>(N);
    for (std::size_t base = 0; base < total; base += block) {
        for (std::size_t s = 0; s < stride; ++s) {
            cd* p = data + base + s;
            for (int k = 0; k < N; ++k) scratch[k] = p[k * stride];
            transform(scratch.data(), N, inverse);
            for (int k = 0; k < N; ++k) p[k * stride] = scratch[k];
        }
    }
}

} // namespace

SpectralField forward(const GridField& f) {
    const TorusGrid& g = f.grid();
    SpectralField out(g, f.comps());
    out.raw() = f.raw();
    for (int c = 0; c < f.comps(); ++c)
        for (int axis = 0; axis < g.dim(); ++axis)
            transform_axis(out.data(c), g.dim(), g.npts(), axis, /*inverse=*/false);
    double scl = 1.0 / static_cast<double>(g.total());
    simd::scale(out.raw().data(), cd{scl, 0.0}, out.raw().size());
    return out;
}

GridField inverse(const SpectralField& f) {
    const TorusGrid& g = f.grid();
    GridField out(g, f.comps());
    out.raw() = f.raw();
    for (int c = 0; c < f.comps(); ++c)
        for (int axis = 0; axis < g.dim(); ++axis)
            transform_axis(out.data(c), g.dim(), g.npts(), axis, /*inverse=*/true);
    return out;
}

} // namespace fft

bool conjugate_symmetric(const SpectralField& f, double atol) {
    const TorusGrid& g = f.grid();
    const std::size_t total = g.total();
    for (int c = 0; c < f.comps(); ++c) {
        for (std::size_t idx = 0; idx < total; ++idx) {
            auto b = g.bins(idx);
            std::array<int, 3> nb{0, 0, 0};
            for (int d = 0; d < g.dim(); ++d) nb[d] = g.bin_of(-g.signed_mode(b[d]));
            bool rep = true; // -xi representable (xi = -N/2 maps outside the grid)
            for (int d = 0; d < g.dim(); ++d)
                if (g.signed_mode(b[d]) == -g.npts() / 2) rep = false;
            if (!rep) continue;
            cd v = f.at(c, idx);
            cd w = f.at(c, g.flat(nb));
            if (std::abs(v - std::conj(w)) > atol) return false;
        }
    }
    return true;
}

} // namespace stokeslp
