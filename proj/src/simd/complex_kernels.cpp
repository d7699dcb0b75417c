#include "stokeslp/simd/complex_kernels.hpp"
#include "stokeslp/simd/dispatch.hpp"

#include <cassert>

#if defined(__x86_64__) || defined(__i386__)
#include <immintrin.h>
#define STOKESLP_X86 1
#endif

namespace stokeslp::simd {
namespace detail {

// ---------------------------------------------------------------- scalar ---

void scale_scalar(cd* y, cd a, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= a;
}

void axpy_scalar(cd* y, cd a, const cd* x, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void hadamard_scalar(cd* y, const cd* a, const cd* b, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] = a[i] * b[i];
}

void mul_inplace_scalar(cd* y, const cd* w, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i) y[i] *= w[i];
}

cd dot_scalar(const cd* a, const cd* b, std::size_t n) {
    cd s{0.0, 0.0};
    for (std::size_t i = 0; i < n; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

double weighted_norm2_scalar(const double* w, const cd* a, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += w[i] * std::norm(a[i]);
    return s;
}

void apply_block_batch_scalar(const cd* mats, int r, int c, const cd* in, cd* out,
                              std::size_t n) {
    const int rc = r * c;
    for (std::size_t i = 0; i < n; ++i) {
        const cd* m = mats + static_cast<std::size_t>(i) * rc;
        for (int ro = 0; ro < r; ++ro) {
            cd acc{0.0, 0.0};
            for (int co = 0; co < c; ++co) acc += m[ro * c + co] * in[co * n + i];
            out[ro * n + i] = acc;
        }
    }
}

// ------------------------------------------------------------------ avx2 ---
// One __m256d holds two complex doubles as [re0, im0, re1, im1].

#ifdef STOKESLP_X86

__attribute__((target("avx2,fma"))) static inline __m256d cmul2(__m256d a, __m256d b) {
    __m256d ar = _mm256_movedup_pd(a);       // [ar0, ar0, ar1, ar1]
    __m256d ai = _mm256_permute_pd(a, 0xF);  // [ai0, ai0, ai1, ai1]
    __m256d bs = _mm256_permute_pd(b, 0x5);  // [bi0, br0, bi1, br1]
    return _mm256_fmaddsub_pd(ar, b, _mm256_mul_pd(ai, bs));
}

// conj(a) * b per lane pair
__attribute__((target("avx2,fma"))) static inline __m256d cmulc2(__m256d a, __m256d b) {
    __m256d ar = _mm256_movedup_pd(a);
    __m256d ai = _mm256_permute_pd(a, 0xF);
    __m256d bs = _mm256_permute_pd(b, 0x5);
    return _mm256_fmsubadd_pd(ar, b, _mm256_mul_pd(ai, bs));
}

__attribute__((target("avx2,fma"))) void scale_avx2(cd* y, cd a, std::size_t n) {
    const __m256d va = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
    std::size_t i = 0;
    double* yd = reinterpret_cast<double*>(y);
    for (; i + 2 <= n; i += 2) {
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmul2(vy, va));
    }
    for (; i < n; ++i) y[i] *= a;
}

__attribute__((target("avx2,fma"))) void axpy_avx2(cd* y, cd a, const cd* x, std::size_t n) {
    const __m256d va = _mm256_setr_pd(a.real(), a.imag(), a.real(), a.imag());
    std::size_t i = 0;
    double* yd = reinterpret_cast<double*>(y);
    const double* xd = reinterpret_cast<const double*>(x);
    for (; i + 2 <= n; i += 2) {
        __m256d vx = _mm256_loadu_pd(xd + 2 * i);
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, _mm256_add_pd(vy, cmul2(va, vx)));
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

__attribute__((target("avx2,fma"))) void hadamard_avx2(cd* y, const cd* a, const cd* b,
                                                       std::size_t n) {
    std::size_t i = 0;
    double* yd = reinterpret_cast<double*>(y);
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(ad + 2 * i);
        __m256d vb = _mm256_loadu_pd(bd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmul2(va, vb));
    }
    for (; i < n; ++i) y[i] = a[i] * b[i];
}

__attribute__((target("avx2,fma"))) void mul_inplace_avx2(cd* y, const cd* w, std::size_t n) {
    std::size_t i = 0;
    double* yd = reinterpret_cast<double*>(y);
    const double* wd = reinterpret_cast<const double*>(w);
    for (; i + 2 <= n; i += 2) {
        __m256d vy = _mm256_loadu_pd(yd + 2 * i);
        __m256d vw = _mm256_loadu_pd(wd + 2 * i);
        _mm256_storeu_pd(yd + 2 * i, cmul2(vy, vw));
    }
    for (; i < n; ++i) y[i] *= w[i];
}

__attribute__((target("avx2,fma"))) cd dot_avx2(const cd* a, const cd* b, std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const double* ad = reinterpret_cast<const double*>(a);
    const double* bd = reinterpret_cast<const double*>(b);
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(ad + 2 * i);
        __m256d vb = _mm256_loadu_pd(bd + 2 * i);
        acc = _mm256_add_pd(acc, cmulc2(va, vb));
    }
    alignas(32) double buf[4];
    _mm256_store_pd(buf, acc);
    cd s{buf[0] + buf[2], buf[1] + buf[3]};
    for (; i < n; ++i) s += std::conj(a[i]) * b[i];
    return s;
}

__attribute__((target("avx2,fma"))) double weighted_norm2_avx2(const double* w, const cd* a,
                                                               std::size_t n) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    const double* ad = reinterpret_cast<const double*>(a);
    for (; i + 2 <= n; i += 2) {
        __m256d va = _mm256_loadu_pd(ad + 2 * i);
        __m256d ww = _mm256_setr_pd(w[i], w[i], w[i + 1], w[i + 1]);
        acc = _mm256_fmadd_pd(_mm256_mul_pd(va, va), ww, acc);
    }
    alignas(32) double buf[4];
    _mm256_store_pd(buf, acc);
    double s = buf[0] + buf[1] + buf[2] + buf[3];
    for (; i < n; ++i) s += w[i] * std::norm(a[i]);
    return s;
}

__attribute__((target("avx2,fma"))) void apply_block_batch_avx2(const cd* mats, int r, int c,
                                                                const cd* in, cd* out,
                                                                std::size_t n) {
    const int rc = r * c;
    const double* md = reinterpret_cast<const double*>(mats);
    const double* ind = reinterpret_cast<const double*>(in);
    double* outd = reinterpret_cast<double*>(out);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        for (int ro = 0; ro < r; ++ro) {
            __m256d acc = _mm256_setzero_pd();
            for (int co = 0; co < c; ++co) {
                // matrix entries of items i and i+1, packed into one vector
                __m128d m0 = _mm_loadu_pd(md + 2 * (i * rc + ro * c + co));
                __m128d m1 = _mm_loadu_pd(md + 2 * ((i + 1) * rc + ro * c + co));
                __m256d vm = _mm256_set_m128d(m1, m0);
                __m256d vi = _mm256_loadu_pd(ind + 2 * (static_cast<std::size_t>(co) * n + i));
                acc = _mm256_add_pd(acc, cmul2(vm, vi));
            }
            _mm256_storeu_pd(outd + 2 * (static_cast<std::size_t>(ro) * n + i), acc);
        }
    }
    for (; i < n; ++i) {
        const cd* m = mats + static_cast<std::size_t>(i) * rc;
        for (int ro = 0; ro < r; ++ro) {
            cd acc{0.0, 0.0};
            for (int co = 0; co < c; ++co) acc += m[ro * c + co] * in[co * n + i];
            out[ro * n + i] = acc;
        }
    }
}

#else // !STOKESLP_X86: route the avx2 names to the reference code

void scale_avx2(cd* y, cd a, std::size_t n) { scale_scalar(y, a, n); }
void axpy_avx2(cd* y, cd a, const cd* x, std::size_t n) { axpy_scalar(y, a, x, n); }
void hadamard_avx2(cd* y, const cd* a, const cd* b, std::size_t n) { hadamard_scalar(y, a, b, n); }
void mul_inplace_avx2(cd* y, const cd* w, std::size_t n) { mul_inplace_scalar(y, w, n); }
cd dot_avx2(const cd* a, const cd* b, std::size_t n) { return dot_scalar(a, b, n); }
double weighted_norm2_avx2(const double* w, const cd* a, std::size_t n) {
    return weighted_norm2_scalar(w, a, n);
}
void apply_block_batch_avx2(const cd* m, int r, int c, const cd* in, cd* out, std::size_t n) {
    apply_block_batch_scalar(m, r, c, in, out, n);
}

#endif

} // namespace detail

// ------------------------------------------------------------- dispatch ---

void scale(cd* y, cd a, std::size_t n) {
    active_level() == Level::avx2 ? detail::scale_avx2(y, a, n) : detail::scale_scalar(y, a, n);
}

void axpy(cd* y, cd a, const cd* x, std::size_t n) {
    active_level() == Level::avx2 ? detail::axpy_avx2(y, a, x, n)
                                  : detail::axpy_scalar(y, a, x, n);
}

void hadamard(cd* y, const cd* a, const cd* b, std::size_t n) {
    active_level() == Level::avx2 ? detail::hadamard_avx2(y, a, b, n)
                                  : detail::hadamard_scalar(y, a, b, n);
}

void mul_inplace(cd* y, const cd* w, std::size_t n) {
    active_level() == Level::avx2 ? detail::mul_inplace_avx2(y, w, n)
                                  : detail::mul_inplace_scalar(y, w, n);
}

cd dot(const cd* a, const cd* b, std::size_t n) {
    return active_level() == Level::avx2 ? detail::dot_avx2(a, b, n)
                                         : detail::dot_scalar(a, b, n);
}

double weighted_norm2(const double* w, const cd* a, std::size_t n) {
    return active_level() == Level::avx2 ? detail::weighted_norm2_avx2(w, a, n)
                                         : detail::weighted_norm2_scalar(w, a, n);
}

void apply_block_batch(const cd* mats, int r, int c, const cd* in, cd* out, std::size_t n) {
    active_level() == Level::avx2 ? detail::apply_block_batch_avx2(mats, r, c, in, out, n)
                                  : detail::apply_block_batch_scalar(mats, r, c, in, out, n);
}

} // namespace stokeslp::simd
