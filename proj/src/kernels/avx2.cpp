#include "kernel_variants.hpp"

#include <immintrin.h>

#include <bit>
#include <cmath>

namespace wristml::kernels {
namespace {

inline double hsum(__m256d v) {
    const __m128d lo = _mm256_castpd256_pd128(v);
    const __m128d hi = _mm256_extractf128_pd(v, 1);
    const __m128d s = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(s, _mm_unpackhi_pd(s, s)));
}

void dense_f64(const double* act, std::size_t n_in, const double* w, std::size_t n_out, double* z) {
    const double* bias = w + n_in * n_out;
    std::size_t j = 0;
    for (; j + 4 <= n_out; j += 4) {
        __m256d acc = _mm256_loadu_pd(bias + j);
        for (std::size_t i = 0; i < n_in; ++i) {
            const __m256d a = _mm256_set1_pd(act[i]);
            acc = _mm256_add_pd(acc, _mm256_mul_pd(a, _mm256_loadu_pd(w + i * n_out + j)));
        }
        _mm256_storeu_pd(z + j, acc);
    }
    for (; j < n_out; ++j) {
        double acc = bias[j];
        for (std::size_t i = 0; i < n_in; ++i)
            acc = acc + act[i] * w[i * n_out + j];
        z[j] = acc;
    }
}

// Each 64-bit product is split into an unsigned low word and a signed high
// word, accumulated in separate 64-bit lanes, and recombined in 128 bits.
// The sum is exact for any n_in < 2^31, so it matches the scalar kernel bit
// for bit regardless of summation order.
void dense_i32(const std::int32_t* act, std::size_t n_in, const std::int32_t* w, std::size_t n_out, int128* acc) {
    const __m256i low_mask = _mm256_set1_epi64x(0xFFFFFFFFLL);
    std::size_t j = 0;
    for (; j + 4 <= n_out; j += 4) {
        __m256i lo_acc = _mm256_setzero_si256();
        __m256i hi_acc = _mm256_setzero_si256();
        for (std::size_t i = 0; i < n_in; ++i) {
            const __m256i a = _mm256_set1_epi64x(act[i]);
            const __m256i wv = _mm256_cvtepi32_epi64(
                _mm_loadu_si128(reinterpret_cast<const __m128i*>(w + i * n_out + j)));
            const __m256i p = _mm256_mul_epi32(a, wv);
            const __m256i hi_dup = _mm256_shuffle_epi32(p, _MM_SHUFFLE(3, 3, 1, 1));
            const __m256i hi = _mm256_blend_epi32(hi_dup, _mm256_srai_epi32(hi_dup, 31), 0b10101010);
            lo_acc = _mm256_add_epi64(lo_acc, _mm256_and_si256(p, low_mask));
            hi_acc = _mm256_add_epi64(hi_acc, hi);
        }
        alignas(32) std::int64_t lo[4];
        alignas(32) std::int64_t hi[4];
        _mm256_store_si256(reinterpret_cast<__m256i*>(lo), lo_acc);
        _mm256_store_si256(reinterpret_cast<__m256i*>(hi), hi_acc);
        for (int k = 0; k < 4; ++k)
            acc[j + k] = static_cast<int128>(hi[k]) * (static_cast<int128>(1) << 32) + lo[k];
    }
    for (; j < n_out; ++j) {
        int128 s = 0;
        for (std::size_t i = 0; i < n_in; ++i)
            s += static_cast<int128>(static_cast<std::int64_t>(act[i]) * w[i * n_out + j]);
        acc[j] = s;
    }
}

void successive_diff(const double* x, std::size_t n, double* d) {
    if (n < 2)
        return;
    const std::size_t m = n - 1;
    std::size_t i = 0;
    for (; i + 4 <= m; i += 4)
        _mm256_storeu_pd(d + i, _mm256_sub_pd(_mm256_loadu_pd(x + i + 1), _mm256_loadu_pd(x + i)));
    for (; i < m; ++i)
        d[i] = x[i + 1] - x[i];
}

double sum(const double* x, std::size_t n) {
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        a0 = _mm256_add_pd(a0, _mm256_loadu_pd(x + i));
        a1 = _mm256_add_pd(a1, _mm256_loadu_pd(x + i + 4));
    }
    double s = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i)
        s += x[i];
    return s;
}

double sum_sq_dev(const double* x, std::size_t n, double center) {
    const __m256d c = _mm256_set1_pd(center);
    __m256d a0 = _mm256_setzero_pd();
    __m256d a1 = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256d d0 = _mm256_sub_pd(_mm256_loadu_pd(x + i), c);
        const __m256d d1 = _mm256_sub_pd(_mm256_loadu_pd(x + i + 4), c);
        a0 = _mm256_add_pd(a0, _mm256_mul_pd(d0, d0));
        a1 = _mm256_add_pd(a1, _mm256_mul_pd(d1, d1));
    }
    double s = hsum(_mm256_add_pd(a0, a1));
    for (; i < n; ++i) {
        const double d = x[i] - center;
        s += d * d;
    }
    return s;
}

std::size_t count_abs_greater(const double* x, std::size_t n, double threshold) {
    const __m256d sign = _mm256_set1_pd(-0.0);
    const __m256d t = _mm256_set1_pd(threshold);
    std::size_t c = 0;
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        const __m256d a = _mm256_andnot_pd(sign, _mm256_loadu_pd(x + i));
        const int mask = _mm256_movemask_pd(_mm256_cmp_pd(a, t, _CMP_GT_OQ));
        c += static_cast<std::size_t>(std::popcount(static_cast<unsigned>(mask)));
    }
    for (; i < n; ++i)
        c += std::fabs(x[i]) > threshold ? 1 : 0;
    return c;
}

}  // namespace

namespace detail {

const KernelTable& avx2_kernels() noexcept {
    static const KernelTable table{
        "avx2", dense_f64, dense_i32, successive_diff, sum, sum_sq_dev, count_abs_greater,
    };
    return table;
}

}  // namespace detail
}  // namespace wristml::kernels
