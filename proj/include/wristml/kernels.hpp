#pragma once

// Data-parallel inner loops used by inference and feature extraction.
//
// Every kernel has a scalar reference implementation; an AVX2 variant is
// compiled into its own translation unit and chosen at runtime when the
// CPU supports it. Variants are required to agree bit-for-bit on the
// dense and integer kernels (same per-lane operation order, no FMA
// contraction), and to within reassociation error on the reductions.
//
// Set WRISTML_KERNELS=scalar in the environment to force the reference path.

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>

namespace wristml::kernels {

__extension__ typedef __int128 int128;

struct KernelTable {
    std::string_view name;

    // z[j] = w[n_in][j] + sum_i act[i] * w[i][j], accumulated in input order.
    // w is row-major with (n_in + 1) rows of n_out columns; the last row is the bias.
    void (*dense_f64)(const double* act, std::size_t n_in, const double* w, std::size_t n_out, double* z);

    // acc[j] = sum_i act[i] * w[i][j] computed exactly (no intermediate wraparound).
    // w holds n_in rows of n_out columns; the bias row is handled by the caller.
    void (*dense_i32)(const std::int32_t* act, std::size_t n_in, const std::int32_t* w, std::size_t n_out,
                      int128* acc);

    // d[i] = x[i + 1] - x[i] for i in [0, n - 1).
    void (*successive_diff)(const double* x, std::size_t n, double* d);

    double (*sum)(const double* x, std::size_t n);

    // sum_i (x[i] - center)^2
    double (*sum_sq_dev)(const double* x, std::size_t n, double center);

    // #{ i : |x[i]| > threshold }
    std::size_t (*count_abs_greater)(const double* x, std::size_t n, double threshold);
};

const KernelTable& scalar_table() noexcept;

// nullptr when the build has no AVX2 variant or the CPU lacks AVX2.
const KernelTable* avx2_table() noexcept;

// The table selected for this process (resolved once, thread-safe).
const KernelTable& active() noexcept;

// Convenience wrappers over active().

inline double sum(std::span<const double> x) { return active().sum(x.data(), x.size()); }

inline double sum_sq_dev(std::span<const double> x, double center) {
    return active().sum_sq_dev(x.data(), x.size(), center);
}

inline std::size_t count_abs_greater(std::span<const double> x, double threshold) {
    return active().count_abs_greater(x.data(), x.size(), threshold);
}

}  // namespace wristml::kernels
