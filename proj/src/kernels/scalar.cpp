#include "wristml/kernels.hpp"
#include "kernel_variants.hpp"

#include <cmath>

namespace wristml::kernels {
namespace {

void dense_f64(const double* act, std::size_t n_in, const double* w, std::size_t n_out, double* z) {
    const double* bias = w + n_in * n_out;
    for (std::size_t j = 0; j < n_out; ++j)
        z[j] = bias[j];
    for (std::size_t i = 0; i < n_in; ++i) {
        const double a = act[i];
        const double* row = w + i * n_out;
        for (std::size_t j = 0; j < n_out; ++j)
            z[j] = z[j] + a * row[j];
    }
}

void dense_i32(const std::int32_t* act, std::size_t n_in, const std::int32_t* w, std::size_t n_out, int128* acc) {
    for (std::size_t j = 0; j < n_out; ++j)
        acc[j] = 0;
    for (std::size_t i = 0; i < n_in; ++i) {
        const std::int64_t a = act[i];
        const std::int32_t* row = w + i * n_out;
        for (std::size_t j = 0; j < n_out; ++j)
            acc[j] += static_cast<int128>(a * static_cast<std::int64_t>(row[j]));
    }
}

void successive_diff(const double* x, std::size_t n, double* d) {
    for (std::size_t i = 0; i + 1 < n; ++i)
        d[i] = x[i + 1] - x[i];
}

double sum(const double* x, std::size_t n) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i];
    return s;
}

double sum_sq_dev(const double* x, std::size_t n, double center) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double d = x[i] - center;
        s += d * d;
    }
    return s;
}

std::size_t count_abs_greater(const double* x, std::size_t n, double threshold) {
    std::size_t c = 0;
    for (std::size_t i = 0; i < n; ++i)
        c += std::fabs(x[i]) > threshold ? 1 : 0;
    return c;
}

}  // namespace

const KernelTable& scalar_table() noexcept {
    static const KernelTable table{
        "scalar", dense_f64, dense_i32, successive_diff, sum, sum_sq_dev, count_abs_greater,
    };
    return table;
}

}  // namespace wristml::kernels
