#include "wristml/fixed_point.hpp"

#include <cmath>

namespace wristml {

TanhLut::TanhLut(QFormat fmt) : fmt_(fmt) {
    constexpr std::size_t mid = (knot_count - 1) / 2;
    for (std::size_t k = 0; k <= mid; ++k) {
        const double x = static_cast<double>(k) / knots_per_unit;
        const std::int32_t v = fmt_.quantize(std::tanh(x));
        knots_[mid + k] = v;
        knots_[mid - k] = -v;
    }
    saturation_ = static_cast<std::int32_t>((std::int64_t{1} << fmt_.frac_bits()) - 1);
}

std::int32_t TanhLut::eval(std::int32_t x) const noexcept {
    const int f = fmt_.frac_bits();
    const std::int64_t mag = x < 0 ? -static_cast<std::int64_t>(x) : x;
    const std::int64_t limit = static_cast<std::int64_t>(half_range) << f;

    std::int64_t y;
    if (mag >= limit) {
        y = saturation_;
    } else {
        // position on the knot grid, in units of 2^-f knots
        const std::int64_t pos = (mag + limit) * knots_per_unit;
        const std::size_t idx = static_cast<std::size_t>(pos >> f);
        const std::int64_t frac = pos & ((std::int64_t{1} << f) - 1);
        const std::int64_t lo = knots_[idx];
        const std::int64_t step = knots_[idx + 1] - lo;  // >= 0 on the upper half
        y = lo + ((step * frac + (std::int64_t{1} << (f - 1))) >> f);
    }
    return static_cast<std::int32_t>(x < 0 ? -y : y);
}

std::int32_t tanh_lut_eval(std::int32_t x, const TanhLut& lut) { return lut.eval(x); }

}  // namespace wristml
