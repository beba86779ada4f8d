#pragma once

#include "wristml/kernels.hpp"

namespace wristml::kernels::detail {

// Defined in avx2.cpp, which is the only file compiled with -mavx2.
// Calling it is fine on any CPU; using the returned kernels is not.
const KernelTable& avx2_kernels() noexcept;

}  // namespace wristml::kernels::detail
