#include "wristml/kernels.hpp"
#include "kernel_variants.hpp"

#include <cstdlib>
#include <string_view>

namespace wristml::kernels {

const KernelTable* avx2_table() noexcept {
#if defined(WRISTML_HAVE_AVX2)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") != 0;
    }();
    return supported ? &detail::avx2_kernels() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() noexcept {
    static const KernelTable& chosen = []() -> const KernelTable& {
        const char* forced = std::getenv("WRISTML_KERNELS");
        if (forced != nullptr && std::string_view(forced) == "scalar")
            return scalar_table();
        if (const KernelTable* t = avx2_table())
            return *t;
        return scalar_table();
    }();
    return chosen;
}

}  // namespace wristml::kernels
