// SPDX-License-Identifier: Apache-2.0
#include "mvhull/kernels.hpp"

#include <cstdlib>
#include <string_view>

namespace mvhull::simd {

const GridKernels& active() noexcept {
    static const GridKernels& chosen = [] () -> const GridKernels& {
        const char* env = std::getenv("MVHULL_KERNELS");
        if (env != nullptr && std::string_view(env) == "scalar") return scalar_kernels();
        if (const GridKernels* k = avx2_kernels()) return *k;
        return scalar_kernels();
    }();
    return chosen;
}

}  // namespace mvhull::simd
