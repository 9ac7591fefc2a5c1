#include "idemfs/kernels.hpp"

#include <cstdlib>
#include <cstring>

namespace idemfs::kernels {

#if defined(IDEMFS_BUILD_AVX2)
const KernelTable* avx2_table_impl();
#endif

const KernelTable* avx2() {
#if defined(IDEMFS_BUILD_AVX2)
    static const bool supported = [] {
        __builtin_cpu_init();
        return __builtin_cpu_supports("avx2") != 0;
    }();
    return supported ? avx2_table_impl() : nullptr;
#else
    return nullptr;
#endif
}

const KernelTable& active() {
    static const KernelTable* chosen = [] {
        const char* force = std::getenv("IDEMFS_KERNELS");
        if (force && std::strcmp(force, "scalar") == 0) return &scalar();
        const KernelTable* v = avx2();
        return v ? v : &scalar();
    }();
    return *chosen;
}

}  // namespace idemfs::kernels
