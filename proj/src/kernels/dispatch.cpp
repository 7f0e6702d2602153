#include <cstdlib>
#include <cstring>

#include "xygibbs/kernels.hpp"

namespace xygibbs::kernels {

namespace {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

const KernelTable* select() {
    const KernelTable* avx2 = avx2_table();
    const bool avx2_ok = avx2 != nullptr && cpu_has_avx2();
    if (const char* env = std::getenv("XYGIBBS_KERNELS")) {
        if (std::strcmp(env, "scalar") == 0) return &scalar_table();
        if (std::strcmp(env, "avx2") == 0 && avx2_ok) return avx2;
    }
    return avx2_ok ? avx2 : &scalar_table();
}

}  // namespace

const KernelTable& active() {
    static const KernelTable* selected = select();
    return *selected;
}

}  // namespace xygibbs::kernels
