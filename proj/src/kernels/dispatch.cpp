// Runtime kernel selection. This translation unit is built without any
// SIMD target flags so it is safe to execute on every CPU.
#include <cstdlib>

#include "splink/kernels.hpp"

namespace splink::kernels {

namespace {

bool cpu_has_avx2() {
#if (defined(__x86_64__) || defined(__i386__)) && (defined(__GNUC__) || defined(__clang__))
    return __builtin_cpu_supports("avx2") != 0;
#else
    return false;
#endif
}

const Ops* select() {
    if (const char* force = std::getenv("SPLINK_FORCE_SCALAR");
        force != nullptr && force[0] == '1') {
        return &scalar_ops();
    }
    if (const Ops* t = avx2_ops()) return t;
    return &scalar_ops();
}

}  // namespace

const Ops* avx2_ops() {
    if (!cpu_has_avx2()) return nullptr;
    return detail::avx2_table();
}

const Ops& ops() {
    static const Ops* active = select();
    return *active;
}

}  // namespace splink::kernels
