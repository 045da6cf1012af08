#include "cqexp/kernels.hpp"

#include <cstdlib>

#include "cqexp/errors.hpp"

namespace cqexp::kernels {

#if defined(CQEXP_HAVE_AVX2)
const Ops* avx2_ops_impl();
#endif

const Ops* avx2_ops() {
#if defined(CQEXP_HAVE_AVX2)
    static const bool supported =
        __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    return supported ? avx2_ops_impl() : nullptr;
#else
    return nullptr;
#endif
}

namespace {

const Ops* lookup(const std::string& name) {
    if (name == "scalar") return &scalar_ops();
    if (name == "avx2") return avx2_ops();
    return nullptr;
}

const Ops* initial() {
    if (const char* env = std::getenv("CQEXP_KERNELS"); env && *env) {
        if (const Ops* ops = lookup(env)) return ops;
        throw Error(std::string("CQEXP_KERNELS: unknown or unsupported variant '") + env + "'");
    }
    if (const Ops* ops = avx2_ops()) return ops;
    return &scalar_ops();
}

const Ops*& selected() {
    static const Ops* current = initial();
    return current;
}

}  // namespace

const Ops& active() { return *selected(); }

void select(const std::string& name) {
    const Ops* ops = lookup(name);
    if (!ops) throw Error("kernel variant '" + name + "' is unknown or unsupported on this machine");
    selected() = ops;
}

std::vector<std::string> available() {
    std::vector<std::string> names{"scalar"};
    if (avx2_ops()) names.emplace_back("avx2");
    return names;
}

}  // namespace cqexp::kernels
