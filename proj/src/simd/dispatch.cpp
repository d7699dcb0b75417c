#include "stokeslp/simd/dispatch.hpp"

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

namespace stokeslp::simd {

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(__i386__)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

namespace {

Level resolve_initial() {
    const char* env = std::getenv("STOKESLP_SIMD");
    if (env) {
        std::string s(env);
        if (s == "scalar") return Level::scalar;
        if (s == "avx2") {
            if (!cpu_has_avx2())
                throw std::runtime_error("STOKESLP_SIMD=avx2 requested but CPU lacks AVX2+FMA");
            return Level::avx2;
        }
        // anything else, including "auto", falls through
    }
    return cpu_has_avx2() ? Level::avx2 : Level::scalar;
}

std::atomic<Level>& level_slot() {
    static std::atomic<Level> lvl{resolve_initial()};
    return lvl;
}

} // namespace

Level active_level() { return level_slot().load(std::memory_order_relaxed); }

void set_level(Level lvl) {
    if (lvl == Level::avx2 && !cpu_has_avx2())
        throw std::runtime_error("CPU lacks AVX2+FMA");
    level_slot().store(lvl, std::memory_order_relaxed);
}

const char* level_name(Level lvl) {
    switch (lvl) {
    case Level::scalar: return "scalar";
    case Level::avx2: return "avx2";
    }
    return "?";
}

} // namespace stokeslp::simd
