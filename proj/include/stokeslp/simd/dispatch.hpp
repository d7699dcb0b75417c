#ifndef STOKESLP_SIMD_DISPATCH_HPP
#define STOKESLP_SIMD_DISPATCH_HPP

#include <string>

namespace stokeslp::simd {

enum class Level {
    scalar,
    avx2,
};

// Level actually in use. Resolved once: highest level the CPU supports,
// unless overridden by STOKESLP_SIMD=scalar|avx2|auto.
Level active_level();

// Force a level (used by the equivalence tests). Throws if the CPU cannot
// run the requested level.
void set_level(Level lvl);

const char* level_name(Level lvl);
bool cpu_has_avx2();

} // namespace stokeslp::simd

#endif
