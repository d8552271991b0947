#pragma once

#include <cstdlib>
#include <string>

namespace afftop {

// Hard caps guard memory/runtime. AFFINE_TOP_MAX_DEPTH, when set to a
// positive integer, replaces every documented cap (unsafe for certification
// runs without memory headroom; documented in the CLI help).
inline int cap_with_env(int default_cap) {
    if (const char* v = std::getenv("AFFINE_TOP_MAX_DEPTH")) {
        char* end = nullptr;
        long parsed = std::strtol(v, &end, 10);
        if (end && *end == '\0' && parsed > 0) return static_cast<int>(parsed);
    }
    return default_cap;
}

constexpr int kLevelCapDefault = 16;       // polygon tower depth
constexpr int kSweepGCapDefault = 14;      // dyadic sweep depth (membership)
constexpr int kSweepDimCapDefault = 10;    // dyadic sweep depth (dimension)
constexpr int kSweepInteriorCapDefault = 16;  // dyadic sweep depth (interior)
constexpr int kCoverDepthCapDefault = 24;  // rectangle-iteration depth
constexpr int kScaleCapDefault = 12;       // box-count scale k

}  // namespace afftop
