#pragma once

#include <optional>
#include <string>

#include "cubicl/family.hpp"

namespace cubicl {

// Binary cache of one family, little-endian throughout:
//   header:  magic "CUBL" (u32 0x4c425543), version u32, q u32, g u32,
//            count u64, flags u32 (bit 0: L-coefficient section present),
//            prime_table_size u32
//   per character:   (g/2 + 2) u32 modulus coefficients (packed field
//                    elements, low degree first, leading coefficient 1),
//                    then prime_table_size u8 symbol values
//                    (0,1,2 = powers of xi_3; 3 = shares a factor)
//   L section (when flagged): per character, (g+2) pairs of i64 (a, b)
//                    meaning a + b * xi_3.
constexpr std::uint32_t kCacheMagic = 0x4c425543;  // "CUBL"
constexpr std::uint32_t kCacheVersion = 1;

struct CacheStatus {
    bool exists = false;
    bool valid = false;       // magic/version/q/g all match
    bool has_lvalues = false;
    std::uint64_t count = 0;
    std::string message;
};

CacheStatus probe_cache(const std::string& path, std::uint32_t q, int g);
void write_cache(const std::string& path, const FamilyData& fam, bool with_lvalues);
// Load moduli + prime values (+ L when present) into a FamilyData whose
// field/prime tables are rebuilt; returns false when the cache is unusable.
bool read_cache(const std::string& path, const FieldCtx& F, int g, FamilyData& out,
                std::string* error = nullptr);

// Default cache file path: <root>/family_q<q>_g<g>.cubl where <root> comes
// from the config or the CUBICL_CACHE_DIR environment variable.
std::string cache_path(const std::string& root, std::uint32_t q, int g);

}  // namespace cubicl
