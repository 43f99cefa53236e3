#include "cubicl/cache.hpp"

#include <cstring>
#include <filesystem>
#include <fstream>

namespace cubicl {

namespace {

template <class T>
void put(std::ofstream& os, T v) {
    // little-endian write
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xff);
    os.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
bool get(std::ifstream& is, T& v) {
    unsigned char buf[sizeof(T)];
    if (!is.read(reinterpret_cast<char*>(buf), sizeof(T))) return false;
    std::uint64_t acc = 0;
    for (std::size_t i = sizeof(T); i-- > 0;) acc = (acc << 8) | buf[i];
    v = static_cast<T>(acc);
    return true;
}

}  // namespace

std::string cache_path(const std::string& root, std::uint32_t q, int g) {
    std::filesystem::path p(root.empty() ? "." : root);
    p /= "family_q" + std::to_string(q) + "_g" + std::to_string(g) + ".cubl";
    return p.string();
}

CacheStatus probe_cache(const std::string& path, std::uint32_t q, int g) {
    CacheStatus st;
    std::ifstream is(path, std::ios::binary);
    if (!is) {
        st.message = "no cache file";
        return st;
    }
    st.exists = true;
    std::uint32_t magic = 0, version = 0, fq = 0, fflags = 0, npt = 0;
    std::uint32_t fg = 0;
    std::uint64_t count = 0;
    if (!get(is, magic) || !get(is, version) || !get(is, fq) || !get(is, fg) || !get(is, count) ||
        !get(is, fflags) || !get(is, npt)) {
        st.message = "truncated header";
        return st;
    }
    if (magic != kCacheMagic) {
        st.message = "bad magic";
        return st;
    }
    if (version != kCacheVersion) {
        st.message = "version mismatch";
        return st;
    }
    if (fq != q || static_cast<int>(fg) != g) {
        st.message = "parameter mismatch";
        return st;
    }
    st.valid = true;
    st.count = count;
    st.has_lvalues = (fflags & 1u) != 0;
    return st;
}

void write_cache(const std::string& path, const FamilyData& fam, bool with_lvalues) {
    std::ofstream os(path, std::ios::binary | std::ios::trunc);
    if (!os) throw std::runtime_error("cache: cannot open for writing: " + path);
    put<std::uint32_t>(os, kCacheMagic);
    put<std::uint32_t>(os, kCacheVersion);
    put<std::uint32_t>(os, fam.F->q());
    put<std::uint32_t>(os, static_cast<std::uint32_t>(fam.g));
    put<std::uint64_t>(os, fam.size());
    put<std::uint32_t>(os, with_lvalues ? 1u : 0u);
    put<std::uint32_t>(os, fam.primes.size());
    const int ncoef = fam.g / 2 + 2;
    for (std::size_t i = 0; i < fam.size(); ++i) {
        const Poly& m = fam.chars[i].modulus();
        for (int d = 0; d < ncoef; ++d) put<std::uint32_t>(os, d <= m.deg() ? m.c[d] : 0);
        for (std::uint32_t pi = 0; pi < fam.primes.size(); ++pi) {
            SymExp v = fam.chars[i].prime_values()[pi];
            put<std::uint8_t>(os, v == SYM_ZERO ? 3 : static_cast<std::uint8_t>(v));
        }
    }
    if (with_lvalues) {
        for (std::size_t i = 0; i < fam.size(); ++i)
            for (int d = 0; d <= fam.g + 1; ++d) {
                put<std::int64_t>(os, fam.L[i].c[d].a);
                put<std::int64_t>(os, fam.L[i].c[d].b);
            }
    }
}

bool read_cache(const std::string& path, const FieldCtx& F, int g, FamilyData& out,
                std::string* error) {
    CacheStatus st = probe_cache(path, F.q(), g);
    if (!st.valid) {
        if (error) *error = st.message;
        return false;
    }
    std::ifstream is(path, std::ios::binary);
    is.seekg(4 * 4 + 8 + 2 * 4);  // header

    out.F = &F;
    out.g = g;
    out.primes = build_prime_table(F, Level::Base, g + 1);
    out.monics = build_monic_factor_table(F, out.primes, g + 1);
    const int ncoef = g / 2 + 2;
    out.chars.clear();
    out.L.clear();
    out.central.clear();
    out.central_c.clear();
    out.omega.clear();

    std::vector<std::vector<SymExp>> vals(st.count);
    std::vector<Poly> moduli(st.count);
    for (std::uint64_t i = 0; i < st.count; ++i) {
        Poly m{Level::Ext, std::vector<FElem>(ncoef, 0)};
        for (int d = 0; d < ncoef; ++d) {
            std::uint32_t c;
            if (!get(is, c)) return false;
            m.c[d] = c;
        }
        while (!m.c.empty() && m.c.back() == 0) m.c.pop_back();
        moduli[i] = m;
        vals[i].resize(out.primes.size());
        for (std::uint32_t pi = 0; pi < out.primes.size(); ++pi) {
            std::uint8_t b;
            if (!get(is, b)) return false;
            vals[i][pi] = b == 3 ? SYM_ZERO : static_cast<SymExp>(b);
        }
    }
    out.chars.resize(st.count);
    for (std::uint64_t i = 0; i < st.count; ++i) {
        out.chars[i] = CubicCharacter(F, moduli[i]);
        out.chars[i].set_prime_values(std::move(vals[i]));
    }
    out.L.resize(st.count);
    if (st.has_lvalues) {
        for (std::uint64_t i = 0; i < st.count; ++i) {
            out.L[i].c.resize(g + 2);
            for (int d = 0; d <= g + 1; ++d) {
                std::int64_t a, b;
                if (!get(is, a) || !get(is, b)) return false;
                out.L[i].c[d] = ZOmega{a, b};
            }
        }
    } else {
        for (std::uint64_t i = 0; i < st.count; ++i)
            out.L[i] = l_polynomial(F, out.chars[i], out.monics, g);
    }
    out.central.resize(st.count);
    out.central_c.resize(st.count);
    out.omega.resize(st.count);
    for (std::uint64_t i = 0; i < st.count; ++i) {
        out.central[i] = central_exact(out.L[i], F.q(), g);
        out.central_c[i] = central_from_exact(out.central[i], F.q(), g);
        out.omega[i] = root_number(out.L[i], F.q(), g);
    }
    std::unordered_map<std::uint64_t, std::uint32_t> by_key;
    for (std::uint64_t i = 0; i < st.count; ++i)
        by_key.emplace(poly_key(F, out.chars[i].modulus()), static_cast<std::uint32_t>(i));
    out.conj_index.resize(st.count);
    for (std::uint64_t i = 0; i < st.count; ++i) {
        auto it = by_key.find(poly_key(F, conjugate(F, out.chars[i].modulus())));
        if (it == by_key.end()) return false;
        out.conj_index[i] = it->second;
    }
    return true;
}

}  // namespace cubicl
