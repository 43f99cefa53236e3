#include "cubicl/family.hpp"

#include <set>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cubicl {

bool family_modulus_admissible(const FieldCtx& F, const Poly& modulus) {
    if (!is_squarefree(F, modulus)) return false;
    Factorization fa = factor(F, modulus);
    for (auto& pp : fa.factors) {
        if (pp.exp != 1) return false;
        if (poly_in_base(F, pp.prime)) return false;
    }
    // No base prime below the modulus may divide it: reject Galois-conjugate
    // pairs, which multiply to a prime of F_q[T].
    for (std::size_t i = 0; i < fa.factors.size(); ++i) {
        Poly cj = conjugate(F, fa.factors[i].prime);
        for (std::size_t j = i + 1; j < fa.factors.size(); ++j)
            if (fa.factors[j].prime == cj) return false;
    }
    return true;
}

std::vector<Poly> enumerate_family_moduli(const FieldCtx& F, int g, int threads) {
    if (g < 0 || g % 2 != 0) throw std::invalid_argument("enumerate_family_moduli: genus must be even and >= 0");
    const int n = g / 2 + 1;
    const std::uint64_t total = monic_count(F, Level::Ext, n);
    const int blocks = threads > 1 ? 4 * threads : 1;
    std::vector<std::vector<Poly>> part(blocks);
#ifdef _OPENMP
#pragma omp parallel for schedule(static) num_threads(threads > 0 ? threads : 1) if (threads > 1)
#endif
    for (int b = 0; b < blocks; ++b) {
        std::uint64_t lo = total * b / blocks, hi = total * (b + 1) / blocks;
        for (std::uint64_t idx = lo; idx < hi; ++idx) {
            Poly f = monic_at(F, Level::Ext, n, idx);
            if (family_modulus_admissible(F, f)) part[b].push_back(std::move(f));
        }
    }
    std::vector<Poly> out;
    for (auto& v : part) out.insert(out.end(), v.begin(), v.end());
    return out;
}

SymExp FamilyData::eval_base_monic(std::uint32_t char_idx, const Poly& h) const {
    Factorization fa = factor(*F, h);
    int s = 0;
    const auto& chi = chars[char_idx];
    for (auto& pp : fa.factors) {
        auto it = primes.index_of.find(poly_key(*F, pp.prime));
        if (it == primes.index_of.end()) throw std::invalid_argument("eval_base_monic: prime beyond cache");
        SymExp v = chi.prime_values()[it->second];
        if (v == SYM_ZERO) return SYM_ZERO;
        s += v * pp.exp;
    }
    SymExp r = static_cast<SymExp>(s % 3);
    return chi.conjugated() ? sym_conj(r) : r;
}

FamilyData build_family(const FieldCtx& F, int g, int threads) {
    FamilyData fam;
    fam.F = &F;
    fam.g = g;
    fam.primes = build_prime_table(F, Level::Base, g + 1);
    fam.monics = build_monic_factor_table(F, fam.primes, g + 1);

    std::vector<Poly> moduli = enumerate_family_moduli(F, g, threads);
    const std::size_t N = moduli.size();
    fam.chars.resize(N);
    for (std::size_t i = 0; i < N; ++i) fam.chars[i] = CubicCharacter(F, moduli[i]);

    // Symbol tables for every distinct prime factor in the family.
    std::set<std::uint64_t> seen;
    std::vector<Poly> needed;
    for (auto& chi : fam.chars)
        for (auto& P : chi.prime_factors())
            if (seen.insert(poly_key(F, P)).second) needed.push_back(P);
    SymbolTableCache cache(F);
    cache.prebuild(needed, threads);

    fam.L.resize(N);
    fam.central.resize(N);
    fam.central_c.resize(N);
    fam.omega.resize(N);
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic, 16) num_threads(threads > 0 ? threads : 1) if (threads > 1)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(N); ++i) {
        fam.chars[i].build_prime_cache(F, fam.primes, cache);
        fam.L[i] = l_polynomial(F, fam.chars[i], fam.monics, g);
        fam.central[i] = central_exact(fam.L[i], F.q(), g);
        fam.central_c[i] = central_from_exact(fam.central[i], F.q(), g);
        fam.omega[i] = root_number(fam.L[i], F.q(), g);
    }

    // Conjugation involution through the conjugate modulus.
    std::unordered_map<std::uint64_t, std::uint32_t> by_key;
    for (std::size_t i = 0; i < N; ++i) by_key.emplace(poly_key(F, fam.chars[i].modulus()), i);
    fam.conj_index.resize(N);
    for (std::size_t i = 0; i < N; ++i) {
        auto it = by_key.find(poly_key(F, conjugate(F, fam.chars[i].modulus())));
        if (it == by_key.end()) throw std::logic_error("build_family: family not closed under conjugation");
        fam.conj_index[i] = it->second;
    }
    return fam;
}

}  // namespace cubicl
