#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <unordered_map>
#include <vector>

#include "cubicl/arith.hpp"
#include "cubicl/cyclotomic.hpp"
#include "cubicl/poly.hpp"

namespace cubicl {

// Value of a cubic symbol: exponent of xi_3 in {0,1,2}, or SYM_ZERO when the
// argument shares a factor with the modulus.
using SymExp = std::int8_t;
constexpr SymExp SYM_ZERO = -1;

inline ZOmega sym_to_zomega(SymExp s) { return s == SYM_ZERO ? ZOmega{0, 0} : omega_pow(s); }
inline std::complex<double> sym_to_complex(SymExp s) { return sym_to_zomega(s).to_complex(); }
inline SymExp sym_mul(SymExp a, SymExp b) {
    return (a == SYM_ZERO || b == SYM_ZERO) ? SYM_ZERO : static_cast<SymExp>((a + b) % 3);
}
inline SymExp sym_pow(SymExp a, std::uint64_t e) {
    if (a == SYM_ZERO) return e == 0 ? SymExp{0} : SYM_ZERO;
    return static_cast<SymExp>((a * (e % 3)) % 3);
}
inline SymExp sym_conj(SymExp a) { return a == SYM_ZERO ? a : static_cast<SymExp>((2 * a) % 3); }

// The fixed isomorphism between the complex cube roots of unity and those of
// F_{q^2}: xi_3 = exp(2*pi*i/3) is sent to generator^((q^2-1)/3). The other
// choice of isomorphism is reached through the conjugation flag on characters.
class CubeRootMap {
public:
    explicit CubeRootMap(const FieldCtx& F) : F_(&F), w_(F.omega_cube_root()) {}
    FElem image_of_xi3() const { return w_; }
    FElem map(int exponent) const { return F_->field(Level::Ext).pow(w_, ((exponent % 3) + 3) % 3); }
    int inverse(FElem a) const { return F_->cube_root_exponent(a); }

private:
    const FieldCtx* F_;
    FElem w_;
};

// chi_P(f) for P a monic irreducible over F_{q^2}: the exponent k with
// f^{(|P|-1)/3} = w^k (mod P), or SYM_ZERO if P | f. When check_prime is set,
// reducible P raises an error.
SymExp residue_symbol(const FieldCtx& F, const Poly& P, const Poly& f, bool check_prime = false);

// Full symbol table of one prime modulus: value indexed by the packed key of
// the residue. Built once by a generator walk, O(|P|) multiplications.
struct SymbolTable {
    Poly prime;
    std::vector<SymExp> val;  // size |P|; index = poly_key of residue
    SymExp at_key(std::uint64_t k) const { return val[k]; }
};

SymbolTable build_symbol_table(const FieldCtx& F, const Poly& P);

// Shared per-run cache of symbol tables keyed by the packed modulus.
class SymbolTableCache {
public:
    explicit SymbolTableCache(const FieldCtx& F) : F_(&F) {}
    const SymbolTable& get(const Poly& P);
    // Read-only lookup; throws if the table was not prebuilt. Safe to call
    // concurrently once prebuild is done.
    const SymbolTable& get_existing(const Poly& P) const;
    // Pre-build tables for a set of primes (parallel, deterministic content).
    void prebuild(const std::vector<Poly>& primes, int threads);

private:
    const FieldCtx* F_;
    std::unordered_map<std::uint64_t, std::unique_ptr<SymbolTable>> tabs_;
};

// chi_F for a monic modulus F over F_{q^2} given its distinct prime factors
// (family case: F square-free). Evaluation on any polynomial at either level;
// the conjugation flag selects the complex-conjugate character.
class CubicCharacter {
public:
    CubicCharacter() = default;
    CubicCharacter(const FieldCtx& F, Poly modulus, bool conjugated = false, std::uint64_t seed = 0);

    const Poly& modulus() const { return modulus_; }
    const std::vector<Poly>& prime_factors() const { return primes_; }
    bool conjugated() const { return conj_; }
    CubicCharacter conjugate_character() const;

    // Symbol mod F; f at Ext level (reduced internally).
    SymExp eval_ext(const FieldCtx& F, const Poly& f) const;
    // f at Base level: lifted along the tower, then evaluated.
    SymExp eval_base(const FieldCtx& F, const Poly& f) const;
    // Fast path when a symbol-table cache is available.
    SymExp eval_ext_cached(const FieldCtx& F, const Poly& f, SymbolTableCache& cache) const;

    // Values on the base prime table (chi cache read by all L/moment code).
    // Tables for every prime factor must already be in the cache.
    void build_prime_cache(const FieldCtx& F, const PrimeTable& pt, const SymbolTableCache& cache);
    const std::vector<SymExp>& prime_values() const { return prime_vals_; }
    void set_prime_values(std::vector<SymExp> v) { prime_vals_ = std::move(v); }
    SymExp prime_value(std::uint32_t prime_idx) const {
        SymExp v = prime_vals_[prime_idx];
        return conj_ ? sym_conj(v) : v;
    }
    // chi(f) for monic base f with known factorization entries.
    template <class EntryRange>
    SymExp eval_factored(const EntryRange& entries) const {
        int s = 0;
        for (auto& [pi, e] : entries) {
            SymExp v = prime_vals_[pi];
            if (v == SYM_ZERO) return SYM_ZERO;
            s += v * e;
        }
        SymExp r = static_cast<SymExp>(s % 3);
        return conj_ ? sym_conj(r) : r;
    }

private:
    Poly modulus_;
    std::vector<Poly> primes_;
    bool conj_ = false;
    std::vector<SymExp> prime_vals_;  // unconjugated values on base primes
};

// chi_a(b) = chi_b(a) for coprime monic a, b over F_{q^2}; errors on
// non-coprime input. Moduli need not be square-free.
bool check_reciprocity(const FieldCtx& F, const Poly& a, const Poly& b);
SymExp symbol_of_modulus(const FieldCtx& F, const Poly& modulus, const Poly& arg);

}  // namespace cubicl
