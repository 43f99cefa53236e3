#include "cubicl/character.hpp"

#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace cubicl {

namespace {

std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::vector<std::uint64_t> prime_factors_u64(std::uint64_t n) {
    std::vector<std::uint64_t> out;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

SymExp residue_symbol(const FieldCtx& F, const Poly& P, const Poly& f, bool check_prime) {
    if (P.level != Level::Ext || !P.is_monic())
        throw std::invalid_argument("residue_symbol: modulus must be monic over F_{q^2}");
    if (check_prime && !is_irreducible(F, P))
        throw std::invalid_argument("residue_symbol: modulus is reducible");
    Poly r = rem(F, f, P);
    if (r.is_zero()) return SYM_ZERO;
    std::uint64_t e = (pow_u64(F.q2(), P.deg()) - 1) / 3;
    Poly s = powmod(F, r, e, P);
    if (s.deg() != 0) throw std::logic_error("residue_symbol: power not a constant");
    int k = F.cube_root_exponent(s.c[0]);
    if (k < 0) throw std::logic_error("residue_symbol: value not a cube root of unity");
    return static_cast<SymExp>(k);
}

SymbolTable build_symbol_table(const FieldCtx& F, const Poly& P) {
    SymbolTable t;
    t.prime = P;
    const std::uint64_t size = pow_u64(F.q2(), P.deg());
    const std::uint64_t order = size - 1;
    t.val.assign(size, SYM_ZERO);

    // Generator of (F_{q^2}[T]/P)^*: first monomial-ordered residue of full order.
    auto factors = prime_factors_u64(order);
    Poly rho;
    for (std::uint64_t idx = 1; idx < size; ++idx) {
        Poly cand{Level::Ext, {}};
        std::uint64_t k = idx;
        while (k) {
            cand.c.push_back(static_cast<FElem>(k % F.q2()));
            k /= F.q2();
        }
        bool ok = true;
        for (auto fct : factors) {
            Poly s = powmod(F, cand, order / fct, P);
            if (s.is_one()) { ok = false; break; }
        }
        if (ok) { rho = cand; break; }
    }
    if (rho.is_zero()) throw std::logic_error("symbol table: no generator");

    Poly s = powmod(F, rho, order / 3, P);
    if (s.deg() != 0) throw std::logic_error("symbol table: cube power not constant");
    int j = F.cube_root_exponent(s.c[0]);
    if (j <= 0) throw std::logic_error("symbol table: generator maps to trivial root");

    Poly u = poly_one(Level::Ext);
    std::uint64_t e = 0;
    for (std::uint64_t k = 0; k < order; ++k) {
        t.val[poly_key(F, u)] = static_cast<SymExp>(e);
        u = rem(F, mul(F, u, rho), P);
        e += static_cast<std::uint64_t>(j);
        if (e >= 3) e -= 3;
    }
    return t;
}

const SymbolTable& SymbolTableCache::get(const Poly& P) {
    std::uint64_t k = poly_key(*F_, P);
    auto it = tabs_.find(k);
    if (it == tabs_.end())
        it = tabs_.emplace(k, std::make_unique<SymbolTable>(build_symbol_table(*F_, P))).first;
    return *it->second;
}

const SymbolTable& SymbolTableCache::get_existing(const Poly& P) const {
    auto it = tabs_.find(poly_key(*F_, P));
    if (it == tabs_.end()) throw std::logic_error("symbol table cache: table not prebuilt");
    return *it->second;
}

void SymbolTableCache::prebuild(const std::vector<Poly>& primes, int threads) {
    std::vector<std::uint64_t> keys(primes.size());
    std::vector<std::unique_ptr<SymbolTable>> built(primes.size());
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic) num_threads(threads > 0 ? threads : 1) if (threads > 1)
#endif
    for (std::int64_t i = 0; i < static_cast<std::int64_t>(primes.size()); ++i) {
        keys[i] = poly_key(*F_, primes[i]);
        if (tabs_.find(keys[i]) == tabs_.end())
            built[i] = std::make_unique<SymbolTable>(build_symbol_table(*F_, primes[i]));
    }
    for (std::size_t i = 0; i < primes.size(); ++i)
        if (built[i]) tabs_.emplace(keys[i], std::move(built[i]));
}

CubicCharacter::CubicCharacter(const FieldCtx& F, Poly modulus, bool conjugated, std::uint64_t seed)
    : modulus_(std::move(modulus)), conj_(conjugated) {
    if (modulus_.level != Level::Ext || !modulus_.is_monic())
        throw std::invalid_argument("CubicCharacter: modulus must be monic over F_{q^2}");
    Factorization fa = factor(F, modulus_, seed);
    for (auto& pp : fa.factors) {
        if (pp.exp != 1) throw std::invalid_argument("CubicCharacter: modulus must be square-free");
        primes_.push_back(pp.prime);
    }
}

CubicCharacter CubicCharacter::conjugate_character() const {
    CubicCharacter c = *this;
    c.conj_ = !conj_;
    return c;
}

SymExp CubicCharacter::eval_ext(const FieldCtx& F, const Poly& f) const {
    int s = 0;
    for (auto& P : primes_) {
        SymExp v = residue_symbol(F, P, f);
        if (v == SYM_ZERO) return SYM_ZERO;
        s += v;
    }
    SymExp r = static_cast<SymExp>(s % 3);
    return conj_ ? sym_conj(r) : r;
}

SymExp CubicCharacter::eval_ext_cached(const FieldCtx& F, const Poly& f, SymbolTableCache& cache) const {
    int s = 0;
    for (auto& P : primes_) {
        const SymbolTable& t = cache.get(P);
        SymExp v = t.at_key(poly_key(F, rem(F, f, P)));
        if (v == SYM_ZERO) return SYM_ZERO;
        s += v;
    }
    SymExp r = static_cast<SymExp>(s % 3);
    return conj_ ? sym_conj(r) : r;
}

SymExp CubicCharacter::eval_base(const FieldCtx& F, const Poly& f) const {
    return eval_ext(F, lift(F, f));
}

void CubicCharacter::build_prime_cache(const FieldCtx& F, const PrimeTable& pt, const SymbolTableCache& cache) {
    std::vector<const SymbolTable*> tabs;
    tabs.reserve(primes_.size());
    for (auto& P : primes_) tabs.push_back(&cache.get_existing(P));
    prime_vals_.assign(pt.size(), 0);
    for (std::uint32_t i = 0; i < pt.size(); ++i) {
        Poly lifted = lift(F, pt.at(i));
        int s = 0;
        SymExp out = 0;
        for (std::size_t k = 0; k < primes_.size(); ++k) {
            SymExp v = tabs[k]->at_key(poly_key(F, rem(F, lifted, primes_[k])));
            if (v == SYM_ZERO) { out = SYM_ZERO; break; }
            s += v;
        }
        prime_vals_[i] = out == SYM_ZERO ? SYM_ZERO : static_cast<SymExp>(s % 3);
    }
}

SymExp symbol_of_modulus(const FieldCtx& F, const Poly& modulus, const Poly& arg) {
    if (modulus.level != Level::Ext || !modulus.is_monic())
        throw std::invalid_argument("symbol_of_modulus: modulus must be monic over F_{q^2}");
    if (modulus.is_one()) return 0;
    Factorization fa = factor(F, modulus);
    int s = 0;
    for (auto& pp : fa.factors) {
        SymExp v = residue_symbol(F, pp.prime, arg);
        if (v == SYM_ZERO) return SYM_ZERO;
        s += v * pp.exp;
    }
    return static_cast<SymExp>(s % 3);
}

bool check_reciprocity(const FieldCtx& F, const Poly& a, const Poly& b) {
    if (a.level != Level::Ext || b.level != Level::Ext || !a.is_monic() || !b.is_monic())
        throw std::invalid_argument("check_reciprocity: monic polynomials over F_{q^2} required");
    if (gcd(F, a, b).deg() != 0)
        throw std::invalid_argument("check_reciprocity: arguments must be coprime");
    return symbol_of_modulus(F, a, b) == symbol_of_modulus(F, b, a);
}

}  // namespace cubicl
