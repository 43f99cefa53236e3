#include "cubicl/poly.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

namespace cubicl {

namespace {

void trim(Poly& f) {
    while (!f.c.empty() && f.c.back() == 0) f.c.pop_back();
}

void check_level(const Poly& a, const Poly& b) {
    if (a.level != b.level) throw std::invalid_argument("poly: mixed levels");
}

}  // namespace

Poly poly_zero(Level l) { return Poly{l, {}}; }
Poly poly_one(Level l) { return Poly{l, {1}}; }
Poly poly_const(Level l, FElem a) {
    Poly f{l, {a}};
    trim(f);
    return f;
}
Poly poly_T(Level l) { return Poly{l, {0, 1}}; }
Poly poly_from(Level l, std::vector<FElem> coeffs) {
    Poly f{l, std::move(coeffs)};
    trim(f);
    return f;
}

Poly add(const FieldCtx& F, const Poly& a, const Poly& b) {
    check_level(a, b);
    Poly r{a.level, {}};
    r.c.resize(std::max(a.c.size(), b.c.size()), 0);
    for (std::size_t i = 0; i < r.c.size(); ++i) {
        FElem x = i < a.c.size() ? a.c[i] : 0;
        FElem y = i < b.c.size() ? b.c[i] : 0;
        r.c[i] = F.add(a.level, x, y);
    }
    trim(r);
    return r;
}

Poly neg(const FieldCtx& F, const Poly& a) {
    Poly r = a;
    for (auto& x : r.c) x = F.neg(a.level, x);
    return r;
}

Poly sub(const FieldCtx& F, const Poly& a, const Poly& b) { return add(F, a, neg(F, b)); }

Poly mul(const FieldCtx& F, const Poly& a, const Poly& b) {
    check_level(a, b);
    if (a.is_zero() || b.is_zero()) return poly_zero(a.level);
    Poly r{a.level, std::vector<FElem>(a.c.size() + b.c.size() - 1, 0)};
    for (std::size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (std::size_t j = 0; j < b.c.size(); ++j) {
            if (b.c[j] == 0) continue;
            r.c[i + j] = F.add(a.level, r.c[i + j], F.mul(a.level, a.c[i], b.c[j]));
        }
    }
    trim(r);
    return r;
}

Poly mul_scalar(const FieldCtx& F, const Poly& a, FElem s) {
    Poly r = a;
    for (auto& x : r.c) x = F.mul(a.level, x, s);
    trim(r);
    return r;
}

std::pair<Poly, Poly> divmod(const FieldCtx& F, const Poly& a, const Poly& b) {
    check_level(a, b);
    if (b.is_zero()) throw std::invalid_argument("poly: division by zero");
    Poly r = a;
    Poly q{a.level, {}};
    if (a.deg() < b.deg()) return {poly_zero(a.level), r};
    q.c.assign(a.deg() - b.deg() + 1, 0);
    FElem lead_inv = F.inv(b.level, b.lead());
    while (!r.is_zero() && r.deg() >= b.deg()) {
        int shift = r.deg() - b.deg();
        FElem c = F.mul(a.level, r.lead(), lead_inv);
        q.c[shift] = c;
        for (std::size_t i = 0; i < b.c.size(); ++i) {
            FElem t = F.mul(a.level, c, b.c[i]);
            r.c[shift + i] = F.sub(a.level, r.c[shift + i], t);
        }
        trim(r);
    }
    trim(q);
    return {q, r};
}

Poly rem(const FieldCtx& F, const Poly& a, const Poly& b) { return divmod(F, a, b).second; }

bool divides(const FieldCtx& F, const Poly& a, const Poly& b) {
    if (a.is_zero()) return b.is_zero();
    return rem(F, b, a).is_zero();
}

Poly make_monic(const FieldCtx& F, const Poly& a) {
    if (a.is_zero() || a.is_monic()) return a;
    return mul_scalar(F, a, F.inv(a.level, a.lead()));
}

Poly gcd(const FieldCtx& F, Poly a, Poly b) {
    check_level(a, b);
    while (!b.is_zero()) {
        Poly r = rem(F, a, b);
        a = std::move(b);
        b = std::move(r);
    }
    return make_monic(F, a);
}

Poly powmod(const FieldCtx& F, const Poly& base, std::uint64_t e, const Poly& mod) {
    Poly r = poly_one(base.level);
    Poly b = rem(F, base, mod);
    while (e) {
        if (e & 1) r = rem(F, mul(F, r, b), mod);
        e >>= 1;
        if (e) b = rem(F, mul(F, b, b), mod);
    }
    return r;
}

Poly derivative(const FieldCtx& F, const Poly& a) {
    Poly r{a.level, {}};
    if (a.deg() < 1) return r;
    r.c.resize(a.c.size() - 1, 0);
    const std::uint32_t p = F.p();
    for (std::size_t i = 1; i < a.c.size(); ++i) {
        std::uint32_t k = static_cast<std::uint32_t>(i % p);
        FElem v = 0;
        for (std::uint32_t t = 0; t < k; ++t) v = F.add(a.level, v, a.c[i]);
        r.c[i - 1] = v;
    }
    trim(r);
    return r;
}

FElem eval(const FieldCtx& F, const Poly& a, FElem x) {
    FElem v = 0;
    for (std::size_t i = a.c.size(); i-- > 0;) v = F.add(a.level, F.mul(a.level, v, x), a.c[i]);
    return v;
}

Poly conjugate(const FieldCtx& F, const Poly& a) {
    if (a.level != Level::Ext) throw std::invalid_argument("conjugate: Ext level only");
    Poly r = a;
    for (auto& x : r.c) x = F.frobenius_q(x);
    return r;
}

bool poly_in_base(const FieldCtx& F, const Poly& a) {
    if (a.level == Level::Base) return true;
    for (auto x : a.c)
        if (!F.in_base(x)) return false;
    return true;
}

Poly lift(const FieldCtx& F, const Poly& a) {
    (void)F;
    if (a.level == Level::Ext) return a;
    Poly r = a;
    r.level = Level::Ext;  // pair packing embeds F_q indices unchanged
    return r;
}

Poly project(const FieldCtx& F, const Poly& a) {
    if (a.level == Level::Base) return a;
    Poly r{Level::Base, {}};
    r.c.reserve(a.c.size());
    for (auto x : a.c) r.c.push_back(F.project(x));
    return r;
}

double norm(const FieldCtx& F, const Poly& f) {
    if (f.is_zero()) return 0.0;
    return std::pow(static_cast<double>(F.size(f.level)), f.deg());
}

std::uint64_t monic_count(const FieldCtx& F, Level l, int d) {
    if (d < 0) throw std::invalid_argument("monic_count: negative degree");
    std::uint64_t n = 1;
    for (int i = 0; i < d; ++i) n *= F.size(l);
    return n;
}

Poly monic_at(const FieldCtx& F, Level l, int d, std::uint64_t index) {
    Poly f{l, std::vector<FElem>(d + 1, 0)};
    const std::uint64_t Q = F.size(l);
    for (int i = 0; i < d; ++i) {
        f.c[i] = static_cast<FElem>(index % Q);
        index /= Q;
    }
    f.c[d] = 1;
    return f;
}

std::uint64_t poly_key(const FieldCtx& F, const Poly& f) {
    const std::uint64_t Q = F.size(f.level);
    std::uint64_t k = 0;
    for (std::size_t i = f.c.size(); i-- > 0;) k = k * Q + f.c[i];
    return k;
}

Poly random_monic(const FieldCtx& F, Level l, int d, std::mt19937_64& rng) {
    return monic_at(F, l, d, rng() % monic_count(F, l, d));
}

std::string to_string(const FieldCtx& F, const Poly& f) {
    (void)F;
    if (f.is_zero()) return "0";
    std::string s;
    for (int i = f.deg(); i >= 0; --i) {
        if (f.c[i] == 0) continue;
        if (!s.empty()) s += "+";
        if (i == 0 || f.c[i] != 1) s += std::to_string(f.c[i]);
        if (i >= 1) s += i == 1 ? "T" : "T^" + std::to_string(i);
    }
    return s;
}

// ---- factorization ----

namespace {

std::uint64_t fnv_hash(const Poly& f, std::uint64_t seed) {
    std::uint64_t h = 1469598103934665603ull ^ seed;
    for (auto c : f.c) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

// p-th root of a coefficient: c^(Q/p), inverse of x -> x^p on F_Q.
FElem coeff_pth_root(const FieldCtx& F, Level l, FElem c) {
    const auto& fld = F.field(l);
    std::uint64_t e = fld.size() / fld.p();
    return fld.pow(c, e);
}

void collect_equal_degree(const FieldCtx& F, const Poly& prod, int d, std::uint32_t mult,
                          std::mt19937_64& rng, std::vector<PrimePower>& out) {
    if (prod.deg() == d) {
        out.push_back({prod, mult});
        return;
    }
    const std::uint64_t Q = F.size(prod.level);
    std::uint64_t exp = 1;
    for (int i = 0; i < d; ++i) exp *= Q;
    exp = (exp - 1) / 2;  // field odd
    while (true) {
        Poly r = random_monic(F, prod.level, prod.deg() - 1, rng);
        Poly s = powmod(F, r, exp, prod);
        s = sub(F, s, poly_one(prod.level));
        Poly g = gcd(F, s, prod);
        if (g.deg() > 0 && g.deg() < prod.deg()) {
            collect_equal_degree(F, g, d, mult, rng, out);
            collect_equal_degree(F, divmod(F, prod, g).first, d, mult, rng, out);
            return;
        }
    }
}

// f monic square-free; distinct-degree split then equal-degree split.
void factor_squarefree(const FieldCtx& F, Poly f, std::uint32_t mult, std::mt19937_64& rng,
                       std::vector<PrimePower>& out) {
    const std::uint64_t Q = F.size(f.level);
    Poly T = poly_T(f.level);
    Poly w = rem(F, T, f);
    for (int d = 1; 2 * d <= f.deg(); ++d) {
        w = powmod(F, w, Q, f);
        Poly g = gcd(F, sub(F, w, T), f);
        if (g.deg() > 0) {
            collect_equal_degree(F, g, d, mult, rng, out);
            f = divmod(F, f, g).first;
            w = rem(F, w, f);
        }
    }
    if (f.deg() > 0) out.push_back({f, mult});
}

void factor_rec(const FieldCtx& F, Poly f, std::uint32_t mult, std::mt19937_64& rng,
                std::vector<PrimePower>& out) {
    if (f.deg() <= 0) return;
    Poly df = derivative(F, f);
    if (df.is_zero()) {
        // f = h(T^p): take the p-th root and recurse with multiplicity * p.
        const std::uint32_t p = F.p();
        Poly h{f.level, {}};
        h.c.resize(f.deg() / p + 1, 0);
        for (std::size_t i = 0; i < h.c.size(); ++i)
            h.c[i] = coeff_pth_root(F, f.level, f.c[i * p]);
        factor_rec(F, h, mult * p, rng, out);
        return;
    }
    Poly g = gcd(F, f, df);
    if (g.deg() == 0) {
        factor_squarefree(F, f, mult, rng, out);
        return;
    }
    factor_rec(F, g, mult, rng, out);
    factor_rec(F, divmod(F, f, g).first, mult, rng, out);
}

}  // namespace

Factorization factor(const FieldCtx& F, const Poly& f, std::uint64_t seed) {
    if (f.is_zero()) throw std::invalid_argument("factor: zero polynomial");
    Factorization fa;
    fa.unit = f.lead();
    Poly g = make_monic(F, f);
    std::mt19937_64 rng(fnv_hash(f, seed));
    std::vector<PrimePower> parts;
    factor_rec(F, g, 1, rng, parts);

    // Merge repeated primes, then sort deterministically.
    std::map<std::pair<int, std::uint64_t>, std::pair<Poly, std::uint32_t>> merged;
    for (auto& pp : parts) {
        auto key = std::make_pair(pp.prime.deg(), poly_key(F, pp.prime));
        auto it = merged.find(key);
        if (it == merged.end())
            merged.emplace(key, std::make_pair(pp.prime, pp.exp));
        else
            it->second.second += pp.exp;
    }
    for (auto& [k, v] : merged) fa.factors.push_back({v.first, v.second});
#ifndef NDEBUG
    // re-multiplication check: the factor list must reconstruct the input
    if (!fa.factors.empty() && !(multiply_out(F, fa) == f))
        throw std::logic_error("factor: reconstruction failed");
#endif
    return fa;
}

Poly multiply_out(const FieldCtx& F, const Factorization& fa) {
    Level l = fa.factors.empty() ? Level::Base : fa.factors[0].prime.level;
    Poly r = poly_const(l, fa.unit);
    for (auto& pp : fa.factors)
        for (std::uint32_t i = 0; i < pp.exp; ++i) r = mul(F, r, pp.prime);
    return r;
}

bool is_irreducible(const FieldCtx& F, const Poly& f) {
    if (f.deg() <= 0) return false;
    if (f.deg() == 1) return true;
    const std::uint64_t Q = F.size(f.level);
    const std::uint32_t n = f.deg();
    // x^{Q^n} == x (mod f) and gcd(x^{Q^{n/l}} - x, f) = 1 for prime l | n.
    Poly T = poly_T(f.level);
    Poly w = rem(F, T, f);
    std::vector<Poly> qpowers(n + 1, poly_zero(f.level));  // x^{Q^i} mod f
    qpowers[0] = w;
    for (std::uint32_t i = 1; i <= n; ++i) qpowers[i] = powmod(F, qpowers[i - 1], Q, f);
    if (!(sub(F, qpowers[n], w).is_zero())) return false;
    for (std::uint32_t l = 2; l <= n; ++l) {
        if (n % l != 0 || !is_prime_u32(l)) continue;
        Poly g = gcd(F, sub(F, qpowers[n / l], w), f);
        if (g.deg() != 0) return false;
    }
    return true;
}

bool is_squarefree(const FieldCtx& F, const Poly& f) {
    if (f.is_zero()) return false;
    Poly df = derivative(F, f);
    if (df.is_zero()) return f.deg() == 0;
    return gcd(F, f, df).deg() == 0;
}

}  // namespace cubicl
