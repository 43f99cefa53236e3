#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "cubicl/field.hpp"

namespace cubicl {

// Polynomial over one floor of the tower. Coefficients are stored little-endian
// (c[i] is the coefficient of T^i) with no trailing zeros; zero is the empty
// vector. Values are immutable by convention once built.
struct Poly {
    Level level = Level::Base;
    std::vector<FElem> c;

    bool is_zero() const { return c.empty(); }
    int deg() const { return static_cast<int>(c.size()) - 1; }
    FElem lead() const { return c.empty() ? 0 : c.back(); }
    bool is_monic() const { return !c.empty() && c.back() == 1; }
    bool is_one() const { return c.size() == 1 && c[0] == 1; }
    bool operator==(const Poly& o) const { return level == o.level && c == o.c; }
};

Poly poly_zero(Level l);
Poly poly_one(Level l);
Poly poly_const(Level l, FElem a);
Poly poly_T(Level l);
Poly poly_from(Level l, std::vector<FElem> coeffs);

Poly add(const FieldCtx& F, const Poly& a, const Poly& b);
Poly sub(const FieldCtx& F, const Poly& a, const Poly& b);
Poly neg(const FieldCtx& F, const Poly& a);
Poly mul(const FieldCtx& F, const Poly& a, const Poly& b);
Poly mul_scalar(const FieldCtx& F, const Poly& a, FElem s);
// Division with remainder; b nonzero.
std::pair<Poly, Poly> divmod(const FieldCtx& F, const Poly& a, const Poly& b);
Poly rem(const FieldCtx& F, const Poly& a, const Poly& b);
bool divides(const FieldCtx& F, const Poly& a, const Poly& b);  // a | b
Poly gcd(const FieldCtx& F, Poly a, Poly b);                    // monic (or zero)
Poly make_monic(const FieldCtx& F, const Poly& a);
Poly powmod(const FieldCtx& F, const Poly& base, std::uint64_t e, const Poly& mod);
Poly derivative(const FieldCtx& F, const Poly& a);
FElem eval(const FieldCtx& F, const Poly& a, FElem x);

// Coefficientwise q-power Frobenius (the Galois conjugate over F_q); Ext level.
Poly conjugate(const FieldCtx& F, const Poly& a);
// Exact membership of every coefficient in F_q (Frobenius fixed-point test).
bool poly_in_base(const FieldCtx& F, const Poly& a);
Poly lift(const FieldCtx& F, const Poly& a);     // Base -> Ext
Poly project(const FieldCtx& F, const Poly& a);  // Ext -> Base, coefficients must lie in F_q

// |f| = (field size)^deg f as a double (exact for desk sizes).
double norm(const FieldCtx& F, const Poly& f);

// Deterministic enumeration of monic polynomials of degree d: index digits in
// base |field|, digit i = coefficient of T^i.
std::uint64_t monic_count(const FieldCtx& F, Level l, int d);
Poly monic_at(const FieldCtx& F, Level l, int d, std::uint64_t index);
// Packed key (includes the leading coefficient) for table indexing.
std::uint64_t poly_key(const FieldCtx& F, const Poly& f);

Poly random_monic(const FieldCtx& F, Level l, int d, std::mt19937_64& rng);

std::string to_string(const FieldCtx& F, const Poly& f);

// ---- factorization ----

struct PrimePower {
    Poly prime;  // monic irreducible
    std::uint32_t exp = 0;
};

struct Factorization {
    FElem unit = 1;
    std::vector<PrimePower> factors;  // primes distinct, sorted by (deg, key)
};

// Square-free then distinct-degree then equal-degree splitting. The splitting
// randomness is seeded from `seed` and the polynomial itself, so results are
// reproducible in any call order. Throws on the zero polynomial.
Factorization factor(const FieldCtx& F, const Poly& f, std::uint64_t seed = 0);
Poly multiply_out(const FieldCtx& F, const Factorization& fa);
bool is_irreducible(const FieldCtx& F, const Poly& f);
bool is_squarefree(const FieldCtx& F, const Poly& f);

}  // namespace cubicl
