#pragma once

#include <cstdint>
#include <vector>

#include "cubicl/character.hpp"
#include "cubicl/lfunction.hpp"

namespace cubicl {

// All primitive cubic characters of genus g over F_q[T] (non-Kummer case):
// one character per admissible modulus F over F_{q^2}, in deterministic
// enumeration order, with every per-character quantity precomputed.
struct FamilyData {
    const FieldCtx* F = nullptr;
    int g = 0;
    PrimeTable primes;        // base-level primes, degree <= g+1
    MonicFactorTable monics;  // base-level monics, degree <= g+1

    std::vector<CubicCharacter> chars;
    std::vector<std::uint32_t> conj_index;  // involution chi <-> conj(chi) via the conjugate modulus
    std::vector<LPolynomial> L;
    std::vector<SqrtExt> central;  // exact q^{(g+1)/2} L(1/2)
    std::vector<std::complex<double>> central_c;
    std::vector<std::complex<double>> omega;

    std::size_t size() const { return chars.size(); }
    // chi(h) for monic base h whose prime factors have degree <= g+1.
    SymExp eval_base_monic(std::uint32_t char_idx, const Poly& h) const;
};

// Admissibility filter on a monic modulus over F_{q^2}: square-free, no prime
// factor lying in F_q[T], and no base prime of F_q[T] dividing the modulus
// (equivalently, no Galois-conjugate pair of primes both divide it).
bool family_modulus_admissible(const FieldCtx& F, const Poly& modulus);

// Enumerate admissible moduli of degree g/2+1, deterministic order; parallel
// over contiguous index blocks, concatenated in block order.
std::vector<Poly> enumerate_family_moduli(const FieldCtx& F, int g, int threads = 1);

// Full pipeline: moduli, symbol tables, prime caches, L-polynomials, central
// values, root numbers. threads = 1 is the serial reference path.
FamilyData build_family(const FieldCtx& F, int g, int threads = 1);

}  // namespace cubicl
