#pragma once

#include <cstdint>
#include <unordered_map>
#include <vector>

#include "cubicl/poly.hpp"

namespace cubicl {

// All monic irreducibles of one field level up to a degree bound, in
// deterministic (degree, enumeration-index) order.
struct PrimeTable {
    Level level = Level::Base;
    int max_deg = 0;
    std::vector<Poly> primes;
    std::vector<std::uint32_t> deg_begin;  // primes of degree d occupy [deg_begin[d], deg_begin[d+1])
    std::unordered_map<std::uint64_t, std::uint32_t> index_of;  // poly_key -> index

    std::uint32_t count(int d) const { return deg_begin[d + 1] - deg_begin[d]; }
    const Poly& at(std::uint32_t i) const { return primes[i]; }
    std::uint32_t size() const { return static_cast<std::uint32_t>(primes.size()); }
};

PrimeTable build_prime_table(const FieldCtx& F, Level l, int max_deg);

// pi(n) by Mobius inversion: (1/n) sum_{d|n} mu(d) q^{n/d}. Errors on n = 0.
std::uint64_t prime_count(const FieldCtx& F, Level l, int n);
// pi(n) by exhaustive enumeration (test oracle).
std::uint64_t prime_count_enumerated(const FieldCtx& F, Level l, int n);

// Factorizations of every monic of degree <= max_deg at Base level, flattened,
// with primes referred to by PrimeTable index. Entry order follows the
// deterministic monic enumeration.
struct MonicFactorTable {
    int max_deg = 0;
    std::vector<std::uint64_t> deg_offset;        // offset of degree-d block in `begin`
    std::vector<std::uint32_t> begin;             // per monic: start into entries (size = total+1)
    std::vector<std::pair<std::uint32_t, std::uint8_t>> entries;  // (prime index, exponent)

    std::size_t slot(int d, std::uint64_t idx) const { return deg_offset[d] + idx; }
};

MonicFactorTable build_monic_factor_table(const FieldCtx& F, const PrimeTable& pt, int max_deg);

// Classical arithmetic functions, all driven by a factorization.
enum class ArithFn { Mobius, EulerPhi, VonMangoldt, Liouville, BigOmega, Nu, NuJ, NuTrunc };

int mobius(const Factorization& fa);
std::uint64_t euler_phi(const FieldCtx& F, const Factorization& fa);  // at fa's level
std::uint32_t von_mangoldt(const Factorization& fa);                  // deg P for prime powers, else 0
int liouville(const Factorization& fa);
std::uint32_t big_omega(const Factorization& fa);
double nu(const Factorization& fa);             // prod 1/e_i!
double nu_j(const Factorization& fa, int j);    // prod j^{e_i}/e_i!
// nu_n(f; ell): ordered n-factorizations with every part's big-Omega <= ell.
double nu_trunc(const Factorization& fa, int n, std::int64_t ell);

// Dispatcher mirroring the single-entry-point contract; f monic nonzero.
double arith_fn(const FieldCtx& F, const Poly& f, ArithFn which, int j = 0, std::int64_t ell = 0);

// All monic divisors of f (from its factorization), deterministic order.
std::vector<Poly> divisors(const FieldCtx& F, const Factorization& fa);

}  // namespace cubicl
