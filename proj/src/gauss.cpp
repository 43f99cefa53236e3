#include "cubicl/gauss.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace cubicl {

namespace {

constexpr std::uint64_t kBruteCap = 1000000;

std::uint64_t pow_u64(std::uint64_t b, int e) {
    std::uint64_t r = 1;
    for (int i = 0; i < e; ++i) r *= b;
    return r;
}

std::complex<double> zeta_p_power(std::uint32_t p, std::uint32_t t) {
    double ang = 2.0 * std::numbers::pi * t / p;
    return {std::cos(ang), std::sin(ang)};
}

Poly residue_at(const FieldCtx& F, Level l, int degF, std::uint64_t idx) {
    Poly r{l, {}};
    const std::uint64_t Q = F.size(l);
    for (int i = 0; i < degF && idx; ++i) {
        r.c.push_back(static_cast<FElem>(idx % Q));
        idx /= Q;
    }
    while (!r.c.empty() && r.c.back() == 0) r.c.pop_back();
    return r;
}

// The cubic character attached to a modulus at either level, as a list of Ext
// primes with exponents. At base level each prime factor must have even
// degree; its character is the restriction of the symbol of the first Ext
// prime above it (the other choice is the conjugate character).
struct ModulusChar {
    std::vector<const SymbolTable*> tabs;
    std::vector<Poly> ext_primes;
    std::vector<std::uint32_t> exps;

    static ModulusChar make(const FieldCtx& F, Level l, const Poly& mod, SymbolTableCache& cache) {
        ModulusChar mc;
        Factorization fa = factor(F, mod);
        for (auto& pp : fa.factors) {
            Poly pi = pp.prime;
            if (l == Level::Base) {
                if (pp.prime.deg() % 2 != 0)
                    throw std::invalid_argument(
                        "gauss_sum: cubic character undefined at base level for odd-degree prime");
                pi = factor(F, lift(F, pp.prime)).factors[0].prime;
            }
            mc.ext_primes.push_back(pi);
            mc.exps.push_back(pp.exp);
            mc.tabs.push_back(&cache.get(pi));
        }
        return mc;
    }

    SymExp eval_ext_arg(const FieldCtx& F, const Poly& uExt) const {
        int s = 0;
        for (std::size_t i = 0; i < ext_primes.size(); ++i) {
            SymExp v = tabs[i]->at_key(poly_key(F, rem(F, uExt, ext_primes[i])));
            if (v == SYM_ZERO) return SYM_ZERO;
            s += static_cast<int>(v) * static_cast<int>(exps[i]);
        }
        return static_cast<SymExp>(s % 3);
    }
};

std::complex<double> bucket_total(const FieldCtx& F, const std::vector<std::int64_t>& buckets) {
    std::complex<double> total = 0;
    for (int s = 0; s < 3; ++s)
        for (std::uint32_t t = 0; t < F.p(); ++t) {
            std::int64_t n = buckets[static_cast<std::size_t>(s) * F.p() + t];
            if (n) total += static_cast<double>(n) * omega_pow(s).to_complex() * zeta_p_power(F.p(), t);
        }
    return total;
}

std::complex<double> gauss_sum_brute(const FieldCtx& F, Level l, const Poly& V, const Poly& mod,
                                     SymbolTableCache& cache) {
    const std::uint64_t size = pow_u64(F.size(l), mod.deg());
    if (size > kBruteCap) throw std::invalid_argument("gauss_sum: brute size cap exceeded");
    if (mod.deg() == 0) return 1.0;  // empty-modulus convention G(V, 1) = 1

    ModulusChar mc = ModulusChar::make(F, l, mod, cache);
    Poly Vred = rem(F, V, mod);
    std::vector<std::int64_t> buckets(3 * F.p(), 0);
    for (std::uint64_t idx = 1; idx < size; ++idx) {
        Poly u = residue_at(F, l, mod.deg(), idx);
        SymExp s = mc.eval_ext_arg(F, l == Level::Base ? lift(F, u) : u);
        if (s == SYM_ZERO) continue;
        std::uint32_t t = hayes_exponent(F, l, mul(F, u, Vred), mod);
        buckets[static_cast<std::size_t>(s) * F.p() + t]++;
    }
    return bucket_total(F, buckets);
}

// G(1, P) for a prime modulus: the trace argument is just the top coefficient
// of the residue, so the loop is table lookups only.
std::complex<double> gauss_prime_unit(const FieldCtx& F, Level l, const Poly& P, SymbolTableCache& cache) {
    const std::uint64_t size = pow_u64(F.size(l), P.deg());
    if (size > kBruteCap) throw std::invalid_argument("gauss_sum: prime modulus too large");
    ModulusChar mc = ModulusChar::make(F, l, P, cache);
    std::vector<std::int64_t> buckets(3 * F.p(), 0);
    for (std::uint64_t idx = 1; idx < size; ++idx) {
        Poly u = residue_at(F, l, P.deg(), idx);
        SymExp s = mc.eval_ext_arg(F, l == Level::Base ? lift(F, u) : u);
        if (s == SYM_ZERO) continue;
        FElem top = u.deg() == P.deg() - 1 ? u.c[P.deg() - 1] : 0;
        buckets[static_cast<std::size_t>(s) * F.p() + F.trace_to_prime(l, top)]++;
    }
    return bucket_total(F, buckets);
}

std::complex<double> gauss_sum_multiplicative(const FieldCtx& F, Level l, const Poly& V, const Poly& mod,
                                              SymbolTableCache& cache) {
    if (mod.deg() == 0) return 1.0;
    Factorization fa = factor(F, mod);
    if (l == Level::Base && fa.factors.size() > 1)
        throw std::invalid_argument(
            "gauss_sum: the multiplicativity law is only available at the q^2 level");
    for (auto& pp : fa.factors)
        if (pp.exp != 1) throw std::invalid_argument("gauss_sum: multiplicative method needs square-free modulus");

    // Peel primes left to right: G(V, P F') = chi_P(F')^2 G(V, P) G(V, F').
    std::complex<double> total = 1.0;
    for (std::size_t i = 0; i < fa.factors.size(); ++i) {
        const Poly& P = fa.factors[i].prime;
        ModulusChar mc = ModulusChar::make(F, l, P, cache);
        for (std::size_t j = i + 1; j < fa.factors.size(); ++j) {
            Poly rest = l == Level::Base ? lift(F, fa.factors[j].prime) : fa.factors[j].prime;
            SymExp c = mc.eval_ext_arg(F, rest);
            if (c == SYM_ZERO) throw std::logic_error("gauss_sum: shared factor in square-free modulus");
            total *= omega_pow(2 * c).to_complex();
        }
        SymExp tw = mc.eval_ext_arg(F, l == Level::Base ? lift(F, V) : V);
        if (tw == SYM_ZERO) return 0.0;  // P | V
        total *= omega_pow(2 * tw).to_complex() * gauss_prime_unit(F, l, P, cache);
    }
    return total;
}

std::complex<double> gauss_sum_impl(const FieldCtx& F, Level l, const Poly& V, const Poly& mod,
                                    GaussMethod method, SymbolTableCache& cache) {
    if (!mod.is_monic()) throw std::invalid_argument("gauss_sum: modulus must be monic");
    switch (method) {
        case GaussMethod::Brute:
            return gauss_sum_brute(F, l, V, mod, cache);
        case GaussMethod::Multiplicative:
            return gauss_sum_multiplicative(F, l, V, mod, cache);
        case GaussMethod::Auto: {
            if (l == Level::Ext && is_squarefree(F, mod))
                return gauss_sum_multiplicative(F, l, V, mod, cache);
            if (pow_u64(F.size(l), mod.deg()) <= kBruteCap) return gauss_sum_brute(F, l, V, mod, cache);
            throw std::invalid_argument("gauss_sum: modulus too large for brute");
        }
    }
    throw std::logic_error("gauss_sum: unreachable");
}

}  // namespace

std::uint32_t hayes_exponent(const FieldCtx& F, Level l, const Poly& V, const Poly& mod) {
    if (mod.is_zero()) throw std::invalid_argument("hayes_e: zero modulus");
    if (!mod.is_monic()) throw std::invalid_argument("hayes_e: modulus must be monic");
    if (mod.deg() == 0) return 0;
    Poly r = rem(F, V, mod);
    FElem top = r.deg() == mod.deg() - 1 ? r.c[mod.deg() - 1] : 0;
    return F.trace_to_prime(l, top);
}

std::complex<double> hayes_e(const FieldCtx& F, Level l, const Poly& V, const Poly& mod) {
    return zeta_p_power(F.p(), hayes_exponent(F, l, V, mod));
}

std::complex<double> gauss_sum(const FieldCtx& F, Level l, const Poly& V, const Poly& mod,
                               GaussMethod method) {
    SymbolTableCache cache(F);
    return gauss_sum_impl(F, l, V, mod, method, cache);
}

std::complex<double> tau_cubic(const FieldCtx& F) {
    std::complex<double> total = 0;
    const std::uint64_t ord = static_cast<std::uint64_t>(F.q2()) - 1;
    for (FElem a = 1; a < F.q2(); ++a) {
        FElem s = F.field(Level::Ext).pow(a, ord / 3);
        int k = F.cube_root_exponent(s);
        total += omega_pow(k).to_complex() * zeta_p_power(F.p(), F.trace_to_prime(Level::Ext, a));
    }
    return total;
}

GaussDegreeTotal gauss_sum_degree_total(const FieldCtx& F, const Poly& f, int d) {
    if (f.level != Level::Ext) throw std::invalid_argument("gauss_sum_degree_total: Ext level input");
    GaussDegreeTotal out;
    SymbolTableCache cache(F);

    std::complex<double> lhs = 0;
    const std::uint64_t total = monic_count(F, Level::Ext, d);
    for (std::uint64_t idx = 0; idx < total; ++idx) {
        Poly mod = monic_at(F, Level::Ext, d, idx);
        if (gcd(F, mod, f).deg() != 0) continue;
        if (is_squarefree(F, mod))
            lhs += gauss_sum_multiplicative(F, Level::Ext, f, mod, cache);
        else
            lhs += gauss_sum_brute(F, Level::Ext, f, mod, cache);
    }
    out.lhs = lhs;

    // f = f1 f2^2 f3^3 with f1, f2 square-free and coprime.
    Factorization fa = factor(F, f);
    Poly f1 = poly_one(Level::Ext), f2 = poly_one(Level::Ext), f3 = poly_one(Level::Ext);
    for (auto& pp : fa.factors) {
        std::uint32_t r = pp.exp % 3, a = pp.exp / 3;
        if (r == 1) f1 = mul(F, f1, pp.prime);
        if (r == 2) f2 = mul(F, f2, pp.prime);
        for (std::uint32_t i = 0; i < a; ++i) f3 = mul(F, f3, pp.prime);
    }
    out.f1 = f1;
    out.f2 = f2;
    out.f3 = f3;
    out.f2_is_one = f2.is_one();
    out.residue_class = mod3_class(d + f1.deg());

    const double Q = static_cast<double>(F.q2());
    if (out.residue_class == 0)
        out.rho = 1.0;
    else if (out.residue_class == 1)
        out.rho = tau_cubic(F) * Q;
    else
        out.rho = 0.0;

    if (!out.f2_is_one || out.residue_class == 2) {
        out.main_term = 0.0;
    } else {
        double zeta_q2_2_inv = 1.0 - 1.0 / Q;  // 1/zeta_{q^2}(2)
        double power = std::pow(Q, 4.0 * d / 3.0 - 4.0 * out.residue_class / 3.0);
        double f1norm = std::pow(Q, f1.deg());
        std::complex<double> g1 =
            std::conj(gauss_sum_impl(F, Level::Ext, poly_one(Level::Ext), f1, GaussMethod::Auto, cache));
        // product over primes of f1 and of f3 away from f1 f2
        double pprod = 1.0;
        for (auto& pp : fa.factors) {
            std::uint32_t r = pp.exp % 3;
            bool in_f1 = r == 1;
            bool in_f3_star = r == 0;
            if (in_f1 || in_f3_star) pprod /= 1.0 + 1.0 / std::pow(Q, pp.prime.deg());
        }
        out.main_term = power * zeta_q2_2_inv / std::pow(f1norm, 2.0 / 3.0) * g1 * out.rho * pprod;
    }
    if (std::abs(out.main_term) > 0) out.ratio_abs = std::abs(out.lhs) / std::abs(out.main_term);
    return out;
}

std::complex<double> perron_coeff(const std::vector<std::complex<double>>& coeffs, int n, PerronMode mode) {
    if (n < 0 || static_cast<std::size_t>(n) >= coeffs.size())
        throw std::invalid_argument("perron_coeff: insufficient coefficients");
    if (mode == PerronMode::ExactN) return coeffs[n];
    std::complex<double> s = 0;
    for (int i = 0; i <= n; ++i) s += coeffs[i];
    return s;
}

std::vector<std::complex<double>> gen_series_coeffs(const FieldCtx& F, const Poly& f, int D) {
    std::vector<std::complex<double>> out;
    out.reserve(D + 1);
    for (int d = 0; d <= D; ++d) out.push_back(gauss_sum_degree_total(F, f, d).lhs);
    return out;
}

}  // namespace cubicl
