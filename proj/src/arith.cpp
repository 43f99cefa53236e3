#include "cubicl/arith.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace cubicl {

PrimeTable build_prime_table(const FieldCtx& F, Level l, int max_deg) {
    PrimeTable pt;
    pt.level = l;
    pt.max_deg = max_deg;
    pt.deg_begin.assign(max_deg + 2, 0);
    for (int d = 1; d <= max_deg; ++d) {
        std::uint64_t n = monic_count(F, l, d);
        for (std::uint64_t idx = 0; idx < n; ++idx) {
            Poly f = monic_at(F, l, d, idx);
            // Trial division by the primes of degree <= d/2 found so far.
            bool irred = true;
            for (std::uint32_t i = 0; i < pt.primes.size() && irred; ++i) {
                if (2 * pt.primes[i].deg() > d) break;
                if (rem(F, f, pt.primes[i]).is_zero()) irred = false;
            }
            if (irred) {
                pt.index_of.emplace(poly_key(F, f), static_cast<std::uint32_t>(pt.primes.size()));
                pt.primes.push_back(std::move(f));
            }
        }
        pt.deg_begin[d + 1] = static_cast<std::uint32_t>(pt.primes.size());
    }
    return pt;
}

std::uint64_t prime_count(const FieldCtx& F, Level l, int n) {
    if (n < 1) throw std::invalid_argument("prime_count: n must be >= 1");
    const std::uint64_t Q = F.size(l);
    std::int64_t total = 0;
    for (int d = 1; d <= n; ++d) {
        if (n % d != 0) continue;
        // mu(d) over the integers
        int m = 1, dd = d;
        for (int r = 2; r * r <= dd; ++r) {
            if (dd % r == 0) {
                dd /= r;
                if (dd % r == 0) { m = 0; break; }
                m = -m;
            }
        }
        if (dd > 1 && m != 0) m = -m;
        if (m == 0) continue;
        std::uint64_t qp = 1;
        for (int i = 0; i < n / d; ++i) qp *= Q;
        total += m * static_cast<std::int64_t>(qp);
    }
    return static_cast<std::uint64_t>(total / n);
}

std::uint64_t prime_count_enumerated(const FieldCtx& F, Level l, int n) {
    if (n < 1) throw std::invalid_argument("prime_count_enumerated: n must be >= 1");
    std::uint64_t c = 0;
    for (std::uint64_t idx = 0; idx < monic_count(F, l, n); ++idx)
        if (is_irreducible(F, monic_at(F, l, n, idx))) ++c;
    return c;
}

MonicFactorTable build_monic_factor_table(const FieldCtx& F, const PrimeTable& pt, int max_deg) {
    if (pt.level != Level::Base) throw std::invalid_argument("monic factor table: base level only");
    if (pt.max_deg < max_deg) throw std::invalid_argument("monic factor table: prime table too short");
    MonicFactorTable t;
    t.max_deg = max_deg;
    t.deg_offset.assign(max_deg + 1, 0);
    std::uint64_t total = 0;
    for (int d = 0; d <= max_deg; ++d) {
        t.deg_offset[d] = total;
        total += monic_count(F, Level::Base, d);
    }
    t.begin.assign(total + 1, 0);
    std::uint64_t slot = 0;
    for (int d = 0; d <= max_deg; ++d) {
        std::uint64_t n = monic_count(F, Level::Base, d);
        for (std::uint64_t idx = 0; idx < n; ++idx, ++slot) {
            t.begin[slot] = static_cast<std::uint32_t>(t.entries.size());
            Poly f = monic_at(F, Level::Base, d, idx);
            // trial division in prime-table order
            for (std::uint32_t i = 0; i < pt.size() && f.deg() > 0; ++i) {
                const Poly& P = pt.at(i);
                if (P.deg() > f.deg()) continue;
                std::uint8_t e = 0;
                while (true) {
                    auto [qt, r] = divmod(F, f, P);
                    if (!r.is_zero()) break;
                    f = qt;
                    ++e;
                }
                if (e) t.entries.emplace_back(i, e);
            }
        }
    }
    t.begin[slot] = static_cast<std::uint32_t>(t.entries.size());
    return t;
}

int mobius(const Factorization& fa) {
    for (auto& pp : fa.factors)
        if (pp.exp >= 2) return 0;
    return fa.factors.size() % 2 == 0 ? 1 : -1;
}

std::uint64_t euler_phi(const FieldCtx& F, const Factorization& fa) {
    // |f| prod (1 - |P|^{-1}) = prod |P|^{e_P deg P - deg P} (|P| - 1) ... computed per prime.
    Level l = fa.factors.empty() ? Level::Base : fa.factors[0].prime.level;
    const std::uint64_t Q = F.size(l);
    std::uint64_t phi = 1;
    for (auto& pp : fa.factors) {
        std::uint64_t np = 1;
        for (int i = 0; i < pp.prime.deg(); ++i) np *= Q;
        for (std::uint32_t e = 1; e < pp.exp; ++e) phi *= np;
        phi *= np - 1;
    }
    return phi;
}

std::uint32_t von_mangoldt(const Factorization& fa) {
    if (fa.factors.size() != 1) return 0;
    return static_cast<std::uint32_t>(fa.factors[0].prime.deg());
}

std::uint32_t big_omega(const Factorization& fa) {
    std::uint32_t s = 0;
    for (auto& pp : fa.factors) s += pp.exp;
    return s;
}

int liouville(const Factorization& fa) { return big_omega(fa) % 2 == 0 ? 1 : -1; }

namespace {
double factorial(std::uint32_t n) {
    double r = 1;
    for (std::uint32_t i = 2; i <= n; ++i) r *= i;
    return r;
}
}  // namespace

double nu(const Factorization& fa) {
    double r = 1;
    for (auto& pp : fa.factors) r /= factorial(pp.exp);
    return r;
}

double nu_j(const Factorization& fa, int j) {
    double r = 1;
    for (auto& pp : fa.factors) r *= std::pow(static_cast<double>(j), pp.exp) / factorial(pp.exp);
    return r;
}

double nu_trunc(const Factorization& fa, int n, std::int64_t ell) {
    if (n <= 0) throw std::invalid_argument("nu_trunc: n must be positive");
    // Dense DP over load vectors: slot loads in [0, ell], encoded base (ell+1).
    std::uint32_t omega = big_omega(fa);
    std::int64_t cap = std::min<std::int64_t>(ell, omega);
    if (cap < 0) return 0.0;
    std::size_t base = static_cast<std::size_t>(cap) + 1;
    std::size_t states = 1;
    for (int i = 0; i < n; ++i) {
        if (states > 100000000 / base) throw std::invalid_argument("nu_trunc: state space too large");
        states *= base;
    }
    std::vector<double> dp(states, 0.0);
    dp[0] = 1.0;
    std::vector<std::size_t> stride(n);
    for (int i = 0; i < n; ++i) stride[i] = i == 0 ? 1 : stride[i - 1] * base;

    // Distribute each prime's exponent over the n slots with multinomial 1/e! weights.
    std::vector<int> parts(n, 0);
    for (auto& pp : fa.factors) {
        std::vector<double> next(states, 0.0);
        // enumerate compositions of pp.exp into n parts
        std::function<void(int, std::uint32_t)> recurse = [&](int slotIdx, std::uint32_t left) {
            if (slotIdx == n - 1) {
                parts[slotIdx] = static_cast<int>(left);
                double w = 1.0;
                for (int i = 0; i < n; ++i) w /= factorial(parts[i]);
                for (std::size_t s = 0; s < states; ++s) {
                    if (dp[s] == 0.0) continue;
                    bool ok = true;
                    std::size_t snew = 0;
                    for (int i = 0; i < n; ++i) {
                        std::size_t load = (s / stride[i]) % base;
                        std::size_t nl = load + parts[i];
                        if (static_cast<std::int64_t>(nl) > cap) { ok = false; break; }
                        snew += nl * stride[i];
                    }
                    if (ok) next[snew] += dp[s] * w;
                }
                return;
            }
            for (std::uint32_t take = 0; take <= left; ++take) {
                parts[slotIdx] = static_cast<int>(take);
                recurse(slotIdx + 1, left - take);
            }
        };
        recurse(0, pp.exp);
        dp.swap(next);
    }
    double total = 0;
    for (double v : dp) total += v;
    return total;
}

double arith_fn(const FieldCtx& F, const Poly& f, ArithFn which, int j, std::int64_t ell) {
    if (f.is_zero() || !f.is_monic()) throw std::invalid_argument("arith_fn: f must be monic nonzero");
    Factorization fa = factor(F, f);
    switch (which) {
        case ArithFn::Mobius: return mobius(fa);
        case ArithFn::EulerPhi: return static_cast<double>(euler_phi(F, fa));
        case ArithFn::VonMangoldt: return von_mangoldt(fa);
        case ArithFn::Liouville: return liouville(fa);
        case ArithFn::BigOmega: return big_omega(fa);
        case ArithFn::Nu: return nu(fa);
        case ArithFn::NuJ: return nu_j(fa, j);
        case ArithFn::NuTrunc: return nu_trunc(fa, j, ell);
    }
    throw std::logic_error("arith_fn: unreachable");
}

std::vector<Poly> divisors(const FieldCtx& F, const Factorization& fa) {
    Level l = fa.factors.empty() ? Level::Base : fa.factors[0].prime.level;
    std::vector<Poly> out{poly_one(l)};
    for (auto& pp : fa.factors) {
        std::size_t n = out.size();
        Poly pw = poly_one(l);
        for (std::uint32_t e = 1; e <= pp.exp; ++e) {
            pw = mul(F, pw, pp.prime);
            for (std::size_t i = 0; i < n; ++i) out.push_back(mul(F, out[i], pw));
        }
    }
    return out;
}

}  // namespace cubicl
