#include "cubicl/field.hpp"

#include <algorithm>
#include <functional>

namespace cubicl {

bool is_prime_u32(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint32_t n) {
    if (n < 2) throw std::invalid_argument("prime_power_decompose: n < 2");
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            std::uint32_t e = 0, m = n;
            while (m % d == 0) { m /= d; ++e; }
            if (m != 1) throw std::invalid_argument("not a prime power: " + std::to_string(n));
            return {d, e};
        }
    }
    return {n, 1};  // n itself prime
}

namespace {

// Minimal F_p[x] helpers used only while constructing tables.
using PPoly = std::vector<std::uint32_t>;

void ptrim(PPoly& f) {
    while (!f.empty() && f.back() == 0) f.pop_back();
}

PPoly pmul(const PPoly& a, const PPoly& b, std::uint32_t p) {
    if (a.empty() || b.empty()) return {};
    PPoly r(a.size() + b.size() - 1, 0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j)
            r[i + j] = (r[i + j] + static_cast<std::uint64_t>(a[i]) * b[j]) % p;
    ptrim(r);
    return r;
}

// f mod g, g monic.
PPoly pmod(PPoly f, const PPoly& g, std::uint32_t p) {
    ptrim(f);
    while (f.size() >= g.size()) {
        std::uint32_t c = f.back();
        std::size_t shift = f.size() - g.size();
        for (std::size_t i = 0; i < g.size(); ++i) {
            std::uint64_t sub = static_cast<std::uint64_t>(c) * g[i] % p;
            f[shift + i] = (f[shift + i] + p - sub) % p;
        }
        ptrim(f);
    }
    return f;
}

bool p_irreducible(const PPoly& f, std::uint32_t p) {
    // Trial division by every monic of degree <= deg(f)/2; f monic, deg >= 1.
    std::size_t n = f.size() - 1;
    if (n == 1) return true;
    for (std::size_t d = 1; 2 * d <= n; ++d) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < d; ++i) count *= p;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            PPoly g(d + 1, 0);
            std::uint64_t k = idx;
            for (std::size_t i = 0; i < d; ++i) { g[i] = k % p; k /= p; }
            g[d] = 1;
            if (pmod(f, g, p).empty()) return false;
        }
    }
    return true;
}

std::vector<std::uint32_t> prime_factors_u32(std::uint32_t n) {
    std::vector<std::uint32_t> out;
    for (std::uint32_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

}  // namespace

void TableField::build_tables(const std::function<FElem(FElem, FElem)>& raw_mul) {

    // Generator: smallest index with full multiplicative order.
    std::uint32_t order = size_ - 1;
    auto factors = prime_factors_u32(order);
    auto raw_pow = [&](FElem a, std::uint64_t k) {
        FElem r = 1;
        while (k) {
            if (k & 1) r = raw_mul(r, a);
            a = raw_mul(a, a);
            k >>= 1;
        }
        return r;
    };
    gen_ = 0;
    for (FElem c = 2; c < size_; ++c) {
        bool primitive = true;
        for (auto f : factors)
            if (raw_pow(c, order / f) == 1) { primitive = false; break; }
        if (primitive) { gen_ = c; break; }
    }
    if (gen_ == 0) throw std::logic_error("field: no generator found");

    exp_tab_.assign(2 * order, 0);
    log_tab_.assign(size_, 0);
    FElem cur = 1;
    for (std::uint32_t i = 0; i < order; ++i) {
        exp_tab_[i] = cur;
        exp_tab_[i + order] = cur;
        log_tab_[cur] = i;
        cur = raw_mul(cur, gen_);
    }

    trace_tab_.assign(size_, 0);
    for (FElem a = 0; a < size_; ++a) {
        FElem t = 0;
        FElem x = a;
        for (std::uint32_t i = 0; i < n_; ++i) {
            t = add_tab_[t * size_ + x];
            x = raw_pow(x, p_);
        }
        if (t >= p_) throw std::logic_error("field: trace left the prime field");
        trace_tab_[a] = t;
    }
}

FElem TableField::frobenius_p(FElem a, std::uint32_t k) const {
    std::uint64_t e = 1;
    for (std::uint32_t i = 0; i < k; ++i) e = e * p_ % (size_ - 1);
    return pow(a, e);
}

TableField TableField::make(std::uint32_t p, std::uint32_t n) {
    if (!is_prime_u32(p)) throw std::invalid_argument("field: p not prime");
    TableField F;
    F.p_ = p;
    F.n_ = n;
    std::uint64_t sz = 1;
    for (std::uint32_t i = 0; i < n; ++i) sz *= p;
    if (sz > 2048) throw std::invalid_argument("field: size cap exceeded (q^2 <= 2048)");
    F.size_ = static_cast<std::uint32_t>(sz);

    // Smallest-index monic irreducible modulus (x itself for n = 1).
    PPoly mod;
    if (n == 1) {
        mod = {0, 1};
    } else {
        std::uint64_t count = sz;
        for (std::uint64_t idx = 0; idx < count; ++idx) {
            PPoly g(n + 1, 0);
            std::uint64_t k = idx;
            for (std::uint32_t i = 0; i < n; ++i) { g[i] = static_cast<std::uint32_t>(k % p); k /= p; }
            g[n] = 1;
            if (p_irreducible(g, p)) { mod = g; break; }
        }
    }
    F.mod_.assign(mod.begin(), mod.end());

    auto unpack = [&](FElem a) {
        PPoly v(n, 0);
        for (std::uint32_t i = 0; i < n; ++i) { v[i] = a % p; a /= p; }
        ptrim(v);
        return v;
    };
    auto pack = [&](const PPoly& v) {
        FElem a = 0;
        for (std::size_t i = v.size(); i-- > 0;) a = a * p + v[i];
        return a;
    };

    F.add_tab_.assign(static_cast<std::size_t>(F.size_) * F.size_, 0);
    F.neg_tab_.assign(F.size_, 0);
    for (FElem a = 0; a < F.size_; ++a) {
        FElem ra = a, scale = 1;
        FElem negacc = 0;
        for (std::uint32_t i = 0; i < n; ++i) {
            negacc += ((p - ra % p) % p) * scale;
            ra /= p;
            scale *= p;
        }
        F.neg_tab_[a] = negacc;
        for (FElem b = 0; b < F.size_; ++b) {
            FElem x = a, y = b, s = 0, sc = 1;
            for (std::uint32_t i = 0; i < n; ++i) {
                s += ((x % p) + (y % p)) % p * sc;
                x /= p;
                y /= p;
                sc *= p;
            }
            F.add_tab_[static_cast<std::size_t>(a) * F.size_ + b] = s;
        }
    }

    F.build_tables([&](FElem a, FElem b) {
        return pack(pmod(pmul(unpack(a), unpack(b), p), mod, p));
    });
    return F;
}

TableField TableField::make_quadratic_ext(const TableField& base) {
    TableField F;
    const std::uint32_t q = base.size();
    F.p_ = base.p();
    F.n_ = 2 * base.degree_over_p();
    std::uint64_t sz = static_cast<std::uint64_t>(q) * q;
    if (sz > 2048) throw std::invalid_argument("field: size cap exceeded (q^2 <= 2048)");
    F.size_ = static_cast<std::uint32_t>(sz);

    // Smallest (c0 + c1*q) with y^2 + c1*y + c0 irreducible over the base,
    // i.e. without a root.
    FElem m0 = 0, m1 = 0;
    bool found = false;
    for (FElem idx = 0; idx < F.size_ && !found; ++idx) {
        FElem c0 = idx % q, c1 = idx / q;
        bool has_root = false;
        for (FElem t = 0; t < q; ++t) {
            FElem v = base.add(base.add(base.mul(t, t), base.mul(c1, t)), c0);
            if (v == 0) { has_root = true; break; }
        }
        if (!has_root) { m0 = c0; m1 = c1; found = true; }
    }
    if (!found) throw std::logic_error("field: no irreducible quadratic");
    F.mod_ = {m0, m1, 1};

    F.add_tab_.assign(static_cast<std::size_t>(F.size_) * F.size_, 0);
    F.neg_tab_.assign(F.size_, 0);
    for (FElem a = 0; a < F.size_; ++a) {
        F.neg_tab_[a] = base.neg(a % q) + base.neg(a / q) * q;
        for (FElem b = 0; b < F.size_; ++b)
            F.add_tab_[static_cast<std::size_t>(a) * F.size_ + b] =
                base.add(a % q, b % q) + base.add(a / q, b / q) * q;
    }

    // (a + b y)(c + d y) with y^2 = -m1 y - m0.
    F.build_tables([&](FElem x, FElem y) {
        FElem a = x % q, b = x / q;
        FElem c = y % q, d = y / q;
        FElem ac = base.mul(a, c), bd = base.mul(b, d);
        FElem cross = base.add(base.mul(a, d), base.mul(b, c));
        FElem lo = base.sub(ac, base.mul(bd, m0));
        FElem hi = base.sub(cross, base.mul(bd, m1));
        return lo + hi * q;
    });
    return F;
}

FieldCtx::FieldCtx(std::uint32_t q) : q_(q) {
    auto [p, e] = prime_power_decompose(q);
    p_ = p;
    e_ = e;
    if (q % 2 == 0) throw std::invalid_argument("FieldCtx: q must be odd");
    if (q % 3 != 2) throw std::invalid_argument("FieldCtx: q must be 2 mod 3");
    fq_ = TableField::make(p, e);
    fq2_ = TableField::make_quadratic_ext(fq_);

    frob_tab_.assign(q2(), 0);
    for (FElem a = 0; a < q2(); ++a) frob_tab_[a] = fq2_.pow(a, q_);

    cube_root_ = fq2_.exp((static_cast<std::uint64_t>(q2()) - 1) / 3);
    if (fq2_.pow(cube_root_, 3) != 1 || cube_root_ == 1)
        throw std::logic_error("FieldCtx: bad cube root of unity");
}

FElem FieldCtx::project(FElem a) const {
    if (!in_base(a)) throw std::domain_error("project: element not in F_q");
    return a;  // pairs (a, 0) pack to a
}

int FieldCtx::cube_root_exponent(FElem a) const {
    if (a == 1) return 0;
    if (a == cube_root_) return 1;
    if (a == fq2_.mul(cube_root_, cube_root_)) return 2;
    return -1;
}

}  // namespace cubicl
