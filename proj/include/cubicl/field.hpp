#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cubicl {

// Field element, stored as a packed coefficient index (0 is the zero element).
using FElem = std::uint32_t;

// Which floor of the tower F_q ⊂ F_{q^2} an object lives on.
enum class Level : std::uint8_t { Base = 0, Ext = 1 };

// F_{p^n} with exp/log tables. Element index packs the coefficient vector on
// the power basis of the modulus, least-significant digit first, base p.
class TableField {
public:
    TableField() = default;
    // Prime field F_p (n = 1) or extension F_p[x]/(modulus) with the modulus
    // found by deterministic search (smallest packed coefficient index).
    static TableField make(std::uint32_t p, std::uint32_t n);
    // Degree-2 extension of `base`: base[y]/(m2), elements packed a + b*|base|.
    static TableField make_quadratic_ext(const TableField& base);

    std::uint32_t p() const { return p_; }
    std::uint32_t degree_over_p() const { return n_; }
    std::uint32_t size() const { return size_; }
    FElem generator() const { return gen_; }
    const std::vector<FElem>& modulus() const { return mod_; }

    FElem add(FElem a, FElem b) const { return add_tab_[a * size_ + b]; }
    FElem neg(FElem a) const { return neg_tab_[a]; }
    FElem sub(FElem a, FElem b) const { return add(a, neg(b)); }
    FElem mul(FElem a, FElem b) const {
        if (a == 0 || b == 0) return 0;
        return exp_tab_[log_tab_[a] + log_tab_[b]];
    }
    FElem inv(FElem a) const {
        if (a == 0) throw std::domain_error("field: inverse of zero");
        return exp_tab_[size_ - 1 - log_tab_[a]];
    }
    FElem pow(FElem a, std::uint64_t k) const {
        if (a == 0) return k == 0 ? 1 : 0;
        std::uint64_t e = (static_cast<std::uint64_t>(log_tab_[a]) * (k % (size_ - 1))) % (size_ - 1);
        return exp_tab_[e];
    }
    std::uint32_t log(FElem a) const {
        if (a == 0) throw std::domain_error("field: log of zero");
        return log_tab_[a];
    }
    FElem exp(std::uint64_t k) const { return exp_tab_[k % (size_ - 1)]; }

    // Trace down to F_p, returned as a residue in [0, p).
    std::uint32_t trace_to_prime(FElem a) const { return trace_tab_[a]; }
    // x -> x^{p^k}
    FElem frobenius_p(FElem a, std::uint32_t k = 1) const;

private:
    std::uint32_t p_ = 0, n_ = 0, size_ = 0;
    FElem gen_ = 0;
    std::vector<FElem> mod_;      // monic modulus digits over the *previous* floor
    std::vector<FElem> add_tab_;  // size^2
    std::vector<FElem> neg_tab_;
    std::vector<FElem> exp_tab_;  // 2*(size-1), doubled to skip a reduction
    std::vector<std::uint32_t> log_tab_;
    std::vector<std::uint32_t> trace_tab_;

    void build_tables(const std::function<FElem(FElem, FElem)>& raw_mul);
};

// The tower F_p ⊂ F_q ⊂ F_{q^2} with q odd, q ≡ 2 (mod 3). Read-only after
// construction; safe to share across threads.
class FieldCtx {
public:
    explicit FieldCtx(std::uint32_t q);

    std::uint32_t p() const { return p_; }
    std::uint32_t q() const { return q_; }
    std::uint32_t q2() const { return q_ * q_; }
    std::uint32_t size(Level l) const { return l == Level::Base ? q_ : q_ * q_; }
    const TableField& field(Level l) const { return l == Level::Base ? fq_ : fq2_; }

    FElem add(Level l, FElem a, FElem b) const { return field(l).add(a, b); }
    FElem sub(Level l, FElem a, FElem b) const { return field(l).sub(a, b); }
    FElem neg(Level l, FElem a) const { return field(l).neg(a); }
    FElem mul(Level l, FElem a, FElem b) const { return field(l).mul(a, b); }
    FElem inv(Level l, FElem a) const { return field(l).inv(a); }
    FElem pow(Level l, FElem a, std::uint64_t k) const { return field(l).pow(a, k); }

    // F_q -> F_{q^2} along the tower (pairs (a, 0)).
    FElem lift(FElem a) const { return a; }
    // q-power Frobenius on F_{q^2}.
    FElem frobenius_q(FElem a) const { return frob_tab_[a]; }
    // Fixed-point test for the q-power Frobenius (exact membership in F_q).
    bool in_base(FElem a) const { return frob_tab_[a] == a; }
    // Inverse of lift; only valid when in_base(a).
    FElem project(FElem a) const;

    std::uint32_t trace_to_prime(Level l, FElem a) const { return field(l).trace_to_prime(a); }

    // Fixed primitive cube root of unity in F_{q^2}: generator^((q^2-1)/3).
    FElem omega_cube_root() const { return cube_root_; }
    // Exponent k in {0,1,2} with a = omega^k, or -1 if a is not a cube root of 1.
    int cube_root_exponent(FElem a) const;

private:
    std::uint32_t p_ = 0, q_ = 0, e_ = 0;
    TableField fq_, fq2_;
    std::vector<FElem> frob_tab_;
    FElem cube_root_ = 0;
};

bool is_prime_u32(std::uint32_t n);
// Decompose a prime power n = p^e; throws if n is not a prime power.
std::pair<std::uint32_t, std::uint32_t> prime_power_decompose(std::uint32_t n);

}  // namespace cubicl
