#include "cubicl/lfunction.hpp"

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace cubicl {

LPolynomial l_polynomial(const FieldCtx& F, const CubicCharacter& chi,
                         const MonicFactorTable& monics, int g) {
    if (chi.prime_values().empty())
        throw std::logic_error("l_polynomial: character prime cache not built");
    LPolynomial L;
    L.c.assign(g + 2, ZOmega{});
    for (int d = 0; d <= g + 1; ++d) {
        std::int64_t n[3] = {0, 0, 0};
        std::uint64_t cnt = monic_count(F, Level::Base, d);
        for (std::uint64_t idx = 0; idx < cnt; ++idx) {
            std::size_t s = monics.slot(d, idx);
            int acc = 0;
            bool zero = false;
            for (std::uint32_t e = monics.begin[s]; e < monics.begin[s + 1]; ++e) {
                SymExp v = chi.prime_values()[monics.entries[e].first];
                if (v == SYM_ZERO) { zero = true; break; }
                acc += v * monics.entries[e].second;
            }
            if (!zero) ++n[acc % 3];
        }
        ZOmega c{n[0] - n[2], n[1] - n[2]};
        L.c[d] = chi.conjugated() ? c.conj() : c;
    }
    return L;
}

std::complex<double> eval_L(const LPolynomial& L, std::complex<double> u) {
    std::complex<double> v = 0;
    for (std::size_t i = L.c.size(); i-- > 0;) v = v * u + L.c[i].to_complex();
    return v;
}

std::complex<double> eval_central_horner(const LPolynomial& L, std::uint32_t q) {
    return eval_L(L, {1.0 / std::sqrt(static_cast<double>(q)), 0.0});
}

std::complex<double> eval_central_direct(const LPolynomial& L, std::uint32_t q) {
    std::complex<double> v = 0;
    double u = 1.0, su = 1.0 / std::sqrt(static_cast<double>(q));
    for (std::size_t i = 0; i < L.c.size(); ++i) {
        v += L.c[i].to_complex() * u;
        u *= su;
    }
    return v;
}

SqrtExt central_exact(const LPolynomial& L, std::uint32_t q, int g) {
    SqrtExt v;
    for (int d = 0; d <= g + 1; ++d) {
        int e = g + 1 - d;
        std::int64_t qp = 1;
        for (int i = 0; i < e / 2; ++i) qp *= q;
        if (e % 2 == 0)
            v.x += qp * L.c[d];
        else
            v.y += qp * L.c[d];
    }
    return v;
}

std::complex<double> central_from_exact(const SqrtExt& v, std::uint32_t q, int g) {
    double sq = std::sqrt(static_cast<double>(q));
    return v.to_complex(sq) / std::pow(sq, g + 1);
}

bool central_is_zero(const SqrtExt& v) { return v.is_zero(); }

std::pair<std::int64_t, std::int64_t> central_abs2_exact(const SqrtExt& v, std::uint32_t q) {
    // |X + Y sqrt(q)|^2 = (N(X) + q N(Y)) + 2 Re(X conj(Y)) sqrt(q).
    std::int64_t nx = v.x.norm(), ny = v.y.norm();
    ZOmega cross = v.x * v.y.conj();
    std::int64_t re2 = 2 * cross.a - cross.b;  // 2 Re(a + b w) = 2a - b
    return {nx + static_cast<std::int64_t>(q) * ny, re2};
}

double central_abs2(const SqrtExt& v, std::uint32_t q, int g) {
    auto [A, B] = central_abs2_exact(v, q);
    double qp = 1;
    for (int i = 0; i <= g; ++i) qp *= q;
    return (static_cast<double>(A) + static_cast<double>(B) * std::sqrt(static_cast<double>(q))) / qp;
}

ZOmega l_at_one(const LPolynomial& L) {
    ZOmega s;
    for (auto& c : L.c) s += c;
    return s;
}

std::complex<double> root_number(const LPolynomial& L, std::uint32_t q, int g) {
    double qp = 1;
    for (int i = 0; i < g / 2; ++i) qp *= q;
    return -L.c[g + 1].to_complex() / qp;
}

bool root_number_unimodular_exact(const LPolynomial& L, std::uint32_t q, int g) {
    std::int64_t qp = 1;
    for (int i = 0; i < g; ++i) qp *= q;
    return L.c[g + 1].norm() == qp;
}

double afe_residual(const LPolynomial& L, std::uint32_t q, int g, int X) {
    if (X < 0 || X > g) throw std::invalid_argument("afe_residual: X must satisfy 0 <= X <= g");
    using C = std::complex<long double>;
    const long double sq = std::sqrt(static_cast<long double>(q));
    auto coeff = [&](int d) -> C {
        auto z = L.c[d].to_complex();
        return {static_cast<long double>(z.real()), static_cast<long double>(z.imag())};
    };
    auto coeff_conj = [&](int d) -> C { return std::conj(coeff(d)); };

    C lhs = 0;
    {
        long double u = 1;
        for (int d = 0; d <= g + 1; ++d, u /= sq) lhs += coeff(d) * u;
    }
    std::complex<double> w0 = root_number(L, q, g);
    C w{static_cast<long double>(w0.real()), static_cast<long double>(w0.imag())};

    C rhs = 0;
    {
        long double u = 1;
        for (int d = 0; d <= X; ++d, u /= sq) rhs += coeff(d) * u;
    }
    {
        long double u = 1;
        C s = 0;
        for (int d = 0; d <= g - X - 1; ++d, u /= sq) s += coeff_conj(d) * u;
        rhs += w * s;
    }
    {
        long double u = std::pow(sq, -(long double)(X + 1));
        rhs += coeff(X + 1) * u / (1.0L - sq);
    }
    {
        long double u = std::pow(sq, -(long double)(g - X));
        rhs += w * coeff_conj(g - X) * u / (1.0L - sq);
    }
    return static_cast<double>(std::abs(lhs - rhs));
}

namespace {

// Exact division by (1-u): quotient coefficients are prefix sums; the full sum
// is the remainder and must vanish.
std::vector<ZOmega> divide_by_one_minus_u(const std::vector<ZOmega>& p) {
    ZOmega total;
    for (auto& c : p) total += c;
    if (!total.is_zero()) throw std::runtime_error("curve_zeta: division by (1-u) leaves a remainder");
    std::vector<ZOmega> r(p.size() - 1);
    ZOmega acc;
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        acc += p[i];
        r[i] = acc;
    }
    return r;
}

}  // namespace

namespace {

using CLD = std::complex<long double>;

std::vector<CLD> derivative_cld(const std::vector<CLD>& p) {
    std::vector<CLD> d;
    for (std::size_t i = 1; i < p.size(); ++i) d.push_back(p[i] * static_cast<long double>(i));
    return d;
}

CLD horner_cld(const std::vector<CLD>& p, CLD u) {
    CLD v = 0;
    for (std::size_t i = p.size(); i-- > 0;) v = v * u + p[i];
    return v;
}

// Roots of one L-polynomial. The companion eigenvalues of a polynomial with
// an m-fold root split into a ring of radius ~eps^{1/m}; the ring mean
// cancels the first-order splitting, and one Newton run on the (m-1)-th
// derivative (where the root is simple) recovers full precision.
std::vector<std::complex<double>> l_roots(const LPolynomial& L) {
    std::vector<std::complex<double>> coeffs = L.to_complex();
    while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    int n = static_cast<int>(coeffs.size()) - 1;
    std::vector<std::complex<double>> out;
    if (n <= 0) return out;

    Eigen::MatrixXcd Cmat = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) Cmat(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) Cmat(i, n - 1) = -coeffs[i] / coeffs[n];
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(Cmat, false);
    std::vector<std::complex<double>> raw(n);
    for (int i = 0; i < n; ++i) raw[i] = es.eigenvalues()(i);

    std::vector<CLD> p(coeffs.size());
    for (std::size_t i = 0; i < coeffs.size(); ++i)
        p[i] = CLD(coeffs[i].real(), coeffs[i].imag());

    const double cluster_radius = 2e-3;
    std::vector<bool> used(n, false);
    std::vector<std::complex<double>> refined;
    for (int i = 0; i < n; ++i) {
        if (used[i]) continue;
        std::vector<int> cluster{i};
        for (int j = i + 1; j < n; ++j)
            if (!used[j] && std::abs(raw[j] - raw[i]) < cluster_radius) cluster.push_back(j);
        for (int j : cluster) used[j] = true;
        std::complex<double> mean = 0;
        for (int j : cluster) mean += raw[j];
        mean /= static_cast<double>(cluster.size());

        // Newton on the derivative that sees the root simply.
        std::vector<CLD> f = p;
        for (std::size_t k = 1; k < cluster.size(); ++k) f = derivative_cld(f);
        std::vector<CLD> fd = derivative_cld(f);
        CLD r(mean.real(), mean.imag());
        for (int it = 0; it < 60; ++it) {
            CLD den = horner_cld(fd, r);
            if (std::abs(den) == 0.0L) break;
            CLD step = horner_cld(f, r) / den;
            r -= step;
            if (std::abs(step) < 1e-18L) break;
        }
        std::complex<double> root(static_cast<double>(r.real()), static_cast<double>(r.imag()));
        // accept the refinement only if it stayed inside the cluster
        if (std::abs(root - mean) > cluster_radius) root = mean;
        for (std::size_t k = 0; k < cluster.size(); ++k) refined.push_back(root);
    }
    return refined;
}

}  // namespace

CurveZeta curve_zeta(const LPolynomial& L, std::uint32_t q, int g) {
    LPolynomial Lc = L.conj();
    // product of the two L-polynomials, exact
    std::vector<ZOmega> prod(2 * (g + 1) + 1, ZOmega{});
    for (std::size_t i = 0; i < L.c.size(); ++i)
        for (std::size_t j = 0; j < Lc.c.size(); ++j) prod[i + j] += L.c[i] * Lc.c[j];

    auto q1 = divide_by_one_minus_u(prod);
    auto q2 = divide_by_one_minus_u(q1);

    CurveZeta z;
    z.coeffs.reserve(q2.size());
    for (auto& c : q2) {
        if (c.b != 0) throw std::runtime_error("curve_zeta: non-real coefficient");
        z.coeffs.push_back(c.a);
    }
    // trim (the top coefficient can only vanish for a degenerate character)
    while (z.coeffs.size() > 1 && z.coeffs.back() == 0) z.coeffs.pop_back();

    // The curve polynomial is L * conj(L) / (1-u)^2; its roots are the roots
    // of L and their conjugates, minus one copy of u = 1 from each factor.
    std::vector<std::complex<double>> lr = l_roots(L);
    std::vector<std::complex<double>> all;
    for (auto r : lr) all.push_back(r);
    for (auto r : lr) all.push_back(std::conj(r));
    // drop the two roots at u = 1 (the trivial zeros)
    std::sort(all.begin(), all.end(), [](auto a, auto b) {
        return std::abs(a - 1.0) < std::abs(b - 1.0);
    });
    all.erase(all.begin(), all.begin() + std::min<std::size_t>(2, all.size()));

    const double target = 1.0 / std::sqrt(static_cast<double>(q));
    for (auto r : all) {
        z.roots.push_back(r);
        z.max_radius_error = std::max(z.max_radius_error, std::abs(std::abs(r) - target));
    }
    if (static_cast<int>(z.roots.size()) != static_cast<int>(z.coeffs.size()) - 1)
        throw std::runtime_error("curve_zeta: root count mismatch");
    return z;
}

}  // namespace cubicl
