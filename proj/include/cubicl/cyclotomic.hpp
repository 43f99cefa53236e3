#pragma once

#include <complex>
#include <cstdint>

namespace cubicl {

// Exact element of Z[w], w = exp(2*pi*i/3), stored as a + b*w (w^2 = -1 - w).
// Character sums and L-coefficients stay in this ring; conversion to floating
// complex happens only at report boundaries.
struct ZOmega {
    std::int64_t a = 0;
    std::int64_t b = 0;

    friend ZOmega operator+(ZOmega x, ZOmega y) { return {x.a + y.a, x.b + y.b}; }
    friend ZOmega operator-(ZOmega x, ZOmega y) { return {x.a - y.a, x.b - y.b}; }
    friend ZOmega operator*(ZOmega x, ZOmega y) {
        return {x.a * y.a - x.b * y.b, x.a * y.b + x.b * y.a - x.b * y.b};
    }
    ZOmega& operator+=(const ZOmega& y) { a += y.a; b += y.b; return *this; }
    ZOmega& operator-=(const ZOmega& y) { a -= y.a; b -= y.b; return *this; }
    friend ZOmega operator*(std::int64_t s, ZOmega x) { return {s * x.a, s * x.b}; }
    bool operator==(const ZOmega& y) const { return a == y.a && b == y.b; }
    bool is_zero() const { return a == 0 && b == 0; }

    ZOmega conj() const { return {a - b, -b}; }
    // |a + b w|^2 = a^2 - a b + b^2, an exact nonnegative integer.
    std::int64_t norm() const { return a * a - a * b + b * b; }
    std::complex<double> to_complex() const {
        return {static_cast<double>(a) - 0.5 * static_cast<double>(b),
                0.8660254037844386467637231707529362 * static_cast<double>(b)};
    }
};

// w^k for k in {0,1,2} (k reduced mod 3 otherwise).
inline ZOmega omega_pow(int k) {
    switch (((k % 3) + 3) % 3) {
        case 0: return {1, 0};
        case 1: return {0, 1};
        default: return {-1, -1};
    }
}

// Exact value X + Y*sqrt(q), the scaled form in which central L-values live.
struct SqrtExt {
    ZOmega x, y;

    friend SqrtExt operator+(const SqrtExt& u, const SqrtExt& v) { return {u.x + v.x, u.y + v.y}; }
    friend SqrtExt operator-(const SqrtExt& u, const SqrtExt& v) { return {u.x - v.x, u.y - v.y}; }
    SqrtExt& operator+=(const SqrtExt& v) { x += v.x; y += v.y; return *this; }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    SqrtExt conj() const { return {x.conj(), y.conj()}; }
    SqrtExt times_omega_pow(int k) const { auto w = omega_pow(k); return {x * w, y * w}; }
    std::complex<double> to_complex(double sqrt_q) const {
        return x.to_complex() + sqrt_q * y.to_complex();
    }
};

}  // namespace cubicl
