#pragma once

#include <cmath>
#include <complex>

namespace hx {

// Real quaternion a0 + a1*i + a2*j + a3*k.  Component order (1, i, j, k)
// is fixed; every formula in the library indexes components this way.
// Multiplication follows i^2 = j^2 = k^2 = -1, ij = k = -ji, jk = i = -kj,
// ki = j = -ik.
struct Quaternion {
    double a0 = 0.0;
    double a1 = 0.0;
    double a2 = 0.0;
    double a3 = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double s, double i, double j, double k)
        : a0(s), a1(i), a2(j), a3(k) {}
    explicit constexpr Quaternion(double s) : a0(s) {}

    constexpr bool operator==(const Quaternion&) const = default;

    constexpr Quaternion& operator+=(const Quaternion& o) {
        a0 += o.a0; a1 += o.a1; a2 += o.a2; a3 += o.a3;
        return *this;
    }
    constexpr Quaternion& operator-=(const Quaternion& o) {
        a0 -= o.a0; a1 -= o.a1; a2 -= o.a2; a3 -= o.a3;
        return *this;
    }
    constexpr Quaternion& operator*=(double s) {
        a0 *= s; a1 *= s; a2 *= s; a3 *= s;
        return *this;
    }

    constexpr double operator[](int c) const {
        return c == 0 ? a0 : c == 1 ? a1 : c == 2 ? a2 : a3;
    }
    constexpr void set(int c, double v) {
        (c == 0 ? a0 : c == 1 ? a1 : c == 2 ? a2 : a3) = v;
    }
};

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.a0, -a.a1, -a.a2, -a.a3}; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator/(Quaternion a, double s) { return a *= (1.0 / s); }

// Hamilton product, non-commutative.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
    return {a.a0 * b.a0 - a.a1 * b.a1 - a.a2 * b.a2 - a.a3 * b.a3,
            a.a0 * b.a1 + a.a1 * b.a0 + a.a2 * b.a3 - a.a3 * b.a2,
            a.a0 * b.a2 - a.a1 * b.a3 + a.a2 * b.a0 + a.a3 * b.a1,
            a.a0 * b.a3 + a.a1 * b.a2 - a.a2 * b.a1 + a.a3 * b.a0};
}

constexpr Quaternion conj(const Quaternion& a) { return {a.a0, -a.a1, -a.a2, -a.a3}; }

constexpr double norm2(const Quaternion& a) {
    return a.a0 * a.a0 + a.a1 * a.a1 + a.a2 * a.a2 + a.a3 * a.a3;
}

inline double abs(const Quaternion& a) { return std::sqrt(norm2(a)); }

// Euclidean inner product of the component vectors; equals Re(conj(a)*b).
constexpr double dot(const Quaternion& a, const Quaternion& b) {
    return a.a0 * b.a0 + a.a1 * b.a1 + a.a2 * b.a2 + a.a3 * b.a3;
}

// Componentwise (Hadamard) product; used by split activations, not algebra.
constexpr Quaternion comp_mul(const Quaternion& a, const Quaternion& b) {
    return {a.a0 * b.a0, a.a1 * b.a1, a.a2 * b.a2, a.a3 * b.a3};
}

constexpr Quaternion inverse(const Quaternion& a) {
    const double n2 = norm2(a);
    return conj(a) / n2;
}

inline bool is_finite(const Quaternion& a) {
    return std::isfinite(a.a0) && std::isfinite(a.a1) &&
           std::isfinite(a.a2) && std::isfinite(a.a3);
}

inline constexpr Quaternion quat_one{1.0, 0.0, 0.0, 0.0};
inline constexpr Quaternion quat_i{0.0, 1.0, 0.0, 0.0};
inline constexpr Quaternion quat_j{0.0, 0.0, 1.0, 0.0};
inline constexpr Quaternion quat_k{0.0, 0.0, 0.0, 1.0};

// The C^2 identification q = z1 + z2*j with z1 = a0 + i a1, z2 = a2 + i a3.
struct ComplexPair {
    std::complex<double> z1;
    std::complex<double> z2;
};

inline ComplexPair complex_pair(const Quaternion& a) {
    return {{a.a0, a.a1}, {a.a2, a.a3}};
}

inline Quaternion from_pair(const ComplexPair& p) {
    return {p.z1.real(), p.z1.imag(), p.z2.real(), p.z2.imag()};
}

// Embeds a complex number as z + 0*j; satisfies embed(a)*j == j*embed(conj(a)).
inline Quaternion embed(const std::complex<double>& z) {
    return {z.real(), z.imag(), 0.0, 0.0};
}

}  // namespace hx
