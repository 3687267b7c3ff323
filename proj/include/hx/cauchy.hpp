#pragma once

#include <complex>
#include <numbers>
#include <stdexcept>

#include "hx/quaternion.hpp"

namespace hx {

// Structural set {1, i, -j, k}.  Applied to a real 4-vector n it produces
// n0 + n1*i - n2*j + n3*k; the same twist applied to a displacement gives
// the numerator of the Cauchy kernel.
constexpr Quaternion psi_twist(const Quaternion& n) {
    return {n.a0, n.a1, -n.a2, n.a3};
}

// Cauchy kernel K(q) = (1/2pi^2) (conj(z1) + conj(z2) j) / (|z1|^2+|z2|^2)^2,
// the fundamental solution of the psi Cauchy-Riemann operator; homogeneous
// of degree -3.
inline Quaternion cauchy_kernel(const Quaternion& q) {
    const double n2 = norm2(q);
    if (n2 == 0.0) throw std::domain_error("cauchy_kernel: evaluated at the singularity");
    const double scale = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi * n2 * n2);
    // conj(z1) + conj(z2) j = q0 - q1*i + q2*j - q3*k
    return {q.a0 * scale, -q.a1 * scale, q.a2 * scale, -q.a3 * scale};
}

// Complex components of K(xi - z) n_psi(xi) = K1 + K2 j for normal n at xi.
struct KernelSplit {
    std::complex<double> k1;
    std::complex<double> k2;
};

inline KernelSplit k1k2_split(const Quaternion& xi, const Quaternion& z,
                              const Quaternion& n) {
    const Quaternion d = xi - z;
    const double n2q = norm2(d);
    if (n2q == 0.0) throw std::domain_error("k1k2_split: coincident points");
    const double scale = 1.0 / (2.0 * std::numbers::pi * std::numbers::pi * n2q * n2q);
    const std::complex<double> d1c{d.a0, -d.a1};  // conj(xi1 - z1)
    const std::complex<double> d2c{d.a2, -d.a3};  // conj(xi2 - z2)
    const std::complex<double> nu1{n.a0, n.a1};
    const std::complex<double> nu2{n.a2, n.a3};
    return {scale * (d1c * nu1 + d2c * nu2),
            scale * (d2c * std::conj(nu1) - d1c * std::conj(nu2))};
}

// Recombines a split back into the quaternion product K(xi-z) n_psi(xi).
inline Quaternion recombine(const KernelSplit& s) {
    return {s.k1.real(), s.k1.imag(), s.k2.real(), s.k2.imag()};
}

}  // namespace hx
