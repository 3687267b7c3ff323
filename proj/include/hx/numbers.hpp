#pragma once

#include <complex>

#include "hx/quaternion.hpp"

namespace hx {

enum class NumberSystem { R, C, H };

// Uniform view of the three coefficient systems used by the networks.
// Components are the real coordinates (1 for R, 2 for C, 4 for H); split
// activations and parameter updates act on them, algebra goes through mul.
template <typename S>
struct scalar_traits;

template <>
struct scalar_traits<double> {
    static constexpr NumberSystem system = NumberSystem::R;
    static constexpr int components = 1;
    static double conjugate(double a) { return a; }
    static double get(double a, int) { return a; }
    static void set(double& a, int, double v) { a = v; }
    static double abs2(double a) { return a * a; }
};

template <>
struct scalar_traits<std::complex<double>> {
    static constexpr NumberSystem system = NumberSystem::C;
    static constexpr int components = 2;
    static std::complex<double> conjugate(const std::complex<double>& a) {
        return std::conj(a);
    }
    static double get(const std::complex<double>& a, int c) {
        return c == 0 ? a.real() : a.imag();
    }
    static void set(std::complex<double>& a, int c, double v) {
        if (c == 0) a.real(v); else a.imag(v);
    }
    static double abs2(const std::complex<double>& a) { return std::norm(a); }
};

template <>
struct scalar_traits<Quaternion> {
    static constexpr NumberSystem system = NumberSystem::H;
    static constexpr int components = 4;
    static Quaternion conjugate(const Quaternion& a) { return conj(a); }
    static double get(const Quaternion& a, int c) { return a[c]; }
    static void set(Quaternion& a, int c, double v) { a.set(c, v); }
    static double abs2(const Quaternion& a) { return norm2(a); }
};

// Basis element with a 1 in real component c.
template <typename S>
S basis_element(int c) {
    S e{};
    scalar_traits<S>::set(e, c, 1.0);
    return e;
}

}  // namespace hx
