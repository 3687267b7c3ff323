#include "hx/grid4d.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>

namespace hx {

GridField4D sample_grid(int m, double lo, double hi,
                        const std::function<Quaternion(const Quaternion&)>& f) {
    if (m < 2) throw std::invalid_argument("sample_grid: need at least 2 points per axis");
    GridField4D g;
    g.m = m;
    g.lo = lo;
    g.hi = hi;
    g.values.resize(static_cast<std::size_t>(m) * m * m * m);
    const double h = g.spacing();
    for (int i0 = 0; i0 < m; ++i0)
        for (int i1 = 0; i1 < m; ++i1)
            for (int i2 = 0; i2 < m; ++i2)
                for (int i3 = 0; i3 < m; ++i3)
                    g.values[g.index(i0, i1, i2, i3)] =
                        f({lo + i0 * h, lo + i1 * h, lo + i2 * h, lo + i3 * h});
    return g;
}

namespace {

void require_stencil(const GridField4D& f) {
    if (f.m < 5)
        throw std::invalid_argument("grid too small: need >= 5 points per axis");
}

struct Derivs {
    Quaternion d0, d1, d2, d3;
};

Derivs central(const GridField4D& f, int i0, int i1, int i2, int i3) {
    const double inv2h = 1.0 / (2.0 * f.spacing());
    return {(f.at(i0 + 1, i1, i2, i3) - f.at(i0 - 1, i1, i2, i3)) * inv2h,
            (f.at(i0, i1 + 1, i2, i3) - f.at(i0, i1 - 1, i2, i3)) * inv2h,
            (f.at(i0, i1, i2 + 1, i3) - f.at(i0, i1, i2 - 1, i3)) * inv2h,
            (f.at(i0, i1, i2, i3 + 1) - f.at(i0, i1, i2, i3 - 1)) * inv2h};
}

}  // namespace

PsiDResult psi_d_residual(const GridField4D& f) {
    require_stencil(f);
    PsiDResult out;
    out.real_form = f;
    out.complex_form = f;
    std::fill(out.real_form.values.begin(), out.real_form.values.end(), Quaternion{});
    std::fill(out.complex_form.values.begin(), out.complex_form.values.end(), Quaternion{});

    const int m = f.m;
    for (int i0 = 1; i0 + 1 < m; ++i0)
        for (int i1 = 1; i1 + 1 < m; ++i1)
            for (int i2 = 1; i2 + 1 < m; ++i2)
                for (int i3 = 1; i3 + 1 < m; ++i3) {
                    const Derivs d = central(f, i0, i1, i2, i3);
                    const std::size_t idx = f.index(i0, i1, i2, i3);
                    out.real_form.values[idx] =
                        d.d0 + quat_i * d.d1 - quat_j * d.d2 + quat_k * d.d3;
                    // 2 d/dz1bar f = d0 + i d1,  2 d/dz2bar f = d2 + i d3
                    out.complex_form.values[idx] =
                        (d.d0 + quat_i * d.d1) - quat_j * (d.d2 + quat_i * d.d3);
                }
    return out;
}

CimminoResult cimmino_residual(const GridField4D& f) {
    require_stencil(f);
    CimminoResult out;
    const int m = f.m;
    using cd = std::complex<double>;
    for (int i0 = 1; i0 + 1 < m; ++i0)
        for (int i1 = 1; i1 + 1 < m; ++i1)
            for (int i2 = 1; i2 + 1 < m; ++i2)
                for (int i3 = 1; i3 + 1 < m; ++i3) {
                    const Derivs d = central(f, i0, i1, i2, i3);
                    // u = f0 + i f1, v = f2 + i f3 per axis derivative
                    const cd u_d0{d.d0.a0, d.d0.a1}, u_d1{d.d1.a0, d.d1.a1};
                    const cd u_d2{d.d2.a0, d.d2.a1}, u_d3{d.d3.a0, d.d3.a1};
                    const cd vb_d0{d.d0.a2, -d.d0.a3}, vb_d1{d.d1.a2, -d.d1.a3};
                    const cd vb_d2{d.d2.a2, -d.d2.a3}, vb_d3{d.d3.a2, -d.d3.a3};
                    const cd i_unit{0.0, 1.0};
                    const cd eq1 = 0.5 * (u_d0 + i_unit * u_d1)       // d/dz1bar u
                                 + 0.5 * (vb_d2 - i_unit * vb_d3);    // d/dz2 conj(v)
                    const cd eq2 = 0.5 * (u_d2 + i_unit * u_d3)       // d/dz2bar u
                                 - 0.5 * (vb_d0 - i_unit * vb_d1);    // d/dz1 conj(v)
                    out.eq1 = std::max(out.eq1, std::abs(eq1));
                    out.eq2 = std::max(out.eq2, std::abs(eq2));
                }
    return out;
}

double max_interior_abs(const GridField4D& g) {
    double worst = 0.0;
    const int m = g.m;
    for (int i0 = 1; i0 + 1 < m; ++i0)
        for (int i1 = 1; i1 + 1 < m; ++i1)
            for (int i2 = 1; i2 + 1 < m; ++i2)
                for (int i3 = 1; i3 + 1 < m; ++i3)
                    worst = std::max(worst, abs(g.at(i0, i1, i2, i3)));
    return worst;
}

}  // namespace hx
