#pragma once

#include <functional>
#include <vector>

#include "hx/quaternion.hpp"

namespace hx {

// Quaternion-valued samples on a uniform tensor grid over [lo, hi]^4.
struct GridField4D {
    int m = 0;          // points per axis
    double lo = 0.0;
    double hi = 0.0;
    std::vector<Quaternion> values;  // index (((i0*m + i1)*m + i2)*m + i3)

    double spacing() const { return (hi - lo) / (m - 1); }
    std::size_t index(int i0, int i1, int i2, int i3) const {
        return ((static_cast<std::size_t>(i0) * m + i1) * m + i2) * m + i3;
    }
    const Quaternion& at(int i0, int i1, int i2, int i3) const {
        return values[index(i0, i1, i2, i3)];
    }
    double coord(int i) const { return lo + i * spacing(); }
};

GridField4D sample_grid(int m, double lo, double hi,
                        const std::function<Quaternion(const Quaternion&)>& f);

// Central-difference application of the psi Cauchy-Riemann operator
// d/dx0 + i d/dx1 - j d/dx2 + k d/dx3 (units multiplying from the left).
// real_form uses the component arithmetic directly; complex_form evaluates
// the equivalent 2{d/dz1bar - j d/dz2bar} arrangement.  Boundary nodes are
// left at zero.
struct PsiDResult {
    GridField4D real_form;
    GridField4D complex_form;
};

PsiDResult psi_d_residual(const GridField4D& f);

// Max-norms of the two Cimmino equations for f = u + v j:
//   d/dz1bar u + d/dz2 conj(v)   and   d/dz2bar u - d/dz1 conj(v).
struct CimminoResult {
    double eq1 = 0.0;
    double eq2 = 0.0;
};

CimminoResult cimmino_residual(const GridField4D& f);

double max_interior_abs(const GridField4D& g);

}  // namespace hx
