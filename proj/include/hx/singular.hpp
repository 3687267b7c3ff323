#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "hx/cauchy.hpp"
#include "hx/quaternion.hpp"
#include "hx/reduction.hpp"
#include "hx/sphere_mesh.hpp"

namespace hx {

// All principal-value quadratures realize the PV by omitting the cell that
// contains the singular node.  Integrand products keep the printed order:
// kernel * twisted normal * density, left to right.

// Cauchy-type integral C[f](q) for q off the surface.  Throws if q is closer
// to the surface than twice the largest cell diameter (quadrature validity);
// use cauchy_integral_nearby for boundary-limit studies.
Quaternion cauchy_integral(const SurfaceMesh& mesh, const BoundaryField& f,
                           const Quaternion& q, int workers = 1);
Quaternion cauchy_integral_nearby(const SurfaceMesh& mesh, const BoundaryField& f,
                                  const Quaternion& q, int workers = 1);

// Singular operator S[f](t) = 2 sum_{xi != t} w K(xi-t) n_psi (f(xi)-f(t)) + f(t).
Quaternion singular_cauchy(const SurfaceMesh& mesh, const BoundaryField& f,
                           std::size_t t, int workers = 1);

// S applied at every node (one full N^2 pass, parallel over output nodes).
BoundaryField singular_cauchy_field(const SurfaceMesh& mesh, const BoundaryField& f,
                                    int workers = 1);

// S with the near-singularity cells re-integrated on a 3x subdivided grid
// (exact density values at the subcell points, the subcell containing the
// evaluation point omitted).  The plain cell-omission rule stalls at a few
// percent on this chart; the refined rule is used by the involution and
// composition studies where the tolerances are tighter than that floor.
BoundaryField singular_cauchy_field_refined(
    const SurfaceMesh& mesh, const std::function<Quaternion(const Quaternion&)>& f,
    int workers = 1);

// Second application of S at node t over the field g produced by
// singular_cauchy_field_refined(f); subcell densities re-evaluate g through
// a nested refined application of f at off-node surface points.
Quaternion singular_cauchy_squared_refined(
    const SurfaceMesh& mesh, const std::function<Quaternion(const Quaternion&)>& f,
    const BoundaryField& g, std::size_t t, int workers = 1);

// PV constant alpha(t) = 2 sum_{xi != t} w K(xi-t) n_psi(xi).  The scalar part
// is the reported value; the full quaternion is kept for diagnostics.  Half of
// the scalar is the plain PV integral of K n_psi, the constant that enters the
// iterated-integral corrections.
struct AlphaValue {
    Quaternion full;
    double scalar = 0.0;
    double pv_half() const { return 0.5 * scalar; }
};

AlphaValue alpha_at(const SurfaceMesh& mesh, std::size_t t, int workers = 1);
std::vector<AlphaValue> alpha_field(const SurfaceMesh& mesh, int workers = 1);

// Boundary-limit study along the radius at node t: for each distance d the
// integral is evaluated at t(1-d) and t(1+d) and compared with the one-sided
// values (S[f](t) +- f(t))/2; jump_err compares C+ - C- against f(t).
// The near-boundary integrals transform the constant part of the density
// exactly (C[1] = 1 inside, 0 outside) and integrate the remainder with
// subcell refinement around the anchor node, so the density is supplied as
// a callable evaluable anywhere on the sphere.
struct PlemeljRow {
    double distance = 0.0;
    double interior_err = 0.0;
    double exterior_err = 0.0;
    double jump_err = 0.0;
};

std::vector<PlemeljRow> plemelj_check(const SurfaceMesh& mesh,
                                      const std::function<Quaternion(const Quaternion&)>& f,
                                      std::size_t t, const std::vector<double>& distances,
                                      int workers = 1);

// Complex-valued boundary data for the N operators.
using ComplexField = std::vector<std::complex<double>>;

// N1[f](t) = 2 sum K1(xi,t) f(xi) w + (1-alpha(t)) f(t)
// N2[f](t) = -2 sum K2(xi,t) conj(f(xi)) w + (1-alpha(t)) conj(f(t))
// computed at every node in one pass; alpha comes out of the same pass.
struct NFieldResult {
    ComplexField n1;
    ComplexField n2;
    std::vector<double> alpha_scalar;
};

NFieldResult op_n_field(const SurfaceMesh& mesh, const ComplexField& f, int workers = 1);

std::complex<double> op_n_at(const SurfaceMesh& mesh, const ComplexField& f, int which,
                             std::size_t t, double alpha_scalar, int workers = 1);

// Iterated-kernel integral sum_{tau not in {t, xi}} w K(tau-t) n_psi(tau) K(tau-xi);
// vanishes in the continuum.  Requires the two nodes to be separated by at
// least three cell diameters.
Quaternion iterated_kernel_zero(const SurfaceMesh& mesh, std::size_t t, std::size_t xi,
                                int workers = 1);

// Composition study.  plain is the non-subtracted singular application
// T[g](t) = 2 sum w K(xi-t) n_psi g(xi); subtracted drops g(t) from the
// density.  For boundary values of a function regular inside, T.T reproduces
// 4 a^2 f with a the PV constant, while the subtracted form annihilates such
// data; both routes are reported.
struct CompositionRow {
    std::size_t node = 0;
    Quaternion predicted;          // 4 a(t)^2 f(t)
    Quaternion twice_plain;        // T[T[f]](t)
    Quaternion twice_subtracted;   // Ssub[Ssub[f]](t)
    double rel_err_plain = 0.0;
    double rel_err_subtracted = 0.0;
};

struct CompositionReport {
    std::vector<CompositionRow> rows;
    double max_rel_err_plain = 0.0;
    double max_rel_err_subtracted = 0.0;
};

CompositionReport composition_check(const SurfaceMesh& mesh, const BoundaryField& f,
                                    const std::vector<std::size_t>& test_nodes,
                                    int workers = 1);

// ---------------------------------------------------------------------------
// Two-point densities f(xi, tau) are supplied as callables over node indices
// (first argument xi).  Dense N^2 storage is never formed.

struct PBReport {
    Quaternion lhs;        // tau-outer iterated sum
    Quaternion rhs;        // xi-outer iterated sum
    double alpha_pv = 0.0; // PV constant a(t) used in the correction
    Quaternion correction; // a(t)^2 f(t,t)
    double residual = 0.0; // |lhs - rhs - correction|
};

namespace detail {

struct MeshKernels {
    const SurfaceMesh& mesh;
    std::vector<Quaternion> pn;  // psi-twisted normals

    explicit MeshKernels(const SurfaceMesh& m) : mesh(m) {
        pn.resize(m.size());
        for (std::size_t i = 0; i < m.size(); ++i) pn[i] = psi_twist(m.normals[i]);
    }
    // w_i K(node_i - p) n_psi(node_i)
    Quaternion weighted_kernel(std::size_t i, const Quaternion& p) const {
        return (mesh.weights[i] * cauchy_kernel(mesh.nodes[i] - p)) * pn[i];
    }
};

}  // namespace detail

// Iterated double PV sums of K n_psi K n_psi f(xi,tau) in both integration
// orders; their discrepancy carries the correction a(t)^2 f(t,t).
//
// The tau-outer sum is computed directly (its inner integral has a single
// singularity per evaluation).  In the xi-outer order the inner tau-sum
// merges two singularities as xi approaches t, which plain cell omission
// cannot resolve; the density is therefore split as
//   f(xi,tau) = [f(xi,tau) - f(xi,t)] + f(xi,t),
// and the f(xi,t) part is dropped: its tau-integral is the iterated-kernel
// integral that vanishes identically (the lemma checked by
// iterated_kernel_zero).  The bracket removes the singular mass at tau = t,
// so the remaining sums converge.
template <typename F2>
PBReport poincare_bertrand_residual(const SurfaceMesh& mesh, F2&& f, std::size_t t,
                                    int workers = 1) {
    const detail::MeshKernels mk(mesh);
    const std::size_t n = mesh.size();
    const Quaternion& tpos = mesh.nodes[t];

    std::vector<Quaternion> outer_terms(n, Quaternion{});
    parallel_for(n, workers, [&](std::size_t tau) {
        if (tau == t) return;
        const Quaternion& taupos = mesh.nodes[tau];
        const Quaternion inner = block_sum<Quaternion>(n, [&](std::size_t xi) {
            if (xi == tau) return Quaternion{};
            return mk.weighted_kernel(xi, taupos) * f(xi, tau);
        });
        outer_terms[tau] = mk.weighted_kernel(tau, tpos) * inner;
    });
    PBReport rep;
    rep.lhs = block_sum<Quaternion>(n, [&](std::size_t i) { return outer_terms[i]; });

    std::fill(outer_terms.begin(), outer_terms.end(), Quaternion{});
    parallel_for(n, workers, [&](std::size_t xi) {
        if (xi == t) return;
        const Quaternion f_diag = f(xi, t);
        outer_terms[xi] = block_sum<Quaternion>(n, [&](std::size_t tau) {
            if (tau == t || tau == xi) return Quaternion{};
            return mk.weighted_kernel(tau, tpos) *
                   (mk.weighted_kernel(xi, mesh.nodes[tau]) * (f(xi, tau) - f_diag));
        });
    });
    rep.rhs = block_sum<Quaternion>(n, [&](std::size_t i) { return outer_terms[i]; });

    const AlphaValue a = alpha_at(mesh, t, workers);
    rep.alpha_pv = a.pv_half();
    rep.correction = (rep.alpha_pv * rep.alpha_pv) * f(t, t);
    rep.residual = abs(rep.lhs - rep.rhs - rep.correction);
    return rep;
}

struct K2DoubleReport {
    double kernel_only_mag = 0.0;    // |double integral of K2 conj(K2)|
    double fubini_discrepancy = 0.0; // |tau-outer - xi-outer| with the
                                     // subtracted density f(xi,tau)-f(tau,t)
};

// The kernel-only double integral (computed by k2_kernel_double below) is
// evaluated with the xi-integration innermost: the inner PV is the
// K2 component of the constant-density singular integral, a smooth field
// vanishing on the sphere, and the outer integral is then an ordinary
// single-singularity PV.  The opposite nesting places both singularities in
// the inner sum, where they merge near the diagonal faster than any fixed
// mesh resolves; the orders are tied together by the Fubini check below.
double k2_kernel_double(const SurfaceMesh& mesh, std::size_t t, int workers = 1);

template <typename F2c>
K2DoubleReport k2_double_zero(const SurfaceMesh& mesh, F2c&& f, std::size_t t,
                              int workers = 1) {
    const std::size_t n = mesh.size();
    const Quaternion& tpos = mesh.nodes[t];
    using cd = std::complex<double>;

    const auto k2_at = [&](std::size_t i, const Quaternion& p) {
        return mesh.weights[i] * k1k2_split(mesh.nodes[i], p, mesh.normals[i]).k2;
    };

    K2DoubleReport rep;
    rep.kernel_only_mag = k2_kernel_double(mesh, t, workers);

    std::vector<cd> outer_sub(n, cd{});
    // xi-outer order of the subtracted-density form.
    parallel_for(n, workers, [&](std::size_t xi) {
        if (xi == t) return;
        outer_sub[xi] = block_sum<cd>(n, [&](std::size_t tau) {
            if (tau == t || tau == xi) return cd{};
            return k2_at(tau, tpos) * std::conj(k2_at(xi, mesh.nodes[tau])) *
                   (f(xi, tau) - f(tau, t));
        });
    });
    const cd rhs_sub = block_sum<cd>(n, [&](std::size_t i) { return outer_sub[i]; });

    // tau-outer order of the subtracted form.
    std::fill(outer_sub.begin(), outer_sub.end(), cd{});
    parallel_for(n, workers, [&](std::size_t tau) {
        if (tau == t) return;
        const Quaternion& taupos = mesh.nodes[tau];
        const cd inner = block_sum<cd>(n, [&](std::size_t xi) {
            if (xi == tau) return cd{};
            return std::conj(k2_at(xi, taupos)) * (f(xi, tau) - f(tau, t));
        });
        outer_sub[tau] = k2_at(tau, tpos) * inner;
    });
    const cd lhs_sub = block_sum<cd>(n, [&](std::size_t i) { return outer_sub[i]; });

    rep.fubini_discrepancy = std::abs(lhs_sub - rhs_sub);
    return rep;
}

// Evenly spread node indices for probe points.
std::vector<std::size_t> spread_nodes(const SurfaceMesh& mesh, std::size_t count);

}  // namespace hx
