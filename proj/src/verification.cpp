#include "hx/verification.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "hx/grid4d.hpp"
#include "hx/singular.hpp"

namespace hx {

namespace {

constexpr Quaternion kKernelShiftOut{3.0, 0.0, 0.0, 0.0};   // pole in Omega-
constexpr Quaternion kKernelShiftAxis{0.0, 0.0, 0.0, 3.0};  // pole off the grid box

Refinement scaled(const Refinement& r, double s) {
    const auto f = [s](int v) { return std::max(4, static_cast<int>(std::lround(v * s))); };
    return {f(r.a), f(r.b), f(r.c)};
}

std::vector<Refinement> levels_of(const Refinement& r) {
    return {scaled(r, 0.5), scaled(r, 0.75), r};
}

bool strictly_decreasing(const std::vector<double>& v) {
    for (std::size_t i = 1; i < v.size(); ++i)
        if (!(v[i] < v[i - 1])) return false;
    return true;
}

std::string fmt(double v) {
    std::ostringstream os;
    os.precision(6);
    os << v;
    return os.str();
}

struct Recorder {
    VerifyOutcome& out;
    void add(const std::string& id, const Refinement& r, double measured) {
        CheckRecord rec;
        rec.theorem_id = id;
        rec.refinement = r;
        rec.tolerance = 1.0;
        rec.measured = measured;
        rec.pass = measured <= rec.tolerance;
        out.records.push_back(rec);
        out.all_pass = out.all_pass && rec.pass;
    }
    void note(const std::string& line) { out.notes.push_back(line); }
};

// Smooth test fields.  field_a is the boundary value of x0 + x1 i, which the
// psi operator annihilates; field_b is its conjugate, which it does not.
Quaternion field_a(const Quaternion& x) { return {x.a0, x.a1, 0.0, 0.0}; }
Quaternion field_b(const Quaternion& x) { return {x.a0, -x.a1, 0.0, 0.0}; }
Quaternion field_shifted(const Quaternion& x) { return {2.0 + x.a0, x.a1, 0.0, 0.0}; }

void check_cauchy_formula(Recorder& rec, const Refinement& R, int workers) {
    const SurfaceMesh mesh = build_sphere_mesh(R.a, R.b, R.c);
    const BoundaryField one = sample_field(mesh, [](const Quaternion&) {
        return quat_one;
    });
    const double e_inside =
        abs(cauchy_integral_nearby(mesh, one, Quaternion{}, workers) - quat_one);
    const double e_outside =
        abs(cauchy_integral_nearby(mesh, one, Quaternion{3.0, 0.0, 0.0, 0.0}, workers));

    const BoundaryField trace = sample_field(mesh, [](const Quaternion& x) {
        return cauchy_kernel(x - kKernelShiftAxis);
    });
    const Quaternion probe{0.2, 0.0, 0.0, 0.0};
    const Quaternion expected = cauchy_kernel(probe - kKernelShiftAxis);
    const double e_repr =
        abs(cauchy_integral_nearby(mesh, trace, probe, workers) - expected);

    const double worst = std::max({e_inside, e_outside, e_repr});
    rec.add("cauchy_formula", R, worst / 1e-3);
    rec.note("cauchy_formula: |C[1](0)-1|=" + fmt(e_inside) + " |C[1](3e1)|=" +
             fmt(e_outside) + " reproducing=" + fmt(e_repr) + " (tol 1e-3 each)");
}

void check_plemelj(Recorder& rec, const Refinement& R, int workers) {
    std::vector<double> jump_hist, sided_hist;
    for (const Refinement& L : levels_of(R)) {
        const SurfaceMesh mesh = build_sphere_mesh(L.a, L.b, L.c);
        const double d = 0.1 * static_cast<double>(R.a) / L.a;
        double jump_rel = 0.0, sided_rel = 0.0;
        for (std::size_t t : spread_nodes(mesh, 8)) {
            const auto rows = plemelj_check(mesh, field_shifted, t, {d}, workers);
            const double scale = abs(field_shifted(mesh.nodes[t]));
            jump_rel = std::max(jump_rel, rows[0].jump_err / scale);
            sided_rel = std::max(
                sided_rel, std::max(rows[0].interior_err, rows[0].exterior_err) / scale);
        }
        jump_hist.push_back(jump_rel);
        sided_hist.push_back(sided_rel);
    }
    const bool dec = strictly_decreasing(jump_hist) && strictly_decreasing(sided_hist);
    const double measured =
        std::max({jump_hist.back() / 0.02, sided_hist.back() / 0.05, dec ? 0.0 : 2.0});
    rec.add("plemelj", R, measured);
    rec.note("plemelj: jump_rel=" + fmt(jump_hist.back()) + " (tol 0.02), one_sided_rel=" +
             fmt(sided_hist.back()) + " (tol 0.05), decreasing=" + (dec ? "yes" : "no"));
}

void check_involution(Recorder& rec, const Refinement& R, int workers) {
    double worst_final = 0.0;
    bool dec_all = true;
    for (int which = 0; which < 2; ++which) {
        const auto field = which == 0 ? field_a : field_b;
        std::vector<double> hist;
        for (const Refinement& L : levels_of(R)) {
            const SurfaceMesh mesh = build_sphere_mesh(L.a, L.b, L.c);
            const BoundaryField f = sample_field(mesh, field);
            const BoundaryField sf = singular_cauchy_field_refined(mesh, field, workers);
            const double sup = field_sup_norm(f);
            const auto nodes = spread_nodes(mesh, 20);
            std::vector<double> errs(nodes.size());
            parallel_for(nodes.size(), workers, [&](std::size_t k) {
                errs[k] = abs(singular_cauchy_squared_refined(mesh, field, sf, nodes[k], 1) -
                              f.values[nodes[k]]);
            });
            double err = 0.0;
            for (double e : errs) err = std::max(err, e);
            hist.push_back(err / sup);
        }
        dec_all = dec_all && strictly_decreasing(hist);
        worst_final = std::max(worst_final, hist.back());
    }
    const double measured = std::max(worst_final / 0.05, dec_all ? 0.0 : 2.0);
    rec.add("involution", R, measured);
    rec.note("involution: max |S^2 f - f| / |f|_inf = " + fmt(worst_final) +
             " (tol 0.05), decreasing=" + (dec_all ? "yes" : "no"));
}

void check_alpha(Recorder& rec, const Refinement& R, int workers) {
    std::vector<double> means;
    double spread = 0.0, mean = 0.0;
    for (const Refinement& L : levels_of(R)) {
        const SurfaceMesh mesh = build_sphere_mesh(L.a, L.b, L.c);
        double lo = 1e300, hi = -1e300, acc = 0.0;
        const auto nodes = spread_nodes(mesh, 20);
        for (std::size_t t : nodes) {
            const double a = alpha_at(mesh, t, workers).scalar;
            lo = std::min(lo, a);
            hi = std::max(hi, a);
            acc += a;
        }
        mean = acc / nodes.size();
        spread = hi - lo;
        means.push_back(mean);
    }
    const double dist_half = std::fabs(mean - 0.5);
    const double dist_one = std::fabs(mean - 1.0);
    const char* declared = dist_one <= dist_half ? "1" : "1/2";
    const double measured =
        std::max(spread / 0.05, std::min(dist_half, dist_one) / 0.1);
    rec.add("alpha", R, measured);
    std::ostringstream drift;
    for (std::size_t i = 1; i < means.size(); ++i)
        drift << (i > 1 ? ", " : "") << fmt(std::fabs(means[i] - means[i - 1]));
    rec.note(std::string("alpha: mean=") + fmt(mean) + " spread=" + fmt(spread) +
             " (tol 0.05); matches " + declared + " within " +
             fmt(std::min(dist_half, dist_one)) + " (tol 0.1); level drifts: " +
             drift.str());
}

void check_lemma_iterated_zero(Recorder& rec, const Refinement& R, int workers) {
    std::vector<double> mags_far, mags_near;
    double ratio_far = 0.0;
    for (const Refinement& L : {scaled(R, 0.5), R}) {
        const SurfaceMesh mesh = build_sphere_mesh(L.a, L.b, L.c);
        const std::size_t t = spread_nodes(mesh, 7)[3];
        // widely separated partner, deliberately off the exact antipode: the
        // mesh maps antipodal pairs onto each other, which cancels the sum to
        // rounding and leaves nothing to track under refinement
        std::size_t far = 0;
        double best = 1e300;
        for (std::size_t i = 0; i < mesh.size(); ++i) {
            const double d = std::fabs(dot(mesh.nodes[i], mesh.nodes[t]) + 0.8);
            if (d < best) { best = d; far = i; }
        }
        // separated but close partner
        const double want = 3.2 * mesh.max_cell_diameter();
        std::size_t near = far;
        best = 1e300;
        for (std::size_t i = 0; i < mesh.size(); ++i) {
            if (i == t) continue;
            const double d = std::sqrt(norm2(mesh.nodes[i] - mesh.nodes[t]));
            if (d >= want && d < best) { best = d; near = i; }
        }
        const Quaternion ifar = iterated_kernel_zero(mesh, t, far, workers);
        const Quaternion inear = iterated_kernel_zero(mesh, t, near, workers);
        mags_far.push_back(abs(ifar));
        mags_near.push_back(abs(inear));
        ratio_far = abs(ifar) / abs(cauchy_kernel(mesh.nodes[t] - mesh.nodes[far]));
    }
    const bool halves = mags_far[1] <= 0.5 * mags_far[0] && mags_near[1] < mags_near[0];
    const double measured = std::max(mags_far.back() / 0.05, halves ? 0.0 : 2.0);
    rec.add("lemma_iterated_zero", R, measured);
    rec.note("lemma_iterated_zero: antipodal |I|=" + fmt(mags_far.back()) +
             " (tol 0.05 abs), |I|/|K(t-xi)|=" + fmt(ratio_far) +
             ", refinement halving=" + (halves ? "yes" : "no"));
}

void check_poincare_bertrand(Recorder& rec, const Refinement& R, int workers) {
    std::vector<double> hist;
    double alpha_pv = 0.0;
    for (const Refinement& L : levels_of(R)) {
        const SurfaceMesh mesh = build_sphere_mesh(L.a, L.b, L.c);
        const auto density = [&mesh](std::size_t xi, std::size_t tau) {
            return Quaternion{mesh.nodes[xi].a0, mesh.nodes[tau].a1, 0.0, 0.0};
        };
        // nodes where |f(t,t)| is O(1)
        std::vector<std::size_t> probes;
        for (std::size_t t : spread_nodes(mesh, 24)) {
            if (probes.size() >= 2) break;
            if (abs(density(t, t)) >= 0.6) probes.push_back(t);
        }
        double rel = 0.0;
        for (std::size_t t : probes) {
            const PBReport rep = poincare_bertrand_residual(mesh, density, t, workers);
            rel = std::max(rel, rep.residual / abs(rep.correction));
            alpha_pv = rep.alpha_pv;
        }
        hist.push_back(rel);
    }
    const bool dec = strictly_decreasing(hist);
    const double measured = std::max(hist.back() / 0.15, dec ? 0.0 : 2.0);
    rec.add("poincare_bertrand", R, measured);
    rec.note("poincare_bertrand: residual/|a^2 f(t,t)| = " + fmt(hist.back()) +
             " (tol 0.15), a=" + fmt(alpha_pv) + ", decreasing=" + (dec ? "yes" : "no"));
}

void check_composition(Recorder& rec, const Refinement& R, int workers) {
    std::vector<double> hist;
    double sub_err = 0.0;
    for (const Refinement& L : levels_of(R)) {
        const SurfaceMesh mesh = build_sphere_mesh(L.a, L.b, L.c);
        const BoundaryField f = sample_field(mesh, [](const Quaternion& x) {
            return cauchy_kernel(x - kKernelShiftOut);
        });
        const CompositionReport rep =
            composition_check(mesh, f, spread_nodes(mesh, 6), workers);
        hist.push_back(rep.max_rel_err_plain);
        sub_err = rep.max_rel_err_subtracted;
    }
    // constant-density edge case: the subtracted route annihilates constants
    const SurfaceMesh mesh = build_sphere_mesh(levels_of(R)[0].a, levels_of(R)[0].b,
                                               levels_of(R)[0].c);
    const BoundaryField one = sample_field(mesh, [](const Quaternion&) {
        return quat_one;
    });
    const CompositionReport crep = composition_check(mesh, one, spread_nodes(mesh, 3),
                                                     workers);
    const bool const_flagged = crep.max_rel_err_subtracted > 0.9;  // ~100% by design

    const bool dec = strictly_decreasing(hist);
    const double measured = std::max(hist.back() / 0.15, dec ? 0.0 : 2.0);
    rec.add("composition", R, measured);
    rec.note("composition: plain-route rel err=" + fmt(hist.back()) +
             " (tol 0.15), decreasing=" + (dec ? "yes" : "no") +
             "; subtracted route rel err=" + fmt(sub_err) +
             " (annihilates extendable data); constant-field flag=" +
             (const_flagged ? "raised" : "absent"));
}

void check_n_operators(Recorder& rec, const Refinement& R, int workers) {
    const SurfaceMesh mesh = build_sphere_mesh(R.a, R.b, R.c);
    const std::size_t n = mesh.size();
    // 3 + conj(z1) + 0.5 conj(z2): bounded away from zero and far from the
    // kernel of N2, so N2^2 carries a clear signal
    ComplexField g(n);
    double sup = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const Quaternion& x = mesh.nodes[i];
        g[i] = {3.0 + x.a0 + 0.5 * x.a2, -x.a1 - 0.5 * x.a3};
        sup = std::max(sup, std::abs(g[i]));
    }
    const NFieldResult nf = op_n_field(mesh, g, workers);

    double id_err = 0.0, anti_abs = 0.0, n2sq_max = 0.0;
    for (std::size_t t : spread_nodes(mesh, 20)) {
        const double a = nf.alpha_scalar[t];
        const auto n1n1 = op_n_at(mesh, nf.n1, 1, t, a, workers);
        const auto n2n2 = op_n_at(mesh, nf.n2, 2, t, a, workers);
        const auto n1n2 = op_n_at(mesh, nf.n2, 1, t, a, workers);
        const auto n2n1 = op_n_at(mesh, nf.n1, 2, t, a, workers);
        id_err = std::max(id_err, std::abs(n1n1 - n2n2 - g[t]) / std::abs(g[t]));
        anti_abs = std::max(anti_abs, std::abs(n1n2 + n2n1));
        n2sq_max = std::max(n2sq_max, std::abs(n2n2));
    }
    rec.add("n1", R, id_err / 0.07);
    rec.add("n2", R, (anti_abs / sup) / 0.07);
    rec.add("n2sq_nonzero", R, 3.0 * anti_abs / n2sq_max);
    rec.note("n1: |(N1^2-N2^2)f - f|/|f| = " + fmt(id_err) + " (tol 0.07)");
    rec.note("n2: |(N1N2+N2N1)f|/|f|_inf = " + fmt(anti_abs / sup) + " (tol 0.07)");
    rec.note("n2sq_nonzero: max|N2^2 f| = " + fmt(n2sq_max) + " vs 3x anticommutator " +
             fmt(3.0 * anti_abs));
}

void check_k2_double_zero(Recorder& rec, const Refinement& R, int workers) {
    std::vector<double> kernel_hist, fubini_hist;
    for (const Refinement& L : levels_of(R)) {
        const SurfaceMesh mesh = build_sphere_mesh(L.a, L.b, L.c);
        const auto density = [&mesh](std::size_t xi, std::size_t tau) {
            const Quaternion& x = mesh.nodes[xi];
            const Quaternion& ta = mesh.nodes[tau];
            return std::complex<double>{x.a0 - ta.a3, ta.a1 + 0.5 * x.a2};
        };
        const std::size_t t = spread_nodes(mesh, 5)[2];
        const K2DoubleReport rep = k2_double_zero(mesh, density, t, workers);
        kernel_hist.push_back(rep.kernel_only_mag);
        fubini_hist.push_back(rep.fubini_discrepancy);
    }
    // halving from the coarsest to the doubled refinement; the fubini
    // discrepancy bottoms out at the roundoff floor of the reordered sums
    const bool dec = kernel_hist.back() <= 0.5 * kernel_hist.front() &&
                     (fubini_hist.back() < fubini_hist.front() ||
                      fubini_hist.back() < 1e-3);
    const double measured = std::max(kernel_hist.back() / 0.05, dec ? 0.0 : 2.0);
    rec.add("k2_double_zero", R, measured);
    rec.note("k2_double_zero: |double integral| = " + fmt(kernel_hist.back()) +
             " (tol 0.05), fubini discrepancy = " + fmt(fubini_hist.back()) +
             ", decreasing=" + (dec ? "yes" : "no"));
}

// Max residual over the physical points shared with the coarse interior, so
// the convergence order is measured at identical locations on every grid.
double residual_on_coarse_points(const GridField4D& g, int coarse_m) {
    const int stride = (g.m - 1) / (coarse_m - 1);
    double worst = 0.0;
    for (int i0 = 1; i0 + 1 < coarse_m; ++i0)
        for (int i1 = 1; i1 + 1 < coarse_m; ++i1)
            for (int i2 = 1; i2 + 1 < coarse_m; ++i2)
                for (int i3 = 1; i3 + 1 < coarse_m; ++i3)
                    worst = std::max(worst, abs(g.at(i0 * stride, i1 * stride,
                                                     i2 * stride, i3 * stride)));
    return worst;
}

void check_grid_operators(Recorder& rec, int grid_m) {
    const auto trace = [](const Quaternion& x) {
        return cauchy_kernel(x - kKernelShiftAxis);
    };
    const Refinement R{grid_m, grid_m, grid_m};
    const int m_half = (grid_m - 1) / 2 + 1;
    const int m_dbl = 2 * (grid_m - 1) + 1;
    double res_coarse = 0.0, res_mid = 0.0, res_fine = 0.0;
    CimminoResult cim;
    {
        const GridField4D f = sample_grid(m_half, -0.5, 0.5, trace);
        res_coarse = residual_on_coarse_points(psi_d_residual(f).real_form, m_half);
    }
    {
        const GridField4D f = sample_grid(grid_m, -0.5, 0.5, trace);
        res_mid = residual_on_coarse_points(psi_d_residual(f).real_form, m_half);
        cim = cimmino_residual(f);
    }
    {
        const GridField4D f = sample_grid(m_dbl, -0.5, 0.5, trace);
        res_fine = residual_on_coarse_points(psi_d_residual(f).real_form, m_half);
    }
    const double order1 = std::log2(res_coarse / res_mid);
    const double order2 = std::log2(res_mid / res_fine);
    rec.add("fundamental_solution", R, order2 > 0 ? 1.9 / order2 : 2.0);
    rec.note("fundamental_solution: psi-D residual orders " + fmt(order1) + " -> " +
             fmt(order2) + " on grids " + std::to_string(m_half) + "," +
             std::to_string(grid_m) + "," + std::to_string(m_dbl) +
             " (need >= 1.9)");

    const GridField4D f_mid = sample_grid(grid_m, -0.5, 0.5, trace);
    const double psi_mid = max_interior_abs(psi_d_residual(f_mid).real_form);
    const double worst_eq = std::max(cim.eq1, cim.eq2);
    const double track = std::max(worst_eq / (4.0 * psi_mid),
                                  psi_mid / (4.0 * (cim.eq1 + cim.eq2)));
    rec.add("cimmino", R, track);
    rec.note("cimmino: eq residuals (" + fmt(cim.eq1) + ", " + fmt(cim.eq2) +
             ") vs psi-D " + fmt(res_mid) + " (factor-4 tracking)");
}

}  // namespace

VerifyOutcome run_verification(const VerifyOptions& opt) {
    VerifyOutcome out;
    Recorder rec{out};
    check_cauchy_formula(rec, opt.single, opt.workers);
    check_plemelj(rec, opt.single, opt.workers);
    check_involution(rec, opt.single, opt.workers);
    check_alpha(rec, opt.single, opt.workers);
    check_lemma_iterated_zero(rec, opt.single, opt.workers);
    check_poincare_bertrand(rec, opt.dbl, opt.workers);
    check_composition(rec, opt.dbl, opt.workers);
    check_n_operators(rec, opt.single, opt.workers);
    check_k2_double_zero(rec, opt.dbl, opt.workers);
    check_grid_operators(rec, opt.grid_m);
    return out;
}

}  // namespace hx
