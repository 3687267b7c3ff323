#include "hx/singular.hpp"

#include <algorithm>
#include <functional>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hx {

namespace {

using detail::MeshKernels;

double surface_distance(const SurfaceMesh& mesh, const Quaternion& q) {
    double best = 1e300;
    for (const auto& x : mesh.nodes) best = std::min(best, norm2(x - q));
    return std::sqrt(best);
}

// Locally refined quadrature around a singular node.  The 3x3x3 angular
// neighborhood of t (phi wrapping, psi/theta truncated at the chart edge)
// is re-integrated with 3x3x3 midpoint subdivision per cell, densities
// frozen at the parent node.  The central subcell of the singular cell is
// omitted, so the effective exclusion region shrinks threefold.  Returned
// as a correction against the plain per-cell terms: callers add it to the
// plain full sum.  Used by the unsubtracted operators (alpha inside the N
// family), whose identities are sensitive to the omitted PV mass.
template <typename Acc, typename PlainTerm, typename SubTerm>
Acc near_singular_correction(const SurfaceMesh& mesh, std::size_t t,
                             const PlainTerm& plain, const SubTerm& sub,
                             bool omit_central = true, int rings = 1, int subdiv = 3) {
    const int nt = mesh.n_theta, nf = mesh.n_phi;
    const double dpsi = std::numbers::pi / mesh.n_psi;
    const double dtheta = std::numbers::pi / nt;
    const double dphi = 2.0 * std::numbers::pi / nf;
    const long t_ip = static_cast<long>(t) / (nt * nf);
    const long rem = static_cast<long>(t) % (nt * nf);
    const long t_it = rem / nf;
    const long t_if = rem % nf;
    const int mid = subdiv / 2;
    const double subw = 1.0 / (subdiv * subdiv * subdiv);

    Acc acc{};
    for (long dp = -rings; dp <= rings; ++dp) {
        const long ip = t_ip + dp;
        if (ip < 0 || ip >= mesh.n_psi) continue;
        for (long dt = -rings; dt <= rings; ++dt) {
            const long it = t_it + dt;
            if (it < 0 || it >= nt) continue;
            for (long df = -rings; df <= rings; ++df) {
                const long iph = (t_if + df + nf) % nf;
                const std::size_t j =
                    static_cast<std::size_t>((ip * nt + it) * nf + iph);
                if (j != t) acc = acc + (Acc{} - plain(j));
                for (int a = 0; a < subdiv; ++a)
                    for (int b = 0; b < subdiv; ++b)
                        for (int c = 0; c < subdiv; ++c) {
                            if (omit_central && j == t && a == mid && b == mid &&
                                c == mid)
                                continue;
                            const double psi =
                                (ip + (2 * a + 1) / (2.0 * subdiv)) * dpsi;
                            const double theta =
                                (it + (2 * b + 1) / (2.0 * subdiv)) * dtheta;
                            const double phi =
                                (iph + (2 * c + 1) / (2.0 * subdiv)) * dphi;
                            const double spsi = std::sin(psi);
                            const double stheta = std::sin(theta);
                            const Quaternion p{std::cos(psi), spsi * std::cos(theta),
                                               spsi * stheta * std::cos(phi),
                                               spsi * stheta * std::sin(phi)};
                            const double w =
                                spsi * spsi * stheta * dpsi * dtheta * dphi * subw;
                            acc = acc + sub(p, w, j);
                        }
            }
        }
    }
    return acc;
}

Quaternion cauchy_sum(const MeshKernels& mk, const BoundaryField& f, const Quaternion& q,
                      int workers) {
    const std::size_t n = mk.mesh.size();
    return block_sum<Quaternion>(
        n, [&](std::size_t i) { return mk.weighted_kernel(i, q) * f.values[i]; },
        workers);
}

}  // namespace

Quaternion cauchy_integral(const SurfaceMesh& mesh, const BoundaryField& f,
                           const Quaternion& q, int workers) {
    const double d = surface_distance(mesh, q);
    const double guard = 2.0 * mesh.max_cell_diameter();
    if (d <= guard) {
        std::ostringstream os;
        os << "cauchy_integral: evaluation point at distance " << d
           << " from the surface, below the quadrature validity bound " << guard;
        throw std::domain_error(os.str());
    }
    const MeshKernels mk(mesh);
    return cauchy_sum(mk, f, q, workers);
}

Quaternion cauchy_integral_nearby(const SurfaceMesh& mesh, const BoundaryField& f,
                                  const Quaternion& q, int workers) {
    const MeshKernels mk(mesh);
    return cauchy_sum(mk, f, q, workers);
}

Quaternion singular_cauchy(const SurfaceMesh& mesh, const BoundaryField& f,
                           std::size_t t, int workers) {
    const MeshKernels mk(mesh);
    const Quaternion& tpos = mesh.nodes[t];
    const Quaternion ft = f.values[t];
    const Quaternion sum = block_sum<Quaternion>(
        mesh.size(),
        [&](std::size_t i) {
            if (i == t) return Quaternion{};
            return mk.weighted_kernel(i, tpos) * (f.values[i] - ft);
        },
        workers);
    return 2.0 * sum + ft;
}

BoundaryField singular_cauchy_field(const SurfaceMesh& mesh, const BoundaryField& f,
                                    int workers) {
    const MeshKernels mk(mesh);
    const std::size_t n = mesh.size();
    BoundaryField out;
    out.holder_exponent = f.holder_exponent;
    out.values.resize(n);
    parallel_for(n, workers, [&](std::size_t t) {
        const Quaternion& tpos = mesh.nodes[t];
        const Quaternion ft = f.values[t];
        const Quaternion sum = block_sum<Quaternion>(n, [&](std::size_t i) {
            if (i == t) return Quaternion{};
            return mk.weighted_kernel(i, tpos) * (f.values[i] - ft);
        });
        out.values[t] = 2.0 * sum + ft;
    });
    return out;
}

namespace {

// 3x3x3 neighbor cells of the anchor, each re-integrated with subdiv^3
// midpoints; the subcell of the anchor cell containing omit_at is skipped.
// plain(j) must reproduce the term the main sum used for cell j (zero when
// the main sum already skipped it).
template <typename SubTerm, typename PlainTerm>
Quaternion refined_cells(const SurfaceMesh& mesh, std::size_t anchor,
                         const Quaternion& omit_at, const PlainTerm& plain,
                         const SubTerm& sub, int subdiv = 3) {
    const int nt = mesh.n_theta, nf = mesh.n_phi;
    const double dpsi = std::numbers::pi / mesh.n_psi;
    const double dtheta = std::numbers::pi / nt;
    const double dphi = 2.0 * std::numbers::pi / nf;
    const long a_ip = static_cast<long>(anchor) / (nt * nf);
    const long rem = static_cast<long>(anchor) % (nt * nf);
    const long a_it = rem / nf;
    const long a_if = rem % nf;

    // subcell of the anchor cell containing omit_at
    const double o_psi = std::acos(std::clamp(omit_at.a0, -1.0, 1.0));
    const double o_theta =
        std::atan2(std::hypot(omit_at.a2, omit_at.a3), omit_at.a1);
    double o_phi = std::atan2(omit_at.a3, omit_at.a2);
    if (o_phi < 0.0) o_phi += 2.0 * std::numbers::pi;
    const auto subindex = [subdiv](double x, double lo, double width) {
        const int k = static_cast<int>((x - lo) / width * subdiv);
        return std::clamp(k, 0, subdiv - 1);
    };
    const int oa = subindex(o_psi, a_ip * dpsi, dpsi);
    const int ob = subindex(o_theta, a_it * dtheta, dtheta);
    const int oc = subindex(o_phi, a_if * dphi, dphi);

    const double subw = 1.0 / (subdiv * subdiv * subdiv);
    Quaternion acc{};
    for (long dp = -1; dp <= 1; ++dp) {
        const long ip = a_ip + dp;
        if (ip < 0 || ip >= mesh.n_psi) continue;
        for (long dt = -1; dt <= 1; ++dt) {
            const long it = a_it + dt;
            if (it < 0 || it >= nt) continue;
            for (long df = -1; df <= 1; ++df) {
                const long iph = (a_if + df + nf) % nf;
                const std::size_t j =
                    static_cast<std::size_t>((ip * nt + it) * nf + iph);
                acc -= plain(j);
                for (int a = 0; a < subdiv; ++a)
                    for (int b = 0; b < subdiv; ++b)
                        for (int c = 0; c < subdiv; ++c) {
                            if (j == anchor && a == oa && b == ob && c == oc) continue;
                            const double psi =
                                (ip + (2 * a + 1) / (2.0 * subdiv)) * dpsi;
                            const double theta =
                                (it + (2 * b + 1) / (2.0 * subdiv)) * dtheta;
                            const double phi =
                                (iph + (2 * c + 1) / (2.0 * subdiv)) * dphi;
                            const double spsi = std::sin(psi);
                            const double stheta = std::sin(theta);
                            const Quaternion p{std::cos(psi), spsi * std::cos(theta),
                                               spsi * stheta * std::cos(phi),
                                               spsi * stheta * std::sin(phi)};
                            acc += sub(p, spsi * spsi * stheta * dpsi * dtheta *
                                              dphi * subw,
                                       j);
                        }
            }
        }
    }
    return acc;
}

// One refined subtracted application at surface point p with anchor cell.
Quaternion s_refined_point(const SurfaceMesh& mesh, const MeshKernels& mk,
                           const std::function<Quaternion(const Quaternion&)>& f,
                           const std::vector<Quaternion>& fv, const Quaternion& p,
                           std::size_t anchor, int workers) {
    const Quaternion fp = f(p);
    const Quaternion full = block_sum<Quaternion>(
        mesh.size(),
        [&](std::size_t i) {
            if (i == anchor) return Quaternion{};
            return mk.weighted_kernel(i, p) * (fv[i] - fp);
        },
        workers);
    const Quaternion corr = refined_cells(
        mesh, anchor, p,
        [&](std::size_t j) {
            if (j == anchor) return Quaternion{};
            return mk.weighted_kernel(j, p) * (fv[j] - fp);
        },
        [&](const Quaternion& q, double w, std::size_t) {
            return (w * cauchy_kernel(q - p)) * (psi_twist(q) * (f(q) - fp));
        });
    return 2.0 * (full + corr) + fp;
}

}  // namespace

BoundaryField singular_cauchy_field_refined(
    const SurfaceMesh& mesh, const std::function<Quaternion(const Quaternion&)>& f,
    int workers) {
    const MeshKernels mk(mesh);
    const BoundaryField fv = sample_field(mesh, f);
    BoundaryField out;
    out.holder_exponent = fv.holder_exponent;
    out.values.resize(mesh.size());
    parallel_for(mesh.size(), workers, [&](std::size_t t) {
        out.values[t] = s_refined_point(mesh, mk, f, fv.values, mesh.nodes[t], t, 1);
    });
    return out;
}

Quaternion singular_cauchy_squared_refined(
    const SurfaceMesh& mesh, const std::function<Quaternion(const Quaternion&)>& f,
    const BoundaryField& g, std::size_t t, int workers) {
    const MeshKernels mk(mesh);
    const BoundaryField fv = sample_field(mesh, f);
    const Quaternion& tpos = mesh.nodes[t];
    const Quaternion gt = g.values[t];
    const Quaternion full = block_sum<Quaternion>(
        mesh.size(),
        [&](std::size_t i) {
            if (i == t) return Quaternion{};
            return mk.weighted_kernel(i, tpos) * (g.values[i] - gt);
        },
        workers);
    const Quaternion corr = refined_cells(
        mesh, t, tpos,
        [&](std::size_t j) {
            if (j == t) return Quaternion{};
            return mk.weighted_kernel(j, tpos) * (g.values[j] - gt);
        },
        [&](const Quaternion& q, double w, std::size_t parent) {
            const Quaternion gq = s_refined_point(mesh, mk, f, fv.values, q, parent, 1);
            return (w * cauchy_kernel(q - tpos)) * (psi_twist(q) * (gq - gt));
        });
    return 2.0 * (full + corr) + gt;
}

AlphaValue alpha_at(const SurfaceMesh& mesh, std::size_t t, int workers) {
    const MeshKernels mk(mesh);
    const Quaternion& tpos = mesh.nodes[t];
    const Quaternion sum = block_sum<Quaternion>(
        mesh.size(),
        [&](std::size_t i) {
            if (i == t) return Quaternion{};
            return mk.weighted_kernel(i, tpos);
        },
        workers);
    const Quaternion full = 2.0 * sum;
    return {full, full.a0};
}

std::vector<AlphaValue> alpha_field(const SurfaceMesh& mesh, int workers) {
    const MeshKernels mk(mesh);
    const std::size_t n = mesh.size();
    std::vector<AlphaValue> out(n);
    parallel_for(n, workers, [&](std::size_t t) {
        const Quaternion& tpos = mesh.nodes[t];
        const Quaternion sum = block_sum<Quaternion>(n, [&](std::size_t i) {
            if (i == t) return Quaternion{};
            return mk.weighted_kernel(i, tpos);
        });
        out[t] = {2.0 * sum, 2.0 * sum.a0};
    });
    return out;
}

std::vector<PlemeljRow> plemelj_check(const SurfaceMesh& mesh,
                                      const std::function<Quaternion(const Quaternion&)>& f,
                                      std::size_t t, const std::vector<double>& distances,
                                      int workers) {
    const BoundaryField fld = sample_field(mesh, f);
    const Quaternion st = singular_cauchy(mesh, fld, t, workers);
    const Quaternion ft = fld.values[t];
    const Quaternion plus = 0.5 * (st + ft);
    const Quaternion minus = 0.5 * (st - ft);
    const Quaternion& tpos = mesh.nodes[t];
    const MeshKernels mk(mesh);
    const std::size_t n = mesh.size();

    // C[f](q) = C[f - f(t)](q) + f(t) C[1](q); for constants the transform is
    // the indicator of the ball, and the remainder's peak near the anchor is
    // integrated on a locally refined grid with exact density values.
    const auto c_near = [&](const Quaternion& q, bool inside) {
        const auto plain = [&](std::size_t i) {
            return mk.weighted_kernel(i, q) * (fld.values[i] - ft);
        };
        const Quaternion full =
            block_sum<Quaternion>(n, [&](std::size_t i) { return plain(i); }, workers);
        const Quaternion corr = near_singular_correction<Quaternion>(
            mesh, t, plain,
            [&](const Quaternion& p, double w, std::size_t) {
                return (w * cauchy_kernel(p - q)) * (psi_twist(p) * (f(p) - ft));
            },
            /*omit_central=*/false, /*rings=*/2);
        return full + corr + (inside ? ft : Quaternion{});
    };

    std::vector<PlemeljRow> rows;
    rows.reserve(distances.size());
    for (double d : distances) {
        if (!(d > 0.0)) throw std::invalid_argument("plemelj_check: distance must be > 0");
        const Quaternion cin = c_near(tpos * (1.0 - d), true);
        const Quaternion cout = c_near(tpos * (1.0 + d), false);
        rows.push_back({d, abs(cin - plus), abs(cout - minus), abs(cin - cout - ft)});
    }
    return rows;
}

namespace {

struct NAccum {
    std::complex<double> b1{};
    std::complex<double> b2{};
    Quaternion alpha_sum{};
    NAccum operator+(const NAccum& o) const {
        return {b1 + o.b1, b2 + o.b2, alpha_sum + o.alpha_sum};
    }
    NAccum operator-(const NAccum& o) const {
        return {b1 - o.b1, b2 - o.b2, alpha_sum - o.alpha_sum};
    }
};

NAccum n_accum_at(const SurfaceMesh& mesh, const ComplexField& f, std::size_t t,
                  int workers) {
    const std::size_t n = mesh.size();
    const Quaternion& tpos = mesh.nodes[t];
    const auto plain = [&](std::size_t i) {
        const KernelSplit s = k1k2_split(mesh.nodes[i], tpos, mesh.normals[i]);
        const double w = mesh.weights[i];
        return NAccum{w * s.k1 * f[i], w * s.k2 * std::conj(f[i]), w * recombine(s)};
    };
    const NAccum full = block_sum<NAccum>(
        n, [&](std::size_t i) { return i == t ? NAccum{} : plain(i); }, workers);
    const NAccum corr = near_singular_correction<NAccum>(
        mesh, t, plain,
        [&](const Quaternion& p, double w, std::size_t parent) {
            const KernelSplit s = k1k2_split(p, tpos, p);
            return NAccum{w * s.k1 * f[parent], w * s.k2 * std::conj(f[parent]),
                          w * recombine(s)};
        });
    return full + corr;
}

}  // namespace

NFieldResult op_n_field(const SurfaceMesh& mesh, const ComplexField& f, int workers) {
    if (f.size() != mesh.size())
        throw std::invalid_argument("op_n_field: field size does not match mesh");
    const std::size_t n = mesh.size();
    NFieldResult out;
    out.n1.resize(n);
    out.n2.resize(n);
    out.alpha_scalar.resize(n);
    parallel_for(n, workers, [&](std::size_t t) {
        const NAccum acc = n_accum_at(mesh, f, t, 1);
        const double alpha = 2.0 * acc.alpha_sum.a0;
        out.alpha_scalar[t] = alpha;
        out.n1[t] = 2.0 * acc.b1 + (1.0 - alpha) * f[t];
        out.n2[t] = -2.0 * acc.b2 + (1.0 - alpha) * std::conj(f[t]);
    });
    return out;
}

std::complex<double> op_n_at(const SurfaceMesh& mesh, const ComplexField& f, int which,
                             std::size_t t, double alpha_scalar, int workers) {
    if (which != 1 && which != 2)
        throw std::invalid_argument("op_n_at: which must be 1 or 2");
    const NAccum acc = n_accum_at(mesh, f, t, workers);
    return which == 1 ? 2.0 * acc.b1 + (1.0 - alpha_scalar) * f[t]
                      : -2.0 * acc.b2 + (1.0 - alpha_scalar) * std::conj(f[t]);
}

double k2_kernel_double(const SurfaceMesh& mesh, std::size_t t, int workers) {
    const MeshKernels mk(mesh);
    const std::size_t n = mesh.size();
    // inner: K2 component of the refined PV constant at every node
    std::vector<std::complex<double>> c2(n);
    parallel_for(n, workers, [&](std::size_t tau) {
        const Quaternion& p = mesh.nodes[tau];
        const auto plain = [&](std::size_t i) { return mk.weighted_kernel(i, p); };
        const Quaternion full = block_sum<Quaternion>(n, [&](std::size_t i) {
            return i == tau ? Quaternion{} : plain(i);
        });
        const Quaternion corr = near_singular_correction<Quaternion>(
            mesh, tau, plain, [&](const Quaternion& sp, double w, std::size_t) {
                return (w * cauchy_kernel(sp - p)) * psi_twist(sp);
            });
        const Quaternion a = full + corr;
        c2[tau] = {a.a2, a.a3};
    });

    const Quaternion& tpos = mesh.nodes[t];
    const auto plain_outer = [&](std::size_t i) {
        const KernelSplit s = k1k2_split(mesh.nodes[i], tpos, mesh.normals[i]);
        return mesh.weights[i] * s.k2 * std::conj(c2[i]);
    };
    const std::complex<double> full = block_sum<std::complex<double>>(
        n,
        [&](std::size_t i) {
            return i == t ? std::complex<double>{} : plain_outer(i);
        },
        workers);
    const std::complex<double> corr =
        near_singular_correction<std::complex<double>>(
            mesh, t, plain_outer,
            [&](const Quaternion& sp, double w, std::size_t parent) {
                const KernelSplit s = k1k2_split(sp, tpos, sp);
                return w * s.k2 * std::conj(c2[parent]);
            });
    return std::abs(full + corr);
}

Quaternion iterated_kernel_zero(const SurfaceMesh& mesh, std::size_t t, std::size_t xi,
                                int workers) {
    if (t == xi) throw std::invalid_argument("iterated_kernel_zero: nodes coincide");
    const double sep = std::sqrt(norm2(mesh.nodes[t] - mesh.nodes[xi]));
    const double guard = 3.0 * mesh.max_cell_diameter();
    if (sep < guard) {
        std::ostringstream os;
        os << "iterated_kernel_zero: nodes separated by " << sep
           << ", below the required " << guard;
        throw std::invalid_argument(os.str());
    }
    const MeshKernels mk(mesh);
    const Quaternion& tpos = mesh.nodes[t];
    const Quaternion& xipos = mesh.nodes[xi];
    return block_sum<Quaternion>(
        mesh.size(),
        [&](std::size_t tau) {
            if (tau == t || tau == xi) return Quaternion{};
            return mk.weighted_kernel(tau, tpos) * cauchy_kernel(mesh.nodes[tau] - xipos);
        },
        workers);
}

CompositionReport composition_check(const SurfaceMesh& mesh, const BoundaryField& f,
                                    const std::vector<std::size_t>& test_nodes,
                                    int workers) {
    const MeshKernels mk(mesh);
    const std::size_t n = mesh.size();

    // One full pass: plain T[f], subtracted Ssub[f] and alpha at every node.
    std::vector<Quaternion> plain(n), sub(n), alpha_full(n);
    parallel_for(n, workers, [&](std::size_t t) {
        const Quaternion& tpos = mesh.nodes[t];
        const Quaternion ft = f.values[t];
        // Three accumulators over one kernel evaluation per pair.
        struct Acc {
            Quaternion p, s, a;
            Acc operator+(const Acc& o) const { return {p + o.p, s + o.s, a + o.a}; }
        };
        const Acc acc = block_sum<Acc>(n, [&](std::size_t i) {
            if (i == t) return Acc{};
            const Quaternion wk = mk.weighted_kernel(i, tpos);
            return Acc{wk * f.values[i], wk * (f.values[i] - ft), wk};
        });
        plain[t] = 2.0 * acc.p;
        sub[t] = 2.0 * acc.s;
        alpha_full[t] = 2.0 * acc.a;
    });

    CompositionReport rep;
    for (std::size_t t : test_nodes) {
        const Quaternion& tpos = mesh.nodes[t];
        struct Acc2 {
            Quaternion p, s;
            Acc2 operator+(const Acc2& o) const { return {p + o.p, s + o.s}; }
        };
        const Acc2 acc = block_sum<Acc2>(
            n,
            [&](std::size_t i) {
                if (i == t) return Acc2{};
                const Quaternion wk = mk.weighted_kernel(i, tpos);
                return Acc2{wk * plain[i], wk * (sub[i] - sub[t])};
            },
            workers);
        CompositionRow row;
        row.node = t;
        const double a = 0.5 * alpha_full[t].a0;
        row.predicted = (4.0 * a * a) * f.values[t];
        row.twice_plain = 2.0 * acc.p;
        row.twice_subtracted = 2.0 * acc.s;
        const double scale = std::max(abs(row.predicted), 1e-300);
        row.rel_err_plain = abs(row.twice_plain - row.predicted) / scale;
        row.rel_err_subtracted = abs(row.twice_subtracted - row.predicted) / scale;
        rep.rows.push_back(row);
        rep.max_rel_err_plain = std::max(rep.max_rel_err_plain, row.rel_err_plain);
        rep.max_rel_err_subtracted =
            std::max(rep.max_rel_err_subtracted, row.rel_err_subtracted);
    }
    return rep;
}

std::vector<std::size_t> spread_nodes(const SurfaceMesh& mesh, std::size_t count) {
    // Probe nodes stay away from the chart's coordinate poles: the tensor
    // cells degenerate there and point evaluations of PV quadratures lose
    // accuracy.  Keep nodes with sin(psi), sin(theta) >= 0.6, where the cell
    // aspect ratio is mild, and stride across that subset.
    std::vector<std::size_t> good;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const Quaternion& x = mesh.nodes[i];
        const double spsi2 = 1.0 - x.a0 * x.a0;
        if (spsi2 < 0.36) continue;
        const double stheta2 = (x.a2 * x.a2 + x.a3 * x.a3) / spsi2;
        if (stheta2 < 0.36) continue;
        good.push_back(i);
    }
    const std::size_t n = good.size();
    std::vector<std::size_t> idx;
    const std::size_t m = std::min(count, n);
    for (std::size_t c = 0; c < m; ++c) idx.push_back(good[(c * n) / m + n / (2 * m)]);
    return idx;
}

}  // namespace hx
