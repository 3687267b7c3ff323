#include "hx/sphere_mesh.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "hx/reduction.hpp"

namespace hx {

double SurfaceMesh::total_area() const {
    return block_sum<double>(weights.size(), [&](std::size_t i) { return weights[i]; });
}

double SurfaceMesh::max_cell_diameter() const {
    const double dpsi = std::numbers::pi / n_psi;
    const double dtheta = std::numbers::pi / n_theta;
    const double dphi = 2.0 * std::numbers::pi / n_phi;
    double worst = 0.0;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const double spsi = std::sqrt(1.0 - nodes[i].a0 * nodes[i].a0);
        const double stheta_spsi =
            std::sqrt(nodes[i].a2 * nodes[i].a2 + nodes[i].a3 * nodes[i].a3);
        const double d2 = dpsi * dpsi + spsi * spsi * dtheta * dtheta +
                          stheta_spsi * stheta_spsi * dphi * dphi;
        worst = std::max(worst, d2);
    }
    return std::sqrt(worst);
}

SurfaceMesh build_sphere_mesh(int n_psi, int n_theta, int n_phi) {
    if (n_psi < 4 || n_theta < 4 || n_phi < 4)
        throw std::invalid_argument("build_sphere_mesh: all angle counts must be >= 4");

    SurfaceMesh mesh;
    mesh.n_psi = n_psi;
    mesh.n_theta = n_theta;
    mesh.n_phi = n_phi;
    const double dpsi = std::numbers::pi / n_psi;
    const double dtheta = std::numbers::pi / n_theta;
    const double dphi = 2.0 * std::numbers::pi / n_phi;
    mesh.nodes.reserve(static_cast<std::size_t>(n_psi) * n_theta * n_phi);
    mesh.normals.reserve(mesh.nodes.capacity());
    mesh.weights.reserve(mesh.nodes.capacity());

    for (int ip = 0; ip < n_psi; ++ip) {
        const double psi = (ip + 0.5) * dpsi;
        const double spsi = std::sin(psi), cpsi = std::cos(psi);
        for (int it = 0; it < n_theta; ++it) {
            const double theta = (it + 0.5) * dtheta;
            const double stheta = std::sin(theta), ctheta = std::cos(theta);
            for (int iph = 0; iph < n_phi; ++iph) {
                const double phi = (iph + 0.5) * dphi;
                const Quaternion x{cpsi, spsi * ctheta, spsi * stheta * std::cos(phi),
                                   spsi * stheta * std::sin(phi)};
                mesh.nodes.push_back(x);
                mesh.normals.push_back(x);
                mesh.weights.push_back(spsi * spsi * stheta * dpsi * dtheta * dphi);
            }
        }
    }
    return mesh;
}

BoundaryField sample_field(const SurfaceMesh& mesh,
                           const std::function<Quaternion(const Quaternion&)>& f,
                           double holder_exponent) {
    BoundaryField out;
    out.holder_exponent = holder_exponent;
    out.values.resize(mesh.size());
    for (std::size_t i = 0; i < mesh.size(); ++i) out.values[i] = f(mesh.nodes[i]);
    return out;
}

double field_sup_norm(const BoundaryField& f) {
    double m = 0.0;
    for (const auto& v : f.values) m = std::max(m, abs(v));
    return m;
}

namespace {

// Deterministic spread of probe centers: stride through the node list.
std::vector<std::size_t> probe_centers(std::size_t n_nodes, int n_centers) {
    std::vector<std::size_t> idx;
    const std::size_t count = std::min<std::size_t>(n_centers, n_nodes);
    for (std::size_t c = 0; c < count; ++c)
        idx.push_back((c * n_nodes) / count + (n_nodes / (2 * count)));
    return idx;
}

}  // namespace

std::vector<AdRegularityRow> ad_regularity_probe(const SurfaceMesh& mesh,
                                                 const std::vector<double>& radii,
                                                 int n_centers) {
    if (radii.empty())
        throw std::invalid_argument("ad_regularity_probe: empty radius list");
    for (double r : radii)
        if (!(r > 0.0) || r > 2.0)
            throw std::invalid_argument("ad_regularity_probe: radius outside (0, 2]");

    const auto centers = probe_centers(mesh.size(), n_centers);
    std::vector<AdRegularityRow> rows;
    rows.reserve(radii.size());
    for (double r : radii) {
        AdRegularityRow row;
        row.radius = r;
        row.min_ratio = 1e300;
        row.max_ratio = 0.0;
        // closed ball with a roundoff margin so exactly-antipodal node pairs
        // at r = 2 are not dropped by floating-point noise
        const double r2 = r * r * (1.0 + 1e-12);
        for (std::size_t c : centers) {
            const Quaternion& x = mesh.nodes[c];
            double area = 0.0;
            for (std::size_t i = 0; i < mesh.size(); ++i)
                if (norm2(mesh.nodes[i] - x) <= r2) area += mesh.weights[i];
            const double ratio = area / (r * r2);
            row.min_ratio = std::min(row.min_ratio, ratio);
            row.max_ratio = std::max(row.max_ratio, ratio);
        }
        rows.push_back(row);
    }
    return rows;
}

std::vector<ModulusRow> holder_modulus(const SurfaceMesh& mesh, const BoundaryField& f,
                                       const std::vector<double>& deltas,
                                       bool exhaustive) {
    for (double d : deltas)
        if (!(d > 0.0)) throw std::invalid_argument("holder_modulus: delta must be > 0");

    std::vector<double> sorted(deltas);
    std::sort(sorted.begin(), sorted.end());
    std::vector<ModulusRow> rows(sorted.size());
    for (std::size_t k = 0; k < sorted.size(); ++k) rows[k].delta = sorted[k];

    const std::size_t n = mesh.size();
    // Full pair scan is O(N^2); the strided scan keeps large meshes usable
    // and still hits every node as a left endpoint.
    const std::size_t stride = exhaustive ? 1 : std::max<std::size_t>(1, n / 512);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t jj = i + 1; jj < n; jj += stride) {
            const double dist = std::sqrt(norm2(mesh.nodes[i] - mesh.nodes[jj]));
            const double diff = abs(f.values[i] - f.values[jj]);
            for (std::size_t k = 0; k < sorted.size(); ++k) {
                if (dist <= sorted[k] && diff > rows[k].modulus) rows[k].modulus = diff;
            }
        }
    }

    // Restore caller order.
    std::vector<ModulusRow> out;
    out.reserve(deltas.size());
    for (double d : deltas)
        for (const auto& row : rows)
            if (row.delta == d) { out.push_back(row); break; }
    return out;
}

std::string mesh_to_csv(const SurfaceMesh& mesh) {
    std::ostringstream os;
    os.precision(17);
    os << "x0,x1,x2,x3,n0,n1,n2,n3,weight\n";
    for (std::size_t i = 0; i < mesh.size(); ++i) {
        const Quaternion& x = mesh.nodes[i];
        const Quaternion& nv = mesh.normals[i];
        os << x.a0 << ',' << x.a1 << ',' << x.a2 << ',' << x.a3 << ',' << nv.a0 << ','
           << nv.a1 << ',' << nv.a2 << ',' << nv.a3 << ',' << mesh.weights[i] << '\n';
    }
    return os.str();
}

}  // namespace hx
