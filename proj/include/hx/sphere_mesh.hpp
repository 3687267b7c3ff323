#pragma once

#include <functional>
#include <string>
#include <vector>

#include "hx/quaternion.hpp"

namespace hx {

// Quadrature discretization of the unit sphere S^3 in R^4.  Nodes are cell
// midpoints of a tensor grid in hyperspherical angles, so no node sits on a
// coordinate pole.  Points are stored as quaternions under the usual
// identification of R^4 with H; on S^3 the outward unit normal at a node is
// the node itself.
struct SurfaceMesh {
    std::vector<Quaternion> nodes;
    std::vector<Quaternion> normals;
    std::vector<double> weights;  // local 3-D Hausdorff measure per cell
    int n_psi = 0;
    int n_theta = 0;
    int n_phi = 0;

    std::size_t size() const { return nodes.size(); }
    double total_area() const;
    // Largest chordal cell extent; quadrature validity scale for off-surface
    // kernel evaluation.
    double max_cell_diameter() const;
};

// x0 = cos(psi), x1 = sin(psi)cos(theta), x2 = sin(psi)sin(theta)cos(phi),
// x3 = sin(psi)sin(theta)sin(phi); weight = sin^2(psi) sin(theta) per cell
// volume in angle space.  Throws std::invalid_argument for counts < 4.
SurfaceMesh build_sphere_mesh(int n_psi, int n_theta, int n_phi);

// Quaternion-valued samples on mesh nodes together with the claimed Holder
// exponent of the sampled function.
struct BoundaryField {
    std::vector<Quaternion> values;
    double holder_exponent = 1.0;
};

BoundaryField sample_field(const SurfaceMesh& mesh,
                           const std::function<Quaternion(const Quaternion&)>& f,
                           double holder_exponent = 1.0);

double field_sup_norm(const BoundaryField& f);

struct AdRegularityRow {
    double radius = 0.0;
    double min_ratio = 0.0;  // min over probe centers of H^3(ball)/r^3
    double max_ratio = 0.0;
};

// Measures H^3(Gamma intersect B(x, r))/r^3 over a deterministic spread of
// probe centers.  Distances are chordal (ambient R^4).  Throws on an empty
// radius list or radii outside (0, 2].
std::vector<AdRegularityRow> ad_regularity_probe(const SurfaceMesh& mesh,
                                                 const std::vector<double>& radii,
                                                 int n_centers = 16);

struct ModulusRow {
    double delta = 0.0;
    double modulus = 0.0;  // w_f(delta) = max |f(x)-f(y)| over |x-y| <= delta
};

// Empirical modulus of continuity over sampled node pairs.  Pair sampling is
// deterministic; with exhaustive = true all O(N^2) pairs are scanned.
std::vector<ModulusRow> holder_modulus(const SurfaceMesh& mesh, const BoundaryField& f,
                                       const std::vector<double>& deltas,
                                       bool exhaustive = false);

// CSV with header x0,x1,x2,x3,n0,n1,n2,n3,weight, one row per node.
std::string mesh_to_csv(const SurfaceMesh& mesh);

}  // namespace hx
