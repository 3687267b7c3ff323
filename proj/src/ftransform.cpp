#include "hx/ftransform.hpp"

#include <cmath>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace hx {

double FuzzyPartition::basic(int k, double x) const {
    const double d = std::fabs(x - node(k));
    if (d >= h) return 0.0;
    if (shape == BasicShape::triangular) return 1.0 - d / h;
    return 0.5 * (1.0 + std::cos(std::numbers::pi * d / h));
}

FuzzyPartition uniform_partition(int n, double h, BasicShape shape, double x0) {
    if (n < 3) throw std::invalid_argument("uniform_partition: need n >= 3 nodes");
    if (!(h > 0.0)) throw std::invalid_argument("uniform_partition: bandwidth must be > 0");
    return {n, x0, h, shape};
}

BasicShape shape_from_name(const std::string& name) {
    if (name == "triangular") return BasicShape::triangular;
    if (name == "raised_cosine") return BasicShape::raised_cosine;
    throw std::invalid_argument("unknown basic-function shape: " + name);
}

namespace {

// Solves the (degree+1)-square normal equations G c = r by Gaussian
// elimination with partial pivoting; G is tiny (at most 3x3).
std::array<double, 3> solve_normal(std::array<std::array<double, 3>, 3> G,
                                   std::array<double, 3> r, int size) {
    for (int col = 0; col < size; ++col) {
        int piv = col;
        for (int row = col + 1; row < size; ++row)
            if (std::fabs(G[row][col]) > std::fabs(G[piv][col])) piv = row;
        if (std::fabs(G[piv][col]) < 1e-13)
            throw std::runtime_error(
                "ft_components: singular normal equations (too few samples under a node)");
        std::swap(G[piv], G[col]);
        std::swap(r[piv], r[col]);
        for (int row = col + 1; row < size; ++row) {
            const double fac = G[row][col] / G[col][col];
            for (int cc = col; cc < size; ++cc) G[row][cc] -= fac * G[col][cc];
            r[row] -= fac * r[col];
        }
    }
    std::array<double, 3> c{0.0, 0.0, 0.0};
    for (int row = size - 1; row >= 0; --row) {
        double acc = r[row];
        for (int cc = row + 1; cc < size; ++cc) acc -= G[row][cc] * c[cc];
        c[row] = acc / G[row][row];
    }
    return c;
}

}  // namespace

FTComponents ft_components(const std::vector<double>& xs, const std::vector<double>& ys,
                           const FuzzyPartition& p, int degree) {
    if (degree < 0 || degree > 2)
        throw std::invalid_argument("ft_components: degree must be 0, 1 or 2");
    if (xs.size() != ys.size() || xs.empty())
        throw std::invalid_argument("ft_components: mismatched samples");

    FTComponents out;
    out.degree = degree;
    out.coeff.assign(p.n, {0.0, 0.0, 0.0});
    const int size = degree + 1;
    for (int k = 0; k < p.n; ++k) {
        std::array<std::array<double, 3>, 3> G{};
        std::array<double, 3> r{};
        for (std::size_t s = 0; s < xs.size(); ++s) {
            const double w = p.basic(k, xs[s]);
            if (w <= 0.0) continue;
            const double dx = xs[s] - p.node(k);
            const std::array<double, 3> phi{1.0, dx, dx * dx};
            for (int a = 0; a < size; ++a) {
                r[a] += w * phi[a] * ys[s];
                for (int b = 0; b < size; ++b) G[a][b] += w * phi[a] * phi[b];
            }
        }
        out.coeff[k] = solve_normal(G, r, size);
    }
    return out;
}

FTKernel ft_kernel(const FuzzyPartition& p, int degree, double spacing) {
    if (degree < 0 || degree > 2)
        throw std::invalid_argument("ft_kernel: degree must be 0, 1 or 2");
    if (!(spacing > 0.0)) throw std::invalid_argument("ft_kernel: spacing must be > 0");
    const double ratio = p.h / spacing;
    const long r = std::lround(ratio);
    if (std::fabs(ratio - static_cast<double>(r)) > 1e-9 || r < 1)
        throw std::invalid_argument("ft_kernel: spacing must divide the bandwidth");

    const int size = degree + 1;
    std::array<std::array<double, 3>, 3> G{};
    for (long o = -r; o <= r; ++o) {
        const double dx = static_cast<double>(o) * spacing;
        const double w = p.basic(0, p.node(0) + dx);
        if (w <= 0.0) continue;
        const std::array<double, 3> phi{1.0, dx, dx * dx};
        for (int a = 0; a < size; ++a)
            for (int b = 0; b < size; ++b) G[a][b] += w * phi[a] * phi[b];
    }

    FTKernel kern;
    kern.degree = degree;
    kern.h = p.h;
    kern.spacing = spacing;
    kern.taps.assign(2 * r + 1, 0.0);
    // tap_o = e_degree^T G^{-1} phi(o s) w(o s): solve one system per offset
    for (long o = -r; o <= r; ++o) {
        const double dx = static_cast<double>(o) * spacing;
        const double w = p.basic(0, p.node(0) + dx);
        if (w <= 0.0) continue;
        std::array<double, 3> rhs{w, w * dx, w * dx * dx};
        for (int a = size; a < 3; ++a) rhs[a] = 0.0;
        const std::array<double, 3> sol = solve_normal(G, rhs, size);
        kern.taps[static_cast<std::size_t>(o + r)] = sol[degree];
    }
    return kern;
}

double apply_taps(const FTKernel& k, const std::vector<double>& samples, std::size_t i) {
    const long r = (static_cast<long>(k.taps.size()) - 1) / 2;
    if (static_cast<long>(i) < r || i + static_cast<std::size_t>(r) >= samples.size())
        throw std::out_of_range("apply_taps: index too close to the boundary");
    double acc = 0.0;
    for (long o = -r; o <= r; ++o)
        acc += k.taps[static_cast<std::size_t>(o + r)] *
               samples[static_cast<std::size_t>(static_cast<long>(i) + o)];
    return acc;
}

std::vector<double> inverse_ft(const FTComponents& comp, const FuzzyPartition& p,
                               const std::vector<double>& xs) {
    std::vector<double> out(xs.size(), 0.0);
    for (std::size_t s = 0; s < xs.size(); ++s) {
        double acc = 0.0;
        for (int k = 0; k < p.n; ++k) acc += comp.coeff[k][0] * p.basic(k, xs[s]);
        out[s] = acc;
    }
    return out;
}

double ann_neuron(const std::vector<double>& x, const std::vector<double>& w, double b,
                  Activation g) {
    if (x.size() != w.size()) throw std::invalid_argument("ann_neuron: shape mismatch");
    double acc = b;
    for (std::size_t i = 0; i < x.size(); ++i) acc += w[i] * x[i];
    return act_eval(g, acc);
}

double conv_neuron(const std::vector<std::vector<double>>& patch,
                   const std::vector<std::vector<double>>& kernel, double b,
                   Activation g) {
    if (patch.size() != kernel.size() || patch.empty())
        throw std::invalid_argument("conv_neuron: shape mismatch");
    double acc = b;
    for (std::size_t m = 0; m < patch.size(); ++m) {
        if (patch[m].size() != kernel[m].size())
            throw std::invalid_argument("conv_neuron: shape mismatch");
        for (std::size_t n = 0; n < patch[m].size(); ++n)
            acc += kernel[m][n] * patch[m][n];
    }
    return act_eval(g, acc);
}

std::string kernel_to_csv(const std::vector<FTKernel>& kernels) {
    std::ostringstream os;
    os.precision(17);
    os << "degree,offset,tap\n";
    for (const auto& k : kernels) {
        const long r = (static_cast<long>(k.taps.size()) - 1) / 2;
        for (long o = -r; o <= r; ++o)
            os << k.degree << ',' << o << ',' << k.taps[static_cast<std::size_t>(o + r)]
               << '\n';
    }
    return os.str();
}

std::string components_to_csv(const FTComponents& comp, const FuzzyPartition& p) {
    std::ostringstream os;
    os.precision(17);
    os << "node,c0,c1,c2\n";
    for (int k = 0; k < p.n; ++k)
        os << p.node(k) << ',' << comp.coeff[k][0] << ',' << comp.coeff[k][1] << ','
           << comp.coeff[k][2] << '\n';
    return os.str();
}

}  // namespace hx
