#pragma once

#include <array>
#include <string>
#include <vector>

#include "hx/network.hpp"

namespace hx {

enum class BasicShape { triangular, raised_cosine };

// Uniform fuzzy partition: nodes x_k = x0 + k h with basic functions of
// bandwidth h forming a partition of unity on [x_0, x_{n-1}].
struct FuzzyPartition {
    int n = 0;
    double x0 = 0.0;
    double h = 1.0;
    BasicShape shape = BasicShape::triangular;

    double node(int k) const { return x0 + k * h; }
    double cover_lo() const { return x0; }
    double cover_hi() const { return node(n - 1); }
    // Basic function A_k; supported on [x_k - h, x_k + h], A_k(x_k) = 1.
    double basic(int k, double x) const;
};

FuzzyPartition uniform_partition(int n, double h, BasicShape shape, double x0 = 0.0);
BasicShape shape_from_name(const std::string& name);

// Direct transform: per node, the A_k-weighted least-squares polynomial fit
// of the samples in (x - x_k).  coeff[k] = (c0, c1, c2); entries above the
// requested degree stay 0.  Degree 0 components are local weighted means,
// degree 1 adds the slope, degree 2 the curvature coefficient.
struct FTComponents {
    int degree = 0;
    std::vector<std::array<double, 3>> coeff;
};

FTComponents ft_components(const std::vector<double>& xs, const std::vector<double>& ys,
                           const FuzzyPartition& p, int degree);

// The same linear functional as an explicit tap sequence over sample offsets
// o * spacing, o in [-h/spacing, h/spacing]; spacing must divide h.  Applying
// the taps by discrete convolution reproduces ft_components at interior nodes.
struct FTKernel {
    int degree = 0;
    double h = 0.0;
    double spacing = 0.0;
    std::vector<double> taps;  // centered, odd length
};

FTKernel ft_kernel(const FuzzyPartition& p, int degree, double spacing);

// Applies centered taps at position index i of a sample row (valid interior
// indices only).
double apply_taps(const FTKernel& k, const std::vector<double>& samples, std::size_t i);

// Degree-0 inverse transform f_hat(x) = sum_k c0_k A_k(x).
std::vector<double> inverse_ft(const FTComponents& comp, const FuzzyPartition& p,
                               const std::vector<double>& xs);

// Neuron forms.  ann_neuron: a = g(b + w . x).  conv_neuron: the patch and
// kernel have equal shape and a = g(b + sum_mn W_mn x_mn); a 1x1 kernel
// reduces to ann_neuron on scalars.
double ann_neuron(const std::vector<double>& x, const std::vector<double>& w, double b,
                  Activation g);
double conv_neuron(const std::vector<std::vector<double>>& patch,
                   const std::vector<std::vector<double>>& kernel, double b,
                   Activation g);

// CSV helpers for the kernel/component exports.
std::string kernel_to_csv(const std::vector<FTKernel>& kernels);
std::string components_to_csv(const FTComponents& comp, const FuzzyPartition& p);

}  // namespace hx
