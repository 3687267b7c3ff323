#pragma once

#include <functional>

#include "hx/datasets.hpp"
#include "hx/network.hpp"

namespace hx {

struct SweepRow {
    std::size_t width = 0;
    double sup_error = 0.0;
};

struct SweepOptions {
    std::size_t train_points = 128;
    std::size_t eval_points = 512;
    int epochs = 12000;
    double eta = 0.5;
};

// One-hidden-layer sigmoid fit of a scalar function on [0, 1]; reports the
// sup-norm error on a dense grid, one row per width.
std::vector<SweepRow> cybenko_sweep(const std::function<double(double)>& target,
                                    const std::vector<std::size_t>& widths,
                                    std::uint64_t seed, const SweepOptions& opt = {});

struct DepthOptions {
    int epochs = 12000;
    double eta = 0.1;
};

// Width-2 network of the given depth trained on a planar two-class set;
// returns classification accuracy (sign agreement).
double narrow_deep_separation(const Dataset<double>& data, int depth,
                              std::uint64_t seed, const DepthOptions& opt = {});

struct ParityComparison {
    TrainLog real_log;
    TrainLog quat_log;
    std::size_t real_params = 0;
    std::size_t quat_params = 0;
};

// 3-bit parity on a quaternion net (inputs in the scalar part) and on a real
// net of matched real-parameter count.  Convergence epochs are recorded side
// by side; no superiority assertion is made.
ParityComparison parity_comparison(std::uint64_t seed, double eta = 0.3,
                                   int epochs = 5000, double threshold = 1e-2);

template <typename S>
std::size_t real_parameter_count(const Network<S>& net) {
    std::size_t n = 0;
    for (const auto& layer : net.layers)
        n += (layer.out_dim() * layer.in_dim() + layer.out_dim()) *
             scalar_traits<S>::components;
    return n;
}

// Single-parameter rotation model v -> q v conj(q).
struct SandwichModel {
    Quaternion q{1.0, 0.0, 0.0, 0.0};

    Quaternion apply(const Quaternion& v) const { return q * v * conj(q); }
    void renormalize() { q = q / abs(q); }
};

struct SandwichFit {
    SandwichModel model;
    std::vector<double> losses;
};

// Analytic gradient of the mean squared error through both product slots.
Quaternion sandwich_gradient(const SandwichModel& m, const Dataset<Quaternion>& data);

SandwichFit fit_sandwich(const Dataset<Quaternion>& data, double eta, int epochs,
                         std::uint64_t seed);

}  // namespace hx
