#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hx/numbers.hpp"

namespace hx {

enum class Activation { identity, sigmoid, tanh, relu, heaviside3 };

double act_eval(Activation a, double x);
double act_deriv(Activation a, double x);  // throws for heaviside3
bool act_differentiable(Activation a);
Activation activation_from_name(const std::string& name);

// Deterministic uniform draw in [-bound, bound] from raw engine output.
// std::uniform_real_distribution is implementation defined; this is not.
double uniform_symmetric(std::uint64_t raw, double bound);

// Feed-forward network over a coefficient system S.  Activations are split:
// the scalar nonlinearity acts on every real component of every element.
template <typename S>
struct Layer {
    std::vector<std::vector<S>> weights;  // [out][in]
    std::vector<S> bias;                  // [out]
    Activation act = Activation::identity;

    std::size_t out_dim() const { return weights.size(); }
    std::size_t in_dim() const { return weights.empty() ? 0 : weights[0].size(); }
};

template <typename S>
struct Network {
    std::vector<Layer<S>> layers;
    std::uint64_t seed = 0;

    std::size_t input_dim() const { return layers.front().in_dim(); }
    std::size_t output_dim() const { return layers.back().out_dim(); }
};

template <typename S>
struct Dataset {
    std::vector<std::vector<S>> inputs;
    std::vector<std::vector<S>> targets;
    std::string name;
};

struct TrainLog {
    std::vector<double> losses;  // loss before each update, one per epoch
    std::optional<int> epochs_to_threshold;
    bool diverged = false;
};

// --- implementation -------------------------------------------------------

namespace detail {
struct SplitMix {
    // splitmix64; fixed reference constants
    std::uint64_t state;
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }
};
}  // namespace detail

// Initialization: every real component uniform in [-1/sqrt(fan_in), +...].
template <typename S>
Network<S> make_network(const std::vector<std::size_t>& dims,
                        const std::vector<Activation>& acts, std::uint64_t seed) {
    if (dims.size() < 2 || acts.size() != dims.size() - 1)
        throw std::invalid_argument("make_network: dims/activations mismatch");
    Network<S> net;
    net.seed = seed;
    detail::SplitMix rng{seed ^ 0x5bf03635ULL};
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        Layer<S> layer;
        layer.act = acts[l];
        const double bound = 1.0 / std::sqrt(static_cast<double>(dims[l]));
        layer.weights.assign(dims[l + 1], std::vector<S>(dims[l], S{}));
        layer.bias.assign(dims[l + 1], S{});
        for (auto& row : layer.weights)
            for (auto& wij : row)
                for (int c = 0; c < scalar_traits<S>::components; ++c)
                    scalar_traits<S>::set(wij, c, uniform_symmetric(rng.next(), bound));
        for (auto& b : layer.bias)
            for (int c = 0; c < scalar_traits<S>::components; ++c)
                scalar_traits<S>::set(b, c, uniform_symmetric(rng.next(), bound));
        net.layers.push_back(std::move(layer));
    }
    return net;
}

template <typename S>
S split_apply(Activation a, const S& v) {
    S out{};
    for (int c = 0; c < scalar_traits<S>::components; ++c)
        scalar_traits<S>::set(out, c, act_eval(a, scalar_traits<S>::get(v, c)));
    return out;
}

template <typename S>
S split_deriv(Activation a, const S& v) {
    S out{};
    for (int c = 0; c < scalar_traits<S>::components; ++c)
        scalar_traits<S>::set(out, c, act_deriv(a, scalar_traits<S>::get(v, c)));
    return out;
}

// Componentwise product; the activation chain rule acts per real component.
inline double hadamard(double a, double b) { return a * b; }
inline std::complex<double> hadamard(const std::complex<double>& a,
                                     const std::complex<double>& b) {
    return {a.real() * b.real(), a.imag() * b.imag()};
}
inline Quaternion hadamard(const Quaternion& a, const Quaternion& b) {
    return comp_mul(a, b);
}

template <typename S>
struct ForwardTrace {
    std::vector<std::vector<S>> inputs;   // per layer, the incoming vector
    std::vector<std::vector<S>> preacts;  // per layer, b + W x
    std::vector<S> output;
};

template <typename S>
ForwardTrace<S> forward_trace(const Network<S>& net, const std::vector<S>& x) {
    if (x.size() != net.input_dim())
        throw std::invalid_argument("forward: input dimension mismatch");
    ForwardTrace<S> tr;
    std::vector<S> cur = x;
    for (const auto& layer : net.layers) {
        tr.inputs.push_back(cur);
        std::vector<S> pre(layer.out_dim());
        for (std::size_t i = 0; i < layer.out_dim(); ++i) {
            S acc = layer.bias[i];
            for (std::size_t jj = 0; jj < layer.in_dim(); ++jj)
                acc += layer.weights[i][jj] * cur[jj];
            pre[i] = acc;
        }
        tr.preacts.push_back(pre);
        cur.resize(pre.size());
        for (std::size_t i = 0; i < pre.size(); ++i)
            cur[i] = split_apply(layer.act, pre[i]);
    }
    tr.output = cur;
    return tr;
}

template <typename S>
std::vector<S> forward(const Network<S>& net, const std::vector<S>& x) {
    return forward_trace(net, x).output;
}

template <typename S>
struct Gradients {
    std::vector<Layer<S>> layers;  // same shapes; activation tags unused
    double loss = 0.0;
};

// Loss: mean over samples of the summed squared real components of y - t.
// Gradients differentiate every real parameter component through the real
// matrix representation of the system product, expressed with conjugations.
template <typename S>
Gradients<S> backprop_grad(const Network<S>& net, const Dataset<S>& data) {
    for (const auto& layer : net.layers)
        if (!act_differentiable(layer.act))
            throw std::invalid_argument("backprop_grad: non-differentiable activation");
    if (data.inputs.size() != data.targets.size() || data.inputs.empty())
        throw std::invalid_argument("backprop_grad: bad dataset");

    Gradients<S> g;
    g.layers.resize(net.layers.size());
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        g.layers[l].weights.assign(net.layers[l].out_dim(),
                                   std::vector<S>(net.layers[l].in_dim(), S{}));
        g.layers[l].bias.assign(net.layers[l].out_dim(), S{});
    }

    const double inv_n = 1.0 / static_cast<double>(data.inputs.size());
    for (std::size_t s = 0; s < data.inputs.size(); ++s) {
        const ForwardTrace<S> tr = forward_trace(net, data.inputs[s]);
        if (tr.output.size() != data.targets[s].size())
            throw std::invalid_argument("backprop_grad: target dimension mismatch");

        std::vector<S> delta(tr.output.size());
        for (std::size_t i = 0; i < tr.output.size(); ++i) {
            const S diff = tr.output[i] - data.targets[s][i];
            g.loss += inv_n * scalar_traits<S>::abs2(diff);
            delta[i] = (2.0 * inv_n) * diff;
        }

        for (std::size_t li = net.layers.size(); li-- > 0;) {
            const Layer<S>& layer = net.layers[li];
            for (std::size_t i = 0; i < delta.size(); ++i)
                delta[i] = hadamard(delta[i], split_deriv(layer.act, tr.preacts[li][i]));
            for (std::size_t i = 0; i < layer.out_dim(); ++i) {
                g.layers[li].bias[i] += delta[i];
                for (std::size_t jj = 0; jj < layer.in_dim(); ++jj)
                    g.layers[li].weights[i][jj] +=
                        delta[i] * scalar_traits<S>::conjugate(tr.inputs[li][jj]);
            }
            if (li == 0) break;
            std::vector<S> prev(layer.in_dim(), S{});
            for (std::size_t jj = 0; jj < layer.in_dim(); ++jj)
                for (std::size_t i = 0; i < layer.out_dim(); ++i)
                    prev[jj] += scalar_traits<S>::conjugate(layer.weights[i][jj]) * delta[i];
            delta = std::move(prev);
        }
    }
    return g;
}

template <typename S>
double dataset_loss(const Network<S>& net, const Dataset<S>& data) {
    double loss = 0.0;
    const double inv_n = 1.0 / static_cast<double>(data.inputs.size());
    for (std::size_t s = 0; s < data.inputs.size(); ++s) {
        const auto y = forward(net, data.inputs[s]);
        for (std::size_t i = 0; i < y.size(); ++i)
            loss += inv_n * scalar_traits<S>::abs2(y[i] - data.targets[s][i]);
    }
    return loss;
}

// Full-batch gradient descent; deterministic for a fixed network/seed.
template <typename S>
TrainLog train(Network<S>& net, const Dataset<S>& data, double eta, int max_epochs,
               double loss_threshold) {
    TrainLog log;
    for (int epoch = 0; epoch < max_epochs; ++epoch) {
        Gradients<S> g = backprop_grad(net, data);
        log.losses.push_back(g.loss);
        if (!log.epochs_to_threshold && g.loss < loss_threshold)
            log.epochs_to_threshold = epoch;
        if (g.loss > 1e6) {
            log.diverged = true;
            break;
        }
        for (std::size_t l = 0; l < net.layers.size(); ++l) {
            for (std::size_t i = 0; i < net.layers[l].out_dim(); ++i) {
                net.layers[l].bias[i] -= eta * g.layers[l].bias[i];
                for (std::size_t jj = 0; jj < net.layers[l].in_dim(); ++jj)
                    net.layers[l].weights[i][jj] -= eta * g.layers[l].weights[i][jj];
            }
        }
    }
    return log;
}

// Real expansion: replaces every element by its real matrix representation,
// so the expanded real network computes the same componentwise map.
template <typename S>
Network<double> expand_to_real(const Network<S>& net) {
    constexpr int C = scalar_traits<S>::components;
    Network<double> out;
    out.seed = net.seed;
    for (const auto& layer : net.layers) {
        Layer<double> rl;
        rl.act = layer.act;
        rl.weights.assign(layer.out_dim() * C,
                          std::vector<double>(layer.in_dim() * C, 0.0));
        rl.bias.assign(layer.out_dim() * C, 0.0);
        for (std::size_t i = 0; i < layer.out_dim(); ++i) {
            for (int c = 0; c < C; ++c)
                rl.bias[i * C + c] = scalar_traits<S>::get(layer.bias[i], c);
            for (std::size_t jj = 0; jj < layer.in_dim(); ++jj)
                for (int col = 0; col < C; ++col) {
                    const S column = layer.weights[i][jj] * basis_element<S>(col);
                    for (int row = 0; row < C; ++row)
                        rl.weights[i * C + row][jj * C + col] =
                            scalar_traits<S>::get(column, row);
                }
        }
        out.layers.push_back(std::move(rl));
    }
    return out;
}

template <typename S>
std::vector<double> expand_vector(const std::vector<S>& v) {
    constexpr int C = scalar_traits<S>::components;
    std::vector<double> out(v.size() * C);
    for (std::size_t i = 0; i < v.size(); ++i)
        for (int c = 0; c < C; ++c) out[i * C + c] = scalar_traits<S>::get(v[i], c);
    return out;
}

}  // namespace hx
