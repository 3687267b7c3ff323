#include "hx/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hx {

std::vector<SweepRow> cybenko_sweep(const std::function<double(double)>& target,
                                    const std::vector<std::size_t>& widths,
                                    std::uint64_t seed, const SweepOptions& opt) {
    for (std::size_t i = 1; i < widths.size(); ++i)
        if (widths[i] <= widths[i - 1])
            throw std::invalid_argument("cybenko_sweep: widths must increase");

    Dataset<double> data;
    data.name = "sweep";
    for (std::size_t s = 0; s < opt.train_points; ++s) {
        const double x = static_cast<double>(s) / (opt.train_points - 1);
        data.inputs.push_back({x});
        data.targets.push_back({target(x)});
    }

    std::vector<SweepRow> rows;
    for (std::size_t w : widths) {
        Network<double> net = make_network<double>(
            {1, w, 1}, {Activation::sigmoid, Activation::identity}, seed + w);
        // step size scaled down with width to keep full-batch descent stable
        const double eta = opt.eta / std::sqrt(static_cast<double>(w));
        train(net, data, eta, opt.epochs, 0.0);
        double sup = 0.0;
        for (std::size_t s = 0; s < opt.eval_points; ++s) {
            const double x = static_cast<double>(s) / (opt.eval_points - 1);
            sup = std::max(sup, std::fabs(forward(net, {x})[0] - target(x)));
        }
        rows.push_back({w, sup});
    }
    return rows;
}

double narrow_deep_separation(const Dataset<double>& data, int depth,
                              std::uint64_t seed, const DepthOptions& opt) {
    if (depth < 1) throw std::invalid_argument("narrow_deep_separation: depth >= 1");
    std::vector<std::size_t> dims{2};
    std::vector<Activation> acts;
    for (int l = 0; l < depth; ++l) {
        dims.push_back(2);
        acts.push_back(Activation::tanh);
    }
    dims.push_back(1);
    acts.push_back(Activation::tanh);

    Network<double> net = make_network<double>(dims, acts, seed);
    train(net, data, opt.eta, opt.epochs, 1e-4);

    std::size_t correct = 0;
    for (std::size_t s = 0; s < data.inputs.size(); ++s) {
        const double y = forward(net, data.inputs[s])[0];
        if ((y > 0.0) == (data.targets[s][0] > 0.0)) ++correct;
    }
    return static_cast<double>(correct) / data.inputs.size();
}

ParityComparison parity_comparison(std::uint64_t seed, double eta, int epochs,
                                   double threshold) {
    const Dataset<double> parity = make_parity3();
    const Dataset<Quaternion> parity_q = embed_in_scalar_part(parity);

    ParityComparison cmp;
    // H net 3-2-1: 44 real parameters; real net 3-9-1: 46 (within 10%)
    Network<Quaternion> qnet = make_network<Quaternion>(
        {3, 2, 1}, {Activation::tanh, Activation::tanh}, seed);
    Network<double> rnet = make_network<double>(
        {3, 9, 1}, {Activation::tanh, Activation::tanh}, seed);
    cmp.quat_params = real_parameter_count(qnet);
    cmp.real_params = real_parameter_count(rnet);
    cmp.quat_log = train(qnet, parity_q, eta, epochs, threshold);
    cmp.real_log = train(rnet, parity, eta, epochs, threshold);
    return cmp;
}

Quaternion sandwich_gradient(const SandwichModel& m, const Dataset<Quaternion>& data) {
    // y = q v conj(q); with G the loss gradient at y,
    // dL/dq = G q conj(v) + conj(G) q v  (both product slots).
    Quaternion grad{};
    const double inv_n = 1.0 / static_cast<double>(data.inputs.size());
    for (std::size_t s = 0; s < data.inputs.size(); ++s) {
        const Quaternion v = data.inputs[s][0];
        const Quaternion y = m.apply(v);
        const Quaternion g = (2.0 * inv_n) * (y - data.targets[s][0]);
        grad += g * m.q * conj(v) + conj(g) * m.q * v;
    }
    return grad;
}

SandwichFit fit_sandwich(const Dataset<Quaternion>& data, double eta, int epochs,
                         std::uint64_t seed) {
    SandwichFit fit;
    detail::SplitMix rng{seed ^ 0x7e11aaULL};
    fit.model.q = Quaternion{1.0 + uniform_symmetric(rng.next(), 0.3),
                             uniform_symmetric(rng.next(), 0.3),
                             uniform_symmetric(rng.next(), 0.3),
                             uniform_symmetric(rng.next(), 0.3)};
    for (int e = 0; e < epochs; ++e) {
        double loss = 0.0;
        const double inv_n = 1.0 / static_cast<double>(data.inputs.size());
        for (std::size_t s = 0; s < data.inputs.size(); ++s)
            loss += inv_n * norm2(fit.model.apply(data.inputs[s][0]) - data.targets[s][0]);
        fit.losses.push_back(loss);
        fit.model.q -= eta * sandwich_gradient(fit.model, data);
    }
    return fit;
}

}  // namespace hx
