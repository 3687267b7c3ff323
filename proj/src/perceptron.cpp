#include "hx/perceptron.hpp"

#include <stdexcept>

#include "hx/datasets.hpp"

namespace hx {

int heaviside3(double x) { return x > 0.0 ? 1 : (x < 0.0 ? -1 : 0); }

PerceptronFit perceptron_fit(const Dataset<double>& data, int max_epochs, double eta) {
    if (data.inputs.empty()) throw std::invalid_argument("perceptron_fit: empty dataset");
    for (const auto& t : data.targets)
        if (t.size() != 1 || (t[0] != 1.0 && t[0] != -1.0))
            throw std::invalid_argument("perceptron_fit: targets must be scalar +-1");

    PerceptronFit fit;
    fit.weights.assign(data.inputs[0].size() + 1, 0.0);
    for (int epoch = 0; epoch < max_epochs; ++epoch) {
        bool all_correct = true;
        for (std::size_t s = 0; s < data.inputs.size(); ++s) {
            double margin = fit.weights[0];
            for (std::size_t jj = 0; jj < data.inputs[s].size(); ++jj)
                margin += fit.weights[jj + 1] * data.inputs[s][jj];
            const int y = heaviside3(margin);
            const double err = data.targets[s][0] - y;
            if (err != 0.0) {
                all_correct = false;
                fit.weights[0] += eta * err;
                for (std::size_t jj = 0; jj < data.inputs[s].size(); ++jj)
                    fit.weights[jj + 1] += eta * err * data.inputs[s][jj];
            }
        }
        fit.epochs_used = epoch + 1;
        if (all_correct) {
            fit.converged = true;
            break;
        }
    }
    return fit;
}

SeparabilityCertificate xor_separability() {
    const Dataset<double> d = make_xor();
    // margins t_i (W . X_i) with X = [1, x1, x2]; sum of t_i X_i over the
    // table is the zero vector, so the margins cannot all be positive.
    long sum[3] = {0, 0, 0};
    for (std::size_t s = 0; s < d.inputs.size(); ++s) {
        const long t = static_cast<long>(d.targets[s][0]);
        sum[0] += t;
        sum[1] += t * static_cast<long>(d.inputs[s][0]);
        sum[2] += t * static_cast<long>(d.inputs[s][1]);
    }
    SeparabilityCertificate cert;
    if (sum[0] == 0 && sum[1] == 0 && sum[2] == 0) {
        cert.separable = false;
        cert.coefficients = {1, 1, 1, 1};
    }
    return cert;
}

}  // namespace hx
