#pragma once

#include <array>
#include <vector>

#include "hx/network.hpp"

namespace hx {

// Three-valued step: +1 for positive, 0 at zero, -1 for negative.
int heaviside3(double x);

struct PerceptronFit {
    std::vector<double> weights;  // bias in slot 0, input vector extended by 1
    bool converged = false;
    int epochs_used = 0;
};

// Error-driven rule W <- W + eta (f_i - y_i) X_i over extended inputs
// X = [1, x...]; converged when every sample classifies exactly.
PerceptronFit perceptron_fit(const Dataset<double>& data, int max_epochs, double eta);

// Infeasibility certificate for the XOR truth table: positive coefficients
// c_i with sum c_i t_i X_i = 0, so no weight vector can make every margin
// t_i (W . X_i) positive.  Built with exact small-integer arithmetic.
struct SeparabilityCertificate {
    bool separable = true;
    std::array<long, 4> coefficients{};  // all positive when a certificate exists
};

SeparabilityCertificate xor_separability();

}  // namespace hx
