#include "hx/network.hpp"

#include <cmath>
#include <stdexcept>

namespace hx {

double act_eval(Activation a, double x) {
    switch (a) {
        case Activation::identity: return x;
        case Activation::sigmoid: return 1.0 / (1.0 + std::exp(-x));
        case Activation::tanh: return std::tanh(x);
        case Activation::relu: return x > 0.0 ? x : 0.0;
        case Activation::heaviside3: return x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
    }
    throw std::logic_error("act_eval: unknown activation");
}

double act_deriv(Activation a, double x) {
    switch (a) {
        case Activation::identity: return 1.0;
        case Activation::sigmoid: {
            const double s = 1.0 / (1.0 + std::exp(-x));
            return s * (1.0 - s);
        }
        case Activation::tanh: {
            const double t = std::tanh(x);
            return 1.0 - t * t;
        }
        case Activation::relu: return x > 0.0 ? 1.0 : 0.0;
        case Activation::heaviside3:
            throw std::invalid_argument("act_deriv: heaviside3 is not differentiable");
    }
    throw std::logic_error("act_deriv: unknown activation");
}

bool act_differentiable(Activation a) { return a != Activation::heaviside3; }

Activation activation_from_name(const std::string& name) {
    if (name == "identity") return Activation::identity;
    if (name == "sigmoid") return Activation::sigmoid;
    if (name == "tanh") return Activation::tanh;
    if (name == "relu") return Activation::relu;
    if (name == "heaviside3") return Activation::heaviside3;
    throw std::invalid_argument("unknown activation: " + name);
}

double uniform_symmetric(std::uint64_t raw, double bound) {
    const double u = static_cast<double>(raw >> 11) * 0x1.0p-53;  // [0, 1)
    return (2.0 * u - 1.0) * bound;
}

}  // namespace hx
