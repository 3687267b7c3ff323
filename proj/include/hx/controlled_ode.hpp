#pragma once

#include <cstdint>
#include <vector>

namespace hx {

// Controlled dynamics dz/dt = f(A(t), z) with piecewise-constant parameter
// blocks aligned to the Euler steps.  Each block parameterizes
// f(A, z) = act(A_W z + A_b) with act either tanh or the identity (the
// identity variant keeps linear benchmark problems exact).  The readout is
// u(x) = a . z(T) + b.
enum class BlockDynamics { tanh, linear };

struct OdeBlock {
    std::vector<std::vector<double>> W;  // [dim][dim]
    std::vector<double> b;               // [dim]
};

struct ControlledODE {
    int dim = 1;
    double horizon = 1.0;
    BlockDynamics dynamics = BlockDynamics::tanh;
    std::vector<OdeBlock> blocks;  // one per Euler step
    std::vector<double> readout_a;
    double readout_b = 0.0;

    int steps() const { return static_cast<int>(blocks.size()); }
    double step_size() const { return horizon / steps(); }
};

ControlledODE make_controlled_ode(int dim, int steps, double horizon,
                                  BlockDynamics dynamics, std::uint64_t seed);

// Explicit Euler trajectory (steps + 1 states, state 0 = x).  Throws on a
// non-finite input; a non-finite state mid-trajectory is reported through
// the diverged flag.
struct Trajectory {
    std::vector<std::vector<double>> states;
    bool diverged = false;
};

Trajectory euler_integrate(const ControlledODE& model, const std::vector<double>& x);

// Forward pass of the residual network z <- z + h f(A_k, z) built as an
// explicit layer stack.
Trajectory resnet_forward(const ControlledODE& model, const std::vector<double>& x);

// Max state discrepancy between the residual stack and euler_integrate.
// Identical arithmetic, so the expected value is exactly 0.
double resnet_equivalence(const ControlledODE& model, const std::vector<double>& x);

double readout(const ControlledODE& model, const std::vector<double>& x);

struct OdeFitResult {
    ControlledODE model;
    std::vector<double> losses;
    bool diverged = false;
};

struct OdePair {
    std::vector<double> x;
    double y = 0.0;
};

// Full-batch gradient descent through the unrolled Euler steps
// (discretize-then-optimize); mean squared error objective.
OdeFitResult fit_control(const std::vector<OdePair>& data, const ControlledODE& init,
                         double eta, int epochs);

// Gradient of the dataset loss with respect to every parameter, flattened in
// block-major order (W row-major, then b, block by block, then readout a, b).
std::vector<double> control_gradient(const ControlledODE& model,
                                     const std::vector<OdePair>& data);
std::vector<double> flatten_parameters(const ControlledODE& model);
void unflatten_parameters(ControlledODE& model, const std::vector<double>& params);
double dataset_loss(const ControlledODE& model, const std::vector<OdePair>& data);

}  // namespace hx
