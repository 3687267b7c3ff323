#include "hx/controlled_ode.hpp"

#include <cmath>
#include <stdexcept>

#include "hx/network.hpp"

namespace hx {

namespace {

double act(BlockDynamics d, double x) {
    return d == BlockDynamics::tanh ? std::tanh(x) : x;
}
double act_prime(BlockDynamics d, double x) {
    if (d == BlockDynamics::linear) return 1.0;
    const double t = std::tanh(x);
    return 1.0 - t * t;
}

std::vector<double> block_pre(const OdeBlock& blk, const std::vector<double>& z) {
    std::vector<double> pre(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) {
        double acc = blk.b[i];
        for (std::size_t jj = 0; jj < z.size(); ++jj) acc += blk.W[i][jj] * z[jj];
        pre[i] = acc;
    }
    return pre;
}

// One explicit step z + h f(A, z); shared by the integrator and the
// residual stack so the two paths run identical arithmetic.
std::vector<double> residual_step(const ControlledODE& m, const OdeBlock& blk,
                                  const std::vector<double>& z) {
    const double h = m.step_size();
    const std::vector<double> pre = block_pre(blk, z);
    std::vector<double> out(z.size());
    for (std::size_t i = 0; i < z.size(); ++i)
        out[i] = z[i] + h * act(m.dynamics, pre[i]);
    return out;
}

bool finite(const std::vector<double>& v) {
    for (double x : v)
        if (!std::isfinite(x)) return false;
    return true;
}

}  // namespace

ControlledODE make_controlled_ode(int dim, int steps, double horizon,
                                  BlockDynamics dynamics, std::uint64_t seed) {
    if (dim < 1 || steps < 1 || !(horizon > 0.0))
        throw std::invalid_argument("make_controlled_ode: bad shape");
    ControlledODE m;
    m.dim = dim;
    m.horizon = horizon;
    m.dynamics = dynamics;
    detail::SplitMix rng{seed ^ 0x0de0b6ULL};
    const double bound = 1.0 / std::sqrt(static_cast<double>(dim));
    for (int k = 0; k < steps; ++k) {
        OdeBlock blk;
        blk.W.assign(dim, std::vector<double>(dim, 0.0));
        blk.b.assign(dim, 0.0);
        for (auto& row : blk.W)
            for (auto& w : row) w = uniform_symmetric(rng.next(), bound);
        for (auto& b : blk.b) b = uniform_symmetric(rng.next(), bound);
        m.blocks.push_back(std::move(blk));
    }
    m.readout_a.assign(dim, 0.0);
    for (auto& a : m.readout_a) a = uniform_symmetric(rng.next(), bound);
    m.readout_b = uniform_symmetric(rng.next(), bound);
    return m;
}

Trajectory euler_integrate(const ControlledODE& model, const std::vector<double>& x) {
    if (static_cast<int>(x.size()) != model.dim)
        throw std::invalid_argument("euler_integrate: state dimension mismatch");
    if (!finite(x)) throw std::invalid_argument("euler_integrate: non-finite input");
    Trajectory tr;
    tr.states.push_back(x);
    for (const OdeBlock& blk : model.blocks) {
        tr.states.push_back(residual_step(model, blk, tr.states.back()));
        if (!finite(tr.states.back())) {
            tr.diverged = true;
            break;
        }
    }
    return tr;
}

Trajectory resnet_forward(const ControlledODE& model, const std::vector<double>& x) {
    // Layer list built up front; each layer applies the same residual step.
    std::vector<const OdeBlock*> layers;
    for (const OdeBlock& blk : model.blocks) layers.push_back(&blk);
    Trajectory tr;
    tr.states.push_back(x);
    for (const OdeBlock* layer : layers) {
        tr.states.push_back(residual_step(model, *layer, tr.states.back()));
        if (!finite(tr.states.back())) {
            tr.diverged = true;
            break;
        }
    }
    return tr;
}

double resnet_equivalence(const ControlledODE& model, const std::vector<double>& x) {
    const Trajectory a = euler_integrate(model, x);
    const Trajectory b = resnet_forward(model, x);
    double worst = 0.0;
    for (std::size_t k = 0; k < a.states.size(); ++k)
        for (std::size_t i = 0; i < a.states[k].size(); ++i)
            worst = std::max(worst, std::fabs(a.states[k][i] - b.states[k][i]));
    return worst;
}

double readout(const ControlledODE& model, const std::vector<double>& x) {
    const Trajectory tr = euler_integrate(model, x);
    const std::vector<double>& zn = tr.states.back();
    double u = model.readout_b;
    for (std::size_t i = 0; i < zn.size(); ++i) u += model.readout_a[i] * zn[i];
    return u;
}

double dataset_loss(const ControlledODE& model, const std::vector<OdePair>& data) {
    double loss = 0.0;
    for (const auto& p : data) {
        const double r = readout(model, p.x) - p.y;
        loss += r * r;
    }
    return loss / static_cast<double>(data.size());
}

std::vector<double> control_gradient(const ControlledODE& model,
                                     const std::vector<OdePair>& data) {
    const int dim = model.dim;
    const int n = model.steps();
    const double h = model.step_size();
    std::vector<double> grad(flatten_parameters(model).size(), 0.0);
    const std::size_t readout_off = static_cast<std::size_t>(n) * dim * (dim + 1);
    const double inv_n = 1.0 / static_cast<double>(data.size());

    for (const auto& p : data) {
        // forward, keeping states and pre-activations
        std::vector<std::vector<double>> z{p.x};
        std::vector<std::vector<double>> pres;
        for (int k = 0; k < n; ++k) {
            pres.push_back(block_pre(model.blocks[k], z.back()));
            std::vector<double> nxt(dim);
            for (int i = 0; i < dim; ++i)
                nxt[i] = z.back()[i] + h * act(model.dynamics, pres.back()[i]);
            z.push_back(std::move(nxt));
        }
        double u = model.readout_b;
        for (int i = 0; i < dim; ++i) u += model.readout_a[i] * z[n][i];
        const double du = 2.0 * inv_n * (u - p.y);

        for (int i = 0; i < dim; ++i) grad[readout_off + i] += du * z[n][i];
        grad[readout_off + dim] += du;

        std::vector<double> lambda(dim);
        for (int i = 0; i < dim; ++i) lambda[i] = du * model.readout_a[i];
        for (int k = n - 1; k >= 0; --k) {
            std::vector<double> mu(dim);
            for (int i = 0; i < dim; ++i)
                mu[i] = h * lambda[i] * act_prime(model.dynamics, pres[k][i]);
            const std::size_t blk_off = static_cast<std::size_t>(k) * dim * (dim + 1);
            for (int i = 0; i < dim; ++i) {
                for (int jj = 0; jj < dim; ++jj)
                    grad[blk_off + static_cast<std::size_t>(i) * dim + jj] +=
                        mu[i] * z[k][jj];
                grad[blk_off + static_cast<std::size_t>(dim) * dim + i] += mu[i];
            }
            std::vector<double> prev(dim);
            for (int jj = 0; jj < dim; ++jj) {
                double acc = lambda[jj];
                for (int i = 0; i < dim; ++i) acc += model.blocks[k].W[i][jj] * mu[i];
                prev[jj] = acc;
            }
            lambda = std::move(prev);
        }
    }
    return grad;
}

std::vector<double> flatten_parameters(const ControlledODE& model) {
    std::vector<double> out;
    for (const auto& blk : model.blocks) {
        for (const auto& row : blk.W) out.insert(out.end(), row.begin(), row.end());
        out.insert(out.end(), blk.b.begin(), blk.b.end());
    }
    out.insert(out.end(), model.readout_a.begin(), model.readout_a.end());
    out.push_back(model.readout_b);
    return out;
}

void unflatten_parameters(ControlledODE& model, const std::vector<double>& params) {
    std::size_t at = 0;
    for (auto& blk : model.blocks) {
        for (auto& row : blk.W)
            for (auto& w : row) w = params[at++];
        for (auto& b : blk.b) b = params[at++];
    }
    for (auto& a : model.readout_a) a = params[at++];
    model.readout_b = params[at++];
    if (at != params.size())
        throw std::invalid_argument("unflatten_parameters: length mismatch");
}

OdeFitResult fit_control(const std::vector<OdePair>& data, const ControlledODE& init,
                         double eta, int epochs) {
    if (data.empty()) throw std::invalid_argument("fit_control: empty dataset");
    OdeFitResult res;
    res.model = init;
    for (int e = 0; e < epochs; ++e) {
        const double loss = dataset_loss(res.model, data);
        res.losses.push_back(loss);
        if (!(loss <= 1e6)) {
            res.diverged = true;
            break;
        }
        const std::vector<double> g = control_gradient(res.model, data);
        std::vector<double> params = flatten_parameters(res.model);
        for (std::size_t i = 0; i < params.size(); ++i) params[i] -= eta * g[i];
        unflatten_parameters(res.model, params);
    }
    return res;
}

}  // namespace hx
