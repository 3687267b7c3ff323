#include "hx/experiments.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "hx/perceptron.hpp"

using hx::Quaternion;

TEST_CASE("heaviside step is the exact three-valued sign") {
    CHECK(hx::heaviside3(0.0) == 0);
    CHECK(hx::heaviside3(2.5) == 1);
    CHECK(hx::heaviside3(-1e-12) == -1);
}

TEST_CASE("perceptron learns AND but never XOR") {
    hx::Dataset<double> and_table;
    for (double x1 : {-1.0, 1.0})
        for (double x2 : {-1.0, 1.0}) {
            and_table.inputs.push_back({x1, x2});
            and_table.targets.push_back({x1 > 0 && x2 > 0 ? 1.0 : -1.0});
        }
    CHECK(hx::perceptron_fit(and_table, 100, 0.5).converged);

    CHECK_FALSE(hx::perceptron_fit(hx::make_xor(), 500, 0.5).converged);

    hx::Dataset<double> single;
    single.inputs = {{0.3, -0.4}};
    single.targets = {{1.0}};
    const auto fit = hx::perceptron_fit(single, 10, 0.5);
    CHECK(fit.converged);
    CHECK(fit.epochs_used <= 2);
}

TEST_CASE("XOR carries an exact non-separability certificate") {
    const auto cert = hx::xor_separability();
    CHECK_FALSE(cert.separable);
    for (long c : cert.coefficients) CHECK(c > 0);
}

TEST_CASE("dataset constructions") {
    const auto parity = hx::make_parity3();
    CHECK(parity.inputs.size() == 8);
    for (std::size_t s = 0; s < 8; ++s) {
        const auto& x = parity.inputs[s];
        CHECK(parity.targets[s][0] == x[0] * x[1] * x[2]);
    }

    const auto rot = hx::make_rot3d(5, 32);
    CHECK(std::fabs(norm2(rot.q) - 1.0) < 1e-12);
    for (std::size_t s = 0; s < rot.data.inputs.size(); ++s) {
        CHECK(std::fabs(rot.data.inputs[s][0].a0) == 0.0);  // pure quaternions
        CHECK(abs(rot.data.targets[s][0]) ==
              doctest::Approx(abs(rot.data.inputs[s][0])).epsilon(1e-12));
    }
}

TEST_CASE("one complex neuron recovers a hidden affine map") {
    const auto task = hx::make_affine2d(11, 48);
    // independent least-squares oracle over the same samples
    std::complex<double> sz{}, st{}, szz{}, szt{};
    const double n = static_cast<double>(task.data.inputs.size());
    for (std::size_t s = 0; s < task.data.inputs.size(); ++s) {
        const auto z = task.data.inputs[s][0];
        const auto t = task.data.targets[s][0];
        sz += z;
        st += t;
        szz += std::conj(z) * z;
        szt += std::conj(z) * t;
    }
    const std::complex<double> w_ls =
        (szt - std::conj(sz) * st / n) / (szz - std::conj(sz) * sz / n);
    const std::complex<double> b_ls = (st - w_ls * sz) / n;
    CHECK(std::abs(w_ls - task.w) < 1e-12);
    CHECK(std::abs(b_ls - task.b) < 1e-12);

    auto net = hx::make_network<std::complex<double>>({1, 1}, {hx::Activation::identity},
                                                      11);
    hx::train(net, task.data, 0.4, 4000, 0.0);
    CHECK(std::abs(net.layers[0].weights[0][0] - task.w) < 1e-6);
    CHECK(std::abs(net.layers[0].bias[0] - task.b) < 1e-6);
}

TEST_CASE("sandwich model: analytic gradient, fit, and exact norm preservation") {
    const auto task = hx::make_rot3d(3, 24);

    hx::SandwichModel probe;
    probe.q = Quaternion{0.9, 0.2, -0.3, 0.4};
    const Quaternion g = hx::sandwich_gradient(probe, task.data);
    const double h = 1e-6;
    for (int c = 0; c < 4; ++c) {
        auto loss_at = [&](double delta) {
            hx::SandwichModel m = probe;
            m.q.set(c, m.q[c] + delta);
            double loss = 0.0;
            for (std::size_t s = 0; s < task.data.inputs.size(); ++s)
                loss += norm2(m.apply(task.data.inputs[s][0]) - task.data.targets[s][0]) /
                        task.data.inputs.size();
            return loss;
        };
        const double fd = (loss_at(h) - loss_at(-h)) / (2.0 * h);
        CHECK(std::fabs(fd - g[c]) < 1e-5 * std::max(1.0, std::fabs(fd)));
    }

    auto fit = hx::fit_sandwich(task.data, 0.1, 600, 3);
    CHECK(fit.losses.back() < 1e-8);
    fit.model.renormalize();
    for (std::size_t s = 0; s < task.data.inputs.size(); ++s) {
        const Quaternion v = task.data.inputs[s][0];
        CHECK(abs(fit.model.apply(v)) == doctest::Approx(abs(v)).epsilon(1e-12));
        // same rotation as the hidden q (q and -q act identically)
        CHECK(abs(fit.model.apply(v) - task.data.targets[s][0]) < 1e-4);
    }
}

TEST_CASE("parity comparison uses matched parameter budgets") {
    const auto cmp = hx::parity_comparison(7, 0.3, 200, 1e-2);
    const double ratio = static_cast<double>(cmp.real_params) / cmp.quat_params;
    CHECK(ratio > 0.9);
    CHECK(ratio < 1.1);
    CHECK(cmp.real_log.losses.size() > 0);
    CHECK(cmp.quat_log.losses.size() > 0);
}

TEST_CASE("constant target needs only one sigmoid unit") {
    const auto rows = hx::cybenko_sweep([](double) { return 0.7; }, {1}, 1);
    CHECK(rows[0].sup_error < 1e-3);
}

TEST_CASE("lipschitz target stays finite across widths") {
    hx::SweepOptions opt;
    opt.epochs = 800;  // plumbing check, not a quality gate
    const auto rows =
        hx::cybenko_sweep([](double x) { return std::fabs(x - 0.5); }, {2, 4}, 3, opt);
    for (const auto& row : rows) {
        CHECK(std::isfinite(row.sup_error));
        CHECK(row.sup_error < 1.0);
    }
}

TEST_CASE("width-2 depth-2 network separates blobs perfectly") {
    const auto data = hx::make_blobs(17, 40);
    const double acc = hx::narrow_deep_separation(data, 2, 17);
    CHECK(acc == 1.0);
}
