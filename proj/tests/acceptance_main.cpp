// Acceptance suite: runs every gate criterion at its stated refinement and
// tolerance and prints one pass/fail line per criterion.  Exit code 0 means
// every criterion passed.

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "hx/controlled_ode.hpp"
#include "hx/datasets.hpp"
#include "hx/experiments.hpp"
#include "hx/ftransform.hpp"
#include "hx/network.hpp"
#include "hx/perceptron.hpp"
#include "hx/singular.hpp"
#include "hx/verification.hpp"

namespace {

int g_failures = 0;
constexpr int kWorkers = 2;

void report(int criterion, bool pass, const std::string& detail) {
    std::printf("[%s] criterion %2d: %s\n", pass ? "PASS" : "FAIL", criterion,
                detail.c_str());
    std::fflush(stdout);
    if (!pass) ++g_failures;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

hx::Quaternion random_quat(hx::detail::SplitMix& rng, double bound = 2.0) {
    return {hx::uniform_symmetric(rng.next(), bound),
            hx::uniform_symmetric(rng.next(), bound),
            hx::uniform_symmetric(rng.next(), bound),
            hx::uniform_symmetric(rng.next(), bound)};
}

// --- criterion 1: exact algebra --------------------------------------------

void criterion_1() {
    bool ok = true;
    const std::array<hx::Quaternion, 4> basis{hx::quat_one, hx::quat_i, hx::quat_j,
                                              hx::quat_k};
    const int sign[4][4] = {{+1, +1, +1, +1},
                            {+1, -1, +1, -1},
                            {+1, -1, -1, +1},
                            {+1, +1, -1, -1}};
    const int unit[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) {
            hx::Quaternion expect{};
            expect.set(unit[r][c], sign[r][c]);
            ok = ok && (basis[r] * basis[c] == expect);
        }

    double worst = 0.0;
    hx::detail::SplitMix rng{101};
    for (int it = 0; it < 1000; ++it) {
        const hx::Quaternion a = random_quat(rng);
        const hx::Quaternion b = random_quat(rng);
        const hx::Quaternion ab = a * b;
        worst = std::max(worst,
                         abs(conj(ab) - conj(b) * conj(a)) / std::max(abs(ab), 1e-30));
        const hx::Quaternion n = conj(a) * a;
        worst = std::max(worst, abs(n - hx::Quaternion{norm2(a), 0, 0, 0}) / norm2(a));
        worst = std::max(worst,
                         std::fabs(norm2(ab) - norm2(a) * norm2(b)) / norm2(ab));
    }
    ok = ok && worst < 1e-12;
    report(1, ok, "quaternion algebra: table exact, conj/norm worst rel " + fmt(worst));
}

// --- criteria 2..10: singular verification at pinned refinements -----------

std::map<std::string, hx::CheckRecord> run_singular_battery() {
    hx::VerifyOptions opt;
    opt.single = {24, 24, 48};
    opt.dbl = {16, 16, 32};
    opt.grid_m = 17;
    opt.workers = kWorkers;
    const hx::VerifyOutcome out = hx::run_verification(opt);
    for (const auto& line : out.notes) std::printf("    %s\n", line.c_str());
    std::map<std::string, hx::CheckRecord> by_id;
    for (const auto& r : out.records) by_id[r.theorem_id] = r;
    return by_id;
}

void criteria_2_to_10(const std::map<std::string, hx::CheckRecord>& by_id) {
    const auto get = [&](const std::string& id) { return by_id.at(id); };
    const auto line = [&](const std::string& id) {
        const auto& r = by_id.at(id);
        return id + " measured " + fmt(r.measured) + "/1";
    };

    report(2, get("fundamental_solution").pass && get("cimmino").pass,
           "fundamental solution order + cimmino tracking: " +
               line("fundamental_solution") + ", " + line("cimmino"));
    report(3, get("cauchy_formula").pass, "cauchy formula: " + line("cauchy_formula"));
    report(4, get("plemelj").pass, "plemelj limits and jump: " + line("plemelj"));
    report(5, get("involution").pass, "involution S^2 = I: " + line("involution"));
    report(6, get("alpha").pass, "alpha consistency: " + line("alpha"));
    report(7, get("lemma_iterated_zero").pass && get("k2_double_zero").pass,
           "iterated-kernel zero integrals: " + line("lemma_iterated_zero") + ", " +
               line("k2_double_zero"));
    report(8, get("poincare_bertrand").pass,
           "poincare-bertrand residual: " + line("poincare_bertrand"));
    report(9, get("n1").pass && get("n2").pass && get("n2sq_nonzero").pass,
           "N-operator identities: " + line("n1") + ", " + line("n2") + ", " +
               line("n2sq_nonzero"));
    report(10, get("composition").pass, "composition formula: " + line("composition"));
}

// --- criterion 11: perceptron ------------------------------------------------

void criterion_11() {
    hx::Dataset<double> and_table;
    for (double x1 : {-1.0, 1.0})
        for (double x2 : {-1.0, 1.0}) {
            and_table.inputs.push_back({x1, x2});
            and_table.targets.push_back({x1 > 0 && x2 > 0 ? 1.0 : -1.0});
        }
    const bool and_ok = hx::perceptron_fit(and_table, 100, 0.5).converged;
    const bool xor_stuck = !hx::perceptron_fit(hx::make_xor(), 1000, 0.5).converged;
    const auto cert = hx::xor_separability();
    report(11, and_ok && xor_stuck && !cert.separable,
           std::string("AND converges=") + (and_ok ? "yes" : "no") +
               ", XOR blocked with exact certificate=" +
               (!cert.separable ? "yes" : "no"));
}

// --- criterion 12: gradients -------------------------------------------------

template <typename S>
double fd_worst(hx::Network<S>& net, const hx::Dataset<S>& data) {
    const hx::Gradients<S> g = hx::backprop_grad(net, data);
    const double h = 1e-6;
    double worst = 0.0;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto probe = [&](S& param, const S& grad) {
            for (int c = 0; c < hx::scalar_traits<S>::components; ++c) {
                const double save = hx::scalar_traits<S>::get(param, c);
                hx::scalar_traits<S>::set(param, c, save + h);
                const double up = hx::dataset_loss(net, data);
                hx::scalar_traits<S>::set(param, c, save - h);
                const double dn = hx::dataset_loss(net, data);
                hx::scalar_traits<S>::set(param, c, save);
                const double fd = (up - dn) / (2.0 * h);
                const double an = hx::scalar_traits<S>::get(grad, c);
                worst = std::max(worst, std::fabs(fd - an) /
                                            std::max({std::fabs(fd), std::fabs(an), 1e-4}));
            }
        };
        for (std::size_t i = 0; i < net.layers[l].out_dim(); ++i) {
            probe(net.layers[l].bias[i], g.layers[l].bias[i]);
            for (std::size_t jj = 0; jj < net.layers[l].in_dim(); ++jj)
                probe(net.layers[l].weights[i][jj], g.layers[l].weights[i][jj]);
        }
    }
    return worst;
}

template <typename S>
hx::Dataset<S> random_dataset(std::size_t in, std::size_t out, std::size_t count,
                              std::uint64_t seed) {
    hx::detail::SplitMix rng{seed};
    hx::Dataset<S> d;
    for (std::size_t s = 0; s < count; ++s) {
        std::vector<S> x(in), y(out);
        for (auto& v : x)
            for (int c = 0; c < hx::scalar_traits<S>::components; ++c)
                hx::scalar_traits<S>::set(v, c, hx::uniform_symmetric(rng.next(), 1.0));
        for (auto& v : y)
            for (int c = 0; c < hx::scalar_traits<S>::components; ++c)
                hx::scalar_traits<S>::set(v, c, hx::uniform_symmetric(rng.next(), 1.0));
        d.inputs.push_back(std::move(x));
        d.targets.push_back(std::move(y));
    }
    return d;
}

void criterion_12() {
    const std::array<hx::Activation, 4> acts{hx::Activation::identity,
                                             hx::Activation::sigmoid,
                                             hx::Activation::tanh, hx::Activation::relu};
    double worst_fd = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const hx::Activation hidden = acts[seed % acts.size()];
        {
            auto net = hx::make_network<double>({3, 3, 2},
                                                {hidden, hx::Activation::tanh}, seed);
            const auto d = random_dataset<double>(3, 2, 4, seed * 13);
            worst_fd = std::max(worst_fd, fd_worst(net, d));
        }
        {
            auto net = hx::make_network<std::complex<double>>(
                {2, 3, 1}, {hidden, hx::Activation::tanh}, seed);
            const auto d = random_dataset<std::complex<double>>(2, 1, 4, seed * 29);
            worst_fd = std::max(worst_fd, fd_worst(net, d));
        }
        {
            auto net = hx::make_network<hx::Quaternion>(
                {2, 2, 1}, {hidden, hx::Activation::tanh}, seed);
            const auto d = random_dataset<hx::Quaternion>(2, 1, 3, seed * 41);
            worst_fd = std::max(worst_fd, fd_worst(net, d));
        }
    }

    double worst_expand = 0.0;
    for (std::uint64_t seed = 1; seed <= 20; ++seed) {
        const auto net = hx::make_network<hx::Quaternion>(
            {3, 4, 2}, {hx::Activation::tanh, hx::Activation::sigmoid}, seed);
        const auto real_net = hx::expand_to_real(net);
        const auto d = random_dataset<hx::Quaternion>(3, 2, 1, seed * 77);
        const auto y = hx::expand_vector(hx::forward(net, d.inputs[0]));
        const auto yr = hx::forward(real_net, hx::expand_vector(d.inputs[0]));
        for (std::size_t i = 0; i < y.size(); ++i)
            worst_expand = std::max(worst_expand, std::fabs(y[i] - yr[i]));
    }
    report(12, worst_fd < 1e-5 && worst_expand < 1e-12,
           "gradient fd worst rel " + fmt(worst_fd) + " (tol 1e-5), expansion gap " +
               fmt(worst_expand) + " (tol 1e-12)");
}

// --- criterion 13: learning tasks -------------------------------------------

void criterion_13() {
    int xor_ok = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto net = hx::make_network<double>(
            {2, 2, 1}, {hx::Activation::tanh, hx::Activation::tanh}, seed);
        const auto log = hx::train(net, hx::make_xor(), 0.5, 5000, 1e-2);
        if (log.epochs_to_threshold) ++xor_ok;
    }

    int real_ok = 0, quat_ok = 0;
    std::vector<int> real_epochs, quat_epochs;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto cmp = hx::parity_comparison(seed, 0.3, 5000, 1e-2);
        if (cmp.real_log.epochs_to_threshold) {
            ++real_ok;
            real_epochs.push_back(*cmp.real_log.epochs_to_threshold);
        }
        if (cmp.quat_log.epochs_to_threshold) {
            ++quat_ok;
            quat_epochs.push_back(*cmp.quat_log.epochs_to_threshold);
        }
    }
    auto mean = [](const std::vector<int>& v) {
        if (v.empty()) return 0.0;
        double acc = 0.0;
        for (int x : v) acc += x;
        return acc / v.size();
    };
    std::ostringstream os;
    os << "xor " << xor_ok << "/10, parity real " << real_ok << "/10 (mean epochs "
       << fmt(mean(real_epochs)) << "), parity quat " << quat_ok << "/10 (mean epochs "
       << fmt(mean(quat_epochs)) << "); comparison recorded, no superiority assertion";
    report(13, xor_ok >= 8 && real_ok >= 8 && quat_ok >= 8, os.str());
}

// --- criterion 14: approximation experiments --------------------------------

void criterion_14() {
    int improved = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto rows = hx::cybenko_sweep(
            [](double x) { return std::sin(2.0 * std::numbers::pi * x); }, {4, 64},
            seed);
        if (rows[1].sup_error < rows[0].sup_error) ++improved;
    }

    double best_acc = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto data = hx::make_circles(seed, 64);
        best_acc = std::max(best_acc, hx::narrow_deep_separation(data, 8, seed));
    }
    report(14, improved >= 8 && best_acc >= 0.95,
           "width sweep improved " + std::to_string(improved) +
               "/10 seeds; circles depth-8 best accuracy " + fmt(best_acc));
}

// --- criterion 15: dynamics ---------------------------------------------------

void criterion_15() {
    double worst_equiv = 0.0;
    hx::detail::SplitMix rng{2024};
    for (int it = 0; it < 100; ++it) {
        const auto m = hx::make_controlled_ode(3, 4, 1.5, hx::BlockDynamics::tanh,
                                               rng.next());
        const std::vector<double> x{hx::uniform_symmetric(rng.next(), 1.0),
                                    hx::uniform_symmetric(rng.next(), 1.0),
                                    hx::uniform_symmetric(rng.next(), 1.0)};
        worst_equiv = std::max(worst_equiv, hx::resnet_equivalence(m, x));
    }

    auto exp_err = [](int steps) {
        auto m = hx::make_controlled_ode(1, steps, 1.0, hx::BlockDynamics::linear, 1);
        for (auto& blk : m.blocks) {
            blk.W = {{1.0}};
            blk.b = {0.0};
        }
        return std::fabs(hx::euler_integrate(m, {1.0}).states.back()[0] - std::exp(1.0));
    };
    const double order = std::log2(exp_err(64) / exp_err(128));

    int fit_ok = 0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const auto init =
            hx::make_controlled_ode(2, 4, 1.0, hx::BlockDynamics::tanh, seed);
        std::vector<hx::OdePair> data;
        hx::detail::SplitMix drng{seed * 7919};
        for (int s = 0; s < 16; ++s) {
            const double x = hx::uniform_symmetric(drng.next(), 1.0);
            data.push_back({{x, 0.0}, 2.0 * x + 1.0});
        }
        const auto fit = hx::fit_control(data, init, 0.2, 5000);
        if (fit.losses.back() < 1e-4) ++fit_ok;
    }
    report(15, worst_equiv == 0.0 && order >= 0.9 && fit_ok >= 8,
           "resnet/euler max discrepancy " + fmt(worst_equiv) + " (need 0), euler order " +
               fmt(order) + " (need >= 0.9), linear fit " + std::to_string(fit_ok) +
               "/10 seeds below 1e-4");
}

// --- criterion 16: f-transform ------------------------------------------------

void criterion_16() {
    bool ok = true;
    std::string why;

    for (hx::BasicShape shape : {hx::BasicShape::triangular, hx::BasicShape::raised_cosine}) {
        const auto p = hx::uniform_partition(9, 0.25, shape);
        double worst = 0.0;
        for (int i = 0; i < 10000; ++i) {
            const double x =
                p.cover_lo() + (p.cover_hi() - p.cover_lo()) * i / 9999.0;
            double sum = 0.0;
            for (int k = 0; k < p.n; ++k) sum += p.basic(k, x);
            worst = std::max(worst, std::fabs(sum - 1.0));
        }
        if (worst >= 1e-12) { ok = false; why += " ruspini=" + fmt(worst); }
    }

    const auto p = hx::uniform_partition(9, 0.5, hx::BasicShape::raised_cosine, -2.0);
    std::vector<double> xs, ys0, ys1, ys2;
    for (double x = p.cover_lo() - p.h; x <= p.cover_hi() + p.h + 1e-12; x += p.h / 8.0) {
        xs.push_back(x);
        ys0.push_back(4.0);
        ys1.push_back(x);
        ys2.push_back(x * x);
    }
    const auto c0 = hx::ft_components(xs, ys0, p, 0);
    const auto c1 = hx::ft_components(xs, ys1, p, 1);
    const auto c2 = hx::ft_components(xs, ys2, p, 2);
    for (int k = 1; k + 1 < p.n; ++k) {
        if (std::fabs(c0.coeff[k][0] - 4.0) > 1e-12) ok = false;
        if (std::fabs(c1.coeff[k][1] - 1.0) > 1e-10) ok = false;
        if (std::fabs(c2.coeff[k][2] - 1.0) > 1e-8) ok = false;
    }

    // kernel/least-squares equivalence and shape signatures
    double equiv_worst = 0.0;
    const double spacing = p.h / 8.0;
    std::vector<double> ys;
    for (double x : xs) ys.push_back(std::sin(1.3 * x) + 0.2 * x * x);
    for (int degree = 0; degree <= 2; ++degree) {
        const auto comp = hx::ft_components(xs, ys, p, degree);
        const auto kern = hx::ft_kernel(p, degree, spacing);
        for (int k = 1; k + 1 < p.n; ++k) {
            std::size_t idx = 0;
            for (std::size_t i = 0; i < xs.size(); ++i)
                if (std::fabs(xs[i] - p.node(k)) < 1e-9) idx = i;
            equiv_worst = std::max(equiv_worst,
                                   std::fabs(hx::apply_taps(kern, ys, idx) -
                                             comp.coeff[k][degree]));
        }
    }
    if (equiv_worst >= 1e-12) { ok = false; why += " kernel_equiv=" + fmt(equiv_worst); }

    const auto k0 = hx::ft_kernel(p, 0, spacing);
    const auto k1 = hx::ft_kernel(p, 1, spacing);
    const auto k2 = hx::ft_kernel(p, 2, spacing);
    const std::size_t n = k0.taps.size();
    double s0 = 0.0, s1 = 0.0, s2 = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        s0 += k0.taps[i];
        s1 += k1.taps[i];
        s2 += k2.taps[i];
        if (k0.taps[i] < 0.0) ok = false;
        if (std::fabs(k0.taps[i] - k0.taps[n - 1 - i]) > 1e-12) ok = false;
        if (std::fabs(k1.taps[i] + k1.taps[n - 1 - i]) > 1e-12) ok = false;
        if (std::fabs(k2.taps[i] - k2.taps[n - 1 - i]) > 1e-12) ok = false;
    }
    if (std::fabs(s0 - 1.0) > 1e-12 || std::fabs(s1) > 1e-12 || std::fabs(s2) > 1e-12)
        ok = false;
    if (k2.taps[n / 2] >= 0.0) ok = false;

    report(16, ok,
           "ruspini/polynomial reproduction/kernel equivalence/signatures" +
               (why.empty() ? std::string(" all within stated tolerances") : why));
}

// --- criterion 17: CLI determinism --------------------------------------------

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    return std::string((std::istreambuf_iterator<char>(in)),
                       std::istreambuf_iterator<char>());
}

void criterion_17(const char* cli_path) {
    if (cli_path == nullptr) {
        report(17, false, "CLI path not supplied to the acceptance runner");
        return;
    }
    namespace fs = std::filesystem;
    const fs::path base = fs::temp_directory_path() / "hx_acceptance_determinism";
    fs::remove_all(base);
    fs::create_directories(base);
    const std::string common = std::string(cli_path) +
                               " --command verify-quaternionic --workers 1"
                               " --refinement 8,8,16 --refinement-double 8,8,16"
                               " --grid 9 --out ";
    const std::string out1 = (base / "run1").string();
    const std::string out2 = (base / "run2").string();
    const int rc1 = std::system((common + out1 + " > " + (base / "log1").string() +
                                 " 2>&1").c_str());
    const int rc2 = std::system((common + out2 + " > " + (base / "log2").string() +
                                 " 2>&1").c_str());
    const std::string j1 = slurp(out1 + "/verify.json");
    const std::string j2 = slurp(out2 + "/verify.json");
    const bool ok = !j1.empty() && j1 == j2 && rc1 == rc2;
    report(17, ok,
           "two serial verify runs byte-identical=" + std::string(j1 == j2 ? "yes" : "no") +
               " (" + std::to_string(j1.size()) + " bytes each)");
    fs::remove_all(base);
}

}  // namespace

int main(int argc, char** argv) {
    std::printf("acceptance suite: %d worker threads for quadrature\n", kWorkers);
    criterion_1();
    const auto battery = run_singular_battery();
    criteria_2_to_10(battery);
    criterion_11();
    criterion_12();
    criterion_13();
    criterion_14();
    criterion_15();
    criterion_16();
    criterion_17(argc > 1 ? argv[1] : nullptr);
    std::printf("%d of 17 criteria passed\n", 17 - g_failures);
    return g_failures == 0 ? 0 : 1;
}
