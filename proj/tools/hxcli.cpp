// Command-line front end: config-driven verification and experiment runner.
// Flat key=value config files are merged under command-line flags
// (flag > file > built-in default); unknown config keys are rejected.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "hx/controlled_ode.hpp"
#include "hx/datasets.hpp"
#include "hx/experiments.hpp"
#include "hx/ftransform.hpp"
#include "hx/network.hpp"
#include "hx/perceptron.hpp"
#include "hx/report.hpp"
#include "hx/singular.hpp"
#include "hx/verification.hpp"

namespace {

using nlohmann::ordered_json;

struct Options {
    std::string config;
    std::string out = "out";
    std::string command;
    std::uint64_t seed = 1;
    int workers = 1;
    std::string refinement = "16,16,32";
    std::string refinement_double = "16,16,32";
    int grid = 17;
    // train
    std::string task = "xor";
    std::string system = "R";
    double eta = 0.5;
    int epochs = 5000;
    double loss_threshold = 1e-2;
    int hidden = 2;
    // ode-fit
    int ode_steps = 4;
    int ode_dim = 2;
    int ode_samples = 16;
    // ft-kernels
    int ft_n = 9;
    double ft_h = 0.25;
    std::string ft_shape = "raised_cosine";
    int ft_oversample = 4;
    // approx-sweep
    std::string experiment = "widths";
    std::string widths = "4,64";
    int depth = 8;
    int trial_seeds = 10;
};

hx::Refinement parse_refinement(const std::string& s) {
    hx::Refinement r;
    char c1 = 0, c2 = 0;
    std::istringstream is(s);
    if (!(is >> r.a >> c1 >> r.b >> c2 >> r.c) || c1 != ',' || c2 != ',')
        throw CLI::ValidationError("refinement", "expected A,B,C integers: " + s);
    return r;
}

std::vector<std::size_t> parse_width_list(const std::string& s) {
    std::vector<std::size_t> out;
    std::istringstream is(s);
    std::string item;
    while (std::getline(is, item, ',')) out.push_back(std::stoul(item));
    return out;
}

std::map<std::string, std::string> read_config(const std::string& path,
                                               const std::set<std::string>& known) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    std::map<std::string, std::string> kv;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        const auto notspace = line.find_first_not_of(" \t\r");
        if (notspace == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("config line " + std::to_string(lineno) +
                                     ": expected key = value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string{} : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (!known.count(key))
            throw std::runtime_error("unknown config key: " + key);
        kv[key] = value;
    }
    return kv;
}

void emit(const Options& opt, const std::string& name, const std::string& content) {
    std::filesystem::create_directories(opt.out);
    hx::write_file_atomic(opt.out + "/" + name, content);
}

// --- commands --------------------------------------------------------------

int cmd_verify(const Options& opt) {
    hx::VerifyOptions vo;
    vo.single = parse_refinement(opt.refinement);
    vo.dbl = parse_refinement(opt.refinement_double);
    vo.grid_m = opt.grid;
    vo.workers = opt.workers;
    const hx::VerifyOutcome outcome = hx::run_verification(vo);

    emit(opt, "verify.json", hx::records_to_json(outcome.records));
    emit(opt, "verify.csv", hx::records_to_csv(outcome.records));
    for (const auto& line : outcome.notes) std::cout << line << "\n";
    for (const auto& r : outcome.records)
        std::cout << (r.pass ? "[pass] " : "[FAIL] ") << r.theorem_id
                  << " measured=" << r.measured << " tolerance=" << r.tolerance << "\n";
    if (!outcome.all_pass) {
        std::cout << "verify-quaternionic: failing checks:";
        for (const auto& r : outcome.records)
            if (!r.pass) std::cout << ' ' << r.theorem_id;
        std::cout << "\n";
        return 1;
    }
    return 0;
}

ordered_json log_summary(const std::string& task, std::uint64_t seed,
                         const hx::TrainLog& log) {
    ordered_json o;
    o["task"] = task;
    o["seed"] = seed;
    o["epochs_run"] = log.losses.size();
    o["final_loss"] = log.losses.empty() ? 0.0 : log.losses.back();
    if (log.epochs_to_threshold)
        o["epochs_to_threshold"] = *log.epochs_to_threshold;
    else
        o["epochs_to_threshold"] = nullptr;
    o["diverged"] = log.diverged;
    return o;
}

int cmd_train(const Options& opt) {
    hx::TrainLog log;
    ordered_json summary;
    const std::string key = opt.task + "/" + opt.system;
    if (opt.task == "xor" || opt.task == "parity3") {
        const hx::Dataset<double> data =
            opt.task == "xor" ? hx::make_xor() : hx::make_parity3();
        const std::size_t in = data.inputs[0].size();
        if (opt.system == "R") {
            auto net = hx::make_network<double>(
                {in, static_cast<std::size_t>(opt.hidden), 1},
                {hx::Activation::tanh, hx::Activation::tanh}, opt.seed);
            log = hx::train(net, data, opt.eta, opt.epochs, opt.loss_threshold);
        } else if (opt.system == "H") {
            const auto qdata = hx::embed_in_scalar_part(data);
            auto net = hx::make_network<hx::Quaternion>(
                {in, static_cast<std::size_t>(opt.hidden), 1},
                {hx::Activation::tanh, hx::Activation::tanh}, opt.seed);
            log = hx::train(net, qdata, opt.eta, opt.epochs, opt.loss_threshold);
        } else {
            std::cerr << "train: system " << opt.system << " not supported for " << key
                      << "\n";
            return 2;
        }
    } else if (opt.task == "affine2d") {
        const auto task = hx::make_affine2d(opt.seed, 64);
        auto net = hx::make_network<std::complex<double>>(
            {1, 1}, {hx::Activation::identity}, opt.seed);
        log = hx::train(net, task.data, opt.eta, opt.epochs, opt.loss_threshold);
        summary["recovered_w"] = {net.layers[0].weights[0][0].real(),
                                  net.layers[0].weights[0][0].imag()};
        summary["hidden_w"] = {task.w.real(), task.w.imag()};
    } else if (opt.task == "rot3d") {
        const auto task = hx::make_rot3d(opt.seed, 64);
        const auto fit = hx::fit_sandwich(task.data, opt.eta, opt.epochs, opt.seed);
        log.losses = fit.losses;
        for (std::size_t e = 0; e < fit.losses.size(); ++e)
            if (fit.losses[e] < opt.loss_threshold) {
                log.epochs_to_threshold = static_cast<int>(e);
                break;
            }
    } else {
        std::cerr << "train: unknown task " << opt.task << "\n";
        return 2;
    }

    ordered_json base = log_summary(key, opt.seed, log);
    for (auto& [k, v] : summary.items()) base[k] = v;
    emit(opt, "train_loss.csv", hx::losses_to_csv(log.losses));
    emit(opt, "train_summary.json", base.dump(2) + "\n");
    std::cout << "train " << key << ": final loss "
              << (log.losses.empty() ? 0.0 : log.losses.back()) << "\n";
    if (log.diverged) {
        std::cout << "train: diverged\n";
        return 1;
    }
    return 0;
}

int cmd_ode_fit(const Options& opt) {
    // linear regression target y = 2 x + 1 on scalar inputs in slot 0
    std::vector<hx::OdePair> data;
    hx::detail::SplitMix rng{opt.seed ^ 0x5151ULL};
    for (int s = 0; s < opt.ode_samples; ++s) {
        const double x = hx::uniform_symmetric(rng.next(), 1.0);
        std::vector<double> z0(opt.ode_dim, 0.0);
        z0[0] = x;
        data.push_back({z0, 2.0 * x + 1.0});
    }
    const auto init = hx::make_controlled_ode(opt.ode_dim, opt.ode_steps, 1.0,
                                              hx::BlockDynamics::tanh, opt.seed);
    const auto fit = hx::fit_control(data, init, opt.eta, opt.epochs);

    double worst = 0.0;
    for (const auto& p : data)
        worst = std::max(worst, hx::resnet_equivalence(fit.model, p.x));

    ordered_json model;
    model["dim"] = fit.model.dim;
    model["horizon"] = fit.model.horizon;
    model["dynamics"] = fit.model.dynamics == hx::BlockDynamics::tanh ? "tanh" : "linear";
    model["blocks"] = ordered_json::array();
    for (const auto& blk : fit.model.blocks) {
        ordered_json b;
        b["W"] = blk.W;
        b["b"] = blk.b;
        model["blocks"].push_back(std::move(b));
    }
    model["readout_a"] = fit.model.readout_a;
    model["readout_b"] = fit.model.readout_b;
    model["final_loss"] = fit.losses.back();
    model["resnet_euler_discrepancy"] = worst;
    model["diverged"] = fit.diverged;

    emit(opt, "ode_loss.csv", hx::losses_to_csv(fit.losses));
    emit(opt, "ode_model.json", model.dump(2) + "\n");
    std::cout << "ode-fit: final loss " << fit.losses.back()
              << ", resnet/euler discrepancy " << worst << "\n";
    return fit.diverged ? 1 : 0;
}

int cmd_ft_kernels(const Options& opt) {
    const auto p = hx::uniform_partition(opt.ft_n, opt.ft_h,
                                         hx::shape_from_name(opt.ft_shape));
    const double spacing = opt.ft_h / opt.ft_oversample;
    std::vector<hx::FTKernel> kernels;
    for (int deg = 0; deg <= 2; ++deg) kernels.push_back(hx::ft_kernel(p, deg, spacing));

    // demo transform of a smooth function on the covered interval
    std::vector<double> xs, ys;
    for (double x = p.cover_lo() - p.h; x <= p.cover_hi() + p.h + 1e-12; x += spacing) {
        xs.push_back(x);
        ys.push_back(std::sin(2.0 * std::numbers::pi * x));
    }
    const auto comp = hx::ft_components(xs, ys, p, 2);

    emit(opt, "ft_kernels.csv", hx::kernel_to_csv(kernels));
    emit(opt, "ft_components.csv", hx::components_to_csv(comp, p));

    ordered_json o;
    o["shape"] = opt.ft_shape;
    o["nodes"] = opt.ft_n;
    o["bandwidth"] = opt.ft_h;
    o["spacing"] = spacing;
    double t0_sum = 0.0;
    for (double t : kernels[0].taps) t0_sum += t;
    o["degree0_tap_sum"] = t0_sum;
    emit(opt, "ft_summary.json", o.dump(2) + "\n");
    std::cout << "ft-kernels: wrote taps for degrees 0..2 (" << kernels[0].taps.size()
              << " taps each)\n";
    return 0;
}

int cmd_approx_sweep(const Options& opt) {
    if (opt.experiment == "widths") {
        const auto widths = parse_width_list(opt.widths);
        std::string csv = "seed,width,sup_error\n";
        ordered_json o;
        o["experiment"] = "widths";
        int improved = 0;
        for (int s = 0; s < opt.trial_seeds; ++s) {
            const auto rows = hx::cybenko_sweep(
                [](double x) { return std::sin(2.0 * std::numbers::pi * x); }, widths,
                opt.seed + static_cast<std::uint64_t>(s));
            char line[96];
            for (const auto& row : rows) {
                std::snprintf(line, sizeof(line), "%d,%zu,%.17g\n", s, row.width,
                              row.sup_error);
                csv += line;
            }
            if (rows.back().sup_error < rows.front().sup_error) ++improved;
        }
        o["seeds"] = opt.trial_seeds;
        o["improved_seeds"] = improved;
        emit(opt, "sweep.csv", csv);
        emit(opt, "sweep_summary.json", o.dump(2) + "\n");
        std::cout << "approx-sweep widths: " << improved << "/" << opt.trial_seeds
                  << " seeds improved from width " << opt.widths << "\n";
        return 0;
    }
    if (opt.experiment == "depth") {
        std::string csv = "seed,depth,accuracy\n";
        double best = 0.0;
        for (int s = 0; s < opt.trial_seeds; ++s) {
            const auto data = hx::make_circles(opt.seed + s, 64);
            const double acc = hx::narrow_deep_separation(
                data, opt.depth, opt.seed + static_cast<std::uint64_t>(s));
            best = std::max(best, acc);
            char line[64];
            std::snprintf(line, sizeof(line), "%d,%d,%.17g\n", s, opt.depth, acc);
            csv += line;
        }
        ordered_json o;
        o["experiment"] = "depth";
        o["depth"] = opt.depth;
        o["best_accuracy"] = best;
        emit(opt, "depth.csv", csv);
        emit(opt, "depth_summary.json", o.dump(2) + "\n");
        std::cout << "approx-sweep depth " << opt.depth << ": best accuracy " << best
                  << "\n";
        return 0;
    }
    std::cerr << "approx-sweep: unknown experiment " << opt.experiment << "\n";
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    Options opt;
    CLI::App app{"hypercomplex analysis and learning toolkit"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);

    app.add_option("--config", opt.config, "flat key=value config file");
    app.add_option("--out", opt.out, "output directory")->capture_default_str();
    app.add_option("--seed", opt.seed, "RNG seed")->capture_default_str();
    app.add_option("--workers", opt.workers, "worker threads for quadrature loops")
        ->capture_default_str();
    app.add_option("--refinement", opt.refinement,
                   "surface refinement A,B,C for single integrals")
        ->capture_default_str();
    app.add_option("--refinement-double", opt.refinement_double,
                   "surface refinement A,B,C for iterated double integrals")
        ->capture_default_str();
    app.add_option("--grid", opt.grid, "volume grid points per axis")
        ->capture_default_str();
    app.add_option("--command", opt.command,
                   "verify-quaternionic | train | ode-fit | ft-kernels | approx-sweep")
        ->required();
    app.add_option("--task", opt.task, "train task: xor | parity3 | affine2d | rot3d")
        ->capture_default_str();
    app.add_option("--system", opt.system, "number system: R | C | H")
        ->capture_default_str();
    app.add_option("--eta", opt.eta, "learning rate")->capture_default_str();
    app.add_option("--epochs", opt.epochs, "training epochs")->capture_default_str();
    app.add_option("--loss-threshold", opt.loss_threshold, "convergence threshold")
        ->capture_default_str();
    app.add_option("--hidden", opt.hidden, "hidden width for train nets")
        ->capture_default_str();
    app.add_option("--ode-steps", opt.ode_steps, "Euler steps")->capture_default_str();
    app.add_option("--ode-dim", opt.ode_dim, "ODE state dimension")
        ->capture_default_str();
    app.add_option("--ode-samples", opt.ode_samples, "regression sample count")
        ->capture_default_str();
    app.add_option("--ft-n", opt.ft_n, "fuzzy partition nodes")->capture_default_str();
    app.add_option("--ft-h", opt.ft_h, "fuzzy partition bandwidth")
        ->capture_default_str();
    app.add_option("--ft-shape", opt.ft_shape, "triangular | raised_cosine")
        ->capture_default_str();
    app.add_option("--ft-oversample", opt.ft_oversample, "samples per bandwidth")
        ->capture_default_str();
    app.add_option("--experiment", opt.experiment, "approx-sweep: widths | depth")
        ->capture_default_str();
    app.add_option("--widths", opt.widths, "comma list of hidden widths")
        ->capture_default_str();
    app.add_option("--depth", opt.depth, "layer count for the narrow net")
        ->capture_default_str();
    app.add_option("--trial-seeds", opt.trial_seeds, "number of seeds per experiment")
        ->capture_default_str();

    // Merge config file under command-line flags: re-parse with the file
    // values first so later (real) flags win under TakeLast.
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        std::string config_path;
        for (std::size_t i = 0; i < args.size(); ++i) {
            if (args[i] == "--config" && i + 1 < args.size()) config_path = args[i + 1];
            else if (args[i].rfind("--config=", 0) == 0)
                config_path = args[i].substr(9);
        }
        if (!config_path.empty()) {
            std::set<std::string> known;
            for (const auto* o : app.get_options()) {
                const std::string name = o->get_name(false, true);
                if (name.rfind("--", 0) == 0) known.insert(name.substr(2));
            }
            known.erase("config");
            const auto kv = read_config(config_path, known);
            std::vector<std::string> merged;
            for (const auto& [k, v] : kv) merged.push_back("--" + k + "=" + v);
            merged.insert(merged.end(), args.begin(), args.end());
            args = std::move(merged);
        }
        std::vector<const char*> cargs{argv[0]};
        for (const auto& a : args) cargs.push_back(a.c_str());
        app.parse(static_cast<int>(cargs.size()), cargs.data());
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (opt.command == "verify-quaternionic") return cmd_verify(opt);
        if (opt.command == "train") return cmd_train(opt);
        if (opt.command == "ode-fit") return cmd_ode_fit(opt);
        if (opt.command == "ft-kernels") return cmd_ft_kernels(opt);
        if (opt.command == "approx-sweep") return cmd_approx_sweep(opt);
        std::cerr << "unknown command: " << opt.command << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
