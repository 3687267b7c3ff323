#include "hx/datasets.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace hx {

namespace {

double unit_interval(detail::SplitMix& rng) {
    return static_cast<double>(rng.next() >> 11) * 0x1.0p-53;
}

double symmetric(detail::SplitMix& rng, double bound) {
    return uniform_symmetric(rng.next(), bound);
}

}  // namespace

Dataset<double> make_xor() {
    Dataset<double> d;
    d.name = "xor";
    for (double x1 : {-1.0, 1.0})
        for (double x2 : {-1.0, 1.0}) {
            d.inputs.push_back({x1, x2});
            d.targets.push_back({-x1 * x2});  // true exactly when inputs differ
        }
    return d;
}

Dataset<double> make_parity3() {
    Dataset<double> d;
    d.name = "parity3";
    for (double x1 : {-1.0, 1.0})
        for (double x2 : {-1.0, 1.0})
            for (double x3 : {-1.0, 1.0}) {
                d.inputs.push_back({x1, x2, x3});
                d.targets.push_back({x1 * x2 * x3});
            }
    return d;
}

Affine2dTask make_affine2d(std::uint64_t seed, std::size_t size) {
    if (size == 0) throw std::invalid_argument("make_affine2d: empty dataset");
    detail::SplitMix rng{seed ^ 0xa2f1d3ULL};
    Affine2dTask task;
    task.w = {symmetric(rng, 1.0), symmetric(rng, 1.0)};
    task.b = {symmetric(rng, 1.0), symmetric(rng, 1.0)};
    task.data.name = "affine2d";
    for (std::size_t s = 0; s < size; ++s) {
        const std::complex<double> z{symmetric(rng, 1.0), symmetric(rng, 1.0)};
        task.data.inputs.push_back({z});
        task.data.targets.push_back({task.w * z + task.b});
    }
    return task;
}

Rot3dTask make_rot3d(std::uint64_t seed, std::size_t size) {
    if (size == 0) throw std::invalid_argument("make_rot3d: empty dataset");
    detail::SplitMix rng{seed ^ 0x9b1e77ULL};
    Rot3dTask task;
    // random unit quaternion
    Quaternion q{symmetric(rng, 1.0), symmetric(rng, 1.0), symmetric(rng, 1.0),
                 symmetric(rng, 1.0)};
    task.q = q / abs(q);
    task.data.name = "rot3d";
    for (std::size_t s = 0; s < size; ++s) {
        const Quaternion v{0.0, symmetric(rng, 1.0), symmetric(rng, 1.0),
                           symmetric(rng, 1.0)};
        task.data.inputs.push_back({v});
        task.data.targets.push_back({task.q * v * conj(task.q)});
    }
    return task;
}

Dataset<double> make_blobs(std::uint64_t seed, std::size_t per_class) {
    detail::SplitMix rng{seed ^ 0x47c9aULL};
    Dataset<double> d;
    d.name = "blobs";
    for (std::size_t s = 0; s < per_class; ++s) {
        d.inputs.push_back({-1.5 + symmetric(rng, 0.5), -1.5 + symmetric(rng, 0.5)});
        d.targets.push_back({-1.0});
        d.inputs.push_back({1.5 + symmetric(rng, 0.5), 1.5 + symmetric(rng, 0.5)});
        d.targets.push_back({1.0});
    }
    return d;
}

Dataset<double> make_circles(std::uint64_t seed, std::size_t per_class) {
    detail::SplitMix rng{seed ^ 0x30dd1ULL};
    Dataset<double> d;
    d.name = "circles";
    for (std::size_t s = 0; s < per_class; ++s) {
        const double phi1 = 2.0 * std::numbers::pi * unit_interval(rng);
        const double phi2 = 2.0 * std::numbers::pi * unit_interval(rng);
        const double r1 = 0.5 + 0.1 * unit_interval(rng);
        const double r2 = 1.5 + 0.1 * unit_interval(rng);
        d.inputs.push_back({r1 * std::cos(phi1), r1 * std::sin(phi1)});
        d.targets.push_back({-1.0});
        d.inputs.push_back({r2 * std::cos(phi2), r2 * std::sin(phi2)});
        d.targets.push_back({1.0});
    }
    return d;
}

Dataset<Quaternion> embed_in_scalar_part(const Dataset<double>& d) {
    Dataset<Quaternion> out;
    out.name = d.name + "_quat";
    for (const auto& x : d.inputs) {
        std::vector<Quaternion> row;
        for (double v : x) row.push_back(Quaternion{v});
        out.inputs.push_back(std::move(row));
    }
    for (const auto& t : d.targets) {
        std::vector<Quaternion> row;
        for (double v : t) row.push_back(Quaternion{v});
        out.targets.push_back(std::move(row));
    }
    return out;
}

}  // namespace hx
