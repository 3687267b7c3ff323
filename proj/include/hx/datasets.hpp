#pragma once

#include <complex>
#include <cstdint>

#include "hx/network.hpp"

namespace hx {

// Truth tables use the +-1 encoding; targets are +-1.
Dataset<double> make_xor();
Dataset<double> make_parity3();

// Random complex points z with targets w z + b for a fixed hidden (w, b).
struct Affine2dTask {
    Dataset<std::complex<double>> data;
    std::complex<double> w;
    std::complex<double> b;
};
Affine2dTask make_affine2d(std::uint64_t seed, std::size_t size);

// Random pure quaternions v with targets q v conj(q) for a fixed unit q.
struct Rot3dTask {
    Dataset<Quaternion> data;
    Quaternion q;
};
Rot3dTask make_rot3d(std::uint64_t seed, std::size_t size);

// Planar two-class sets for the narrow-depth experiments.  Both are
// separable by construction; targets are +-1 scalars.
Dataset<double> make_blobs(std::uint64_t seed, std::size_t per_class);
Dataset<double> make_circles(std::uint64_t seed, std::size_t per_class);

// Re-encodes a real dataset into quaternion scalar parts.
Dataset<Quaternion> embed_in_scalar_part(const Dataset<double>& d);

}  // namespace hx
