#pragma once

#include <cstdint>

#include "chaosmark/bitplane.hpp"

namespace chaosmark {

/// Procedural 256x256 test carrier: smooth shading, edges, and a fine
/// texture, built from integer arithmetic so it is identical everywhere.
GrayImage synthetic_carrier(int size = 256);

/// 64x64 binary logo: a framed ring crossed by a diagonal bar.
Watermark synthetic_logo(int size = 64);

// Uniform random fixtures for tests and the acceptance suite.
GrayImage random_image(int width, int height, std::uint64_t seed);
Watermark random_watermark(int width, int height, std::uint64_t seed);

}  // namespace chaosmark
