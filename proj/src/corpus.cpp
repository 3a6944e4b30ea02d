#include "chaosmark/corpus.hpp"

#include <algorithm>
#include <cstdlib>

#include "chaosmark/attacks.hpp"

namespace chaosmark {

namespace {

// Integer hash of a coordinate pair, used for texture.
std::uint32_t hash2(std::uint32_t x, std::uint32_t y) {
  std::uint32_t h = x * 0x8DA6B343u ^ y * 0xD8163841u;
  h ^= h >> 13;
  h *= 0x85EBCA6Bu;
  h ^= h >> 16;
  return h;
}

}  // namespace

GrayImage synthetic_carrier(int size) {
  GrayImage img(size, size);
  const int c = size / 2;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      // Diagonal shading from dark to light.
      int v = 40 + (150 * (x + y)) / (2 * size);
      // A bright disc with a soft rim.
      const int dx = x - c * 3 / 4;
      const int dy = y - c;
      const int r2 = dx * dx + dy * dy;
      const int disc = size * size / 16;
      if (r2 < disc) v += 50 - (50 * r2) / disc;
      // A dark rectangle with hard edges.
      if (x > size * 5 / 8 && x < size * 7 / 8 && y > size / 8 && y < size * 3 / 8) v -= 45;
      // Stripes in the lower right quadrant.
      if (x > c && y > c) v += ((x + 2 * y) / 6) % 2 ? 18 : -18;
      // Fine texture, +-6 levels.
      v += static_cast<int>(hash2(static_cast<std::uint32_t>(x), static_cast<std::uint32_t>(y)) % 13) - 6;
      img(y, x) = static_cast<std::uint8_t>(std::clamp(v, 0, 255));
    }
  }
  return img;
}

Watermark synthetic_logo(int size) {
  Watermark wm(size, size);
  const int c2 = size - 1;  // doubled center, so the ring is symmetric
  const int outer = size * 3 / 8;
  const int inner = size / 4;
  for (int y = 0; y < size; ++y) {
    for (int x = 0; x < size; ++x) {
      const int dx = 2 * x - c2;
      const int dy = 2 * y - c2;
      const int r2 = dx * dx + dy * dy;
      const bool frame = x < 3 || y < 3 || x >= size - 3 || y >= size - 3;
      const bool ring = r2 <= 4 * outer * outer && r2 >= 4 * inner * inner;
      const bool bar = std::abs(x - y) <= 2 && x > size / 8 && x < size * 7 / 8;
      wm.set(y, x, frame || ring || bar);
    }
  }
  return wm;
}

GrayImage random_image(int width, int height, std::uint64_t seed) {
  SplitMix64 rng(seed);
  GrayImage img(width, height);
  for (auto& p : img.pixels()) p = static_cast<std::uint8_t>(rng.next() >> 56);
  return img;
}

Watermark random_watermark(int width, int height, std::uint64_t seed) {
  SplitMix64 rng(seed);
  BitVector bits(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng.next() >> 63);
  return Watermark(width, height, std::move(bits));
}

}  // namespace chaosmark
