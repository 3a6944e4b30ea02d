#include "chaosmark/bitplane.hpp"

#include <bit>
#include <string>

#include "chaosmark/errors.hpp"

namespace chaosmark {

namespace {

void check_dims(int width, int height) {
  if (width < 1 || height < 1) {
    throw PreconditionError("image dimensions must be positive, got " + std::to_string(width) + "x" +
                            std::to_string(height));
  }
}

std::size_t area(int width, int height) {
  return static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
}

}  // namespace

GrayImage::GrayImage(int width, int height, std::uint8_t fill) {
  check_dims(width, height);
  pixels_ = Raster<std::uint8_t>::Constant(height, width, fill);
}

GrayImage::GrayImage(int width, int height, std::span<const std::uint8_t> pixels) {
  check_dims(width, height);
  if (pixels.size() != area(width, height)) {
    throw PreconditionError("pixel count " + std::to_string(pixels.size()) + " does not match " +
                            std::to_string(width) + "x" + std::to_string(height));
  }
  pixels_ = Eigen::Map<const Raster<std::uint8_t>>(pixels.data(), height, width);
}

GrayImage::GrayImage(Raster<std::uint8_t> pixels) : pixels_(std::move(pixels)) {
  check_dims(static_cast<int>(pixels_.cols()), static_cast<int>(pixels_.rows()));
}

Watermark::Watermark(int width, int height) : width_(width), height_(height) {
  check_dims(width, height);
  bits_.assign(area(width, height), 0);
}

Watermark::Watermark(int width, int height, BitVector bits)
    : width_(width), height_(height), bits_(std::move(bits)) {
  check_dims(width, height);
  if (bits_.size() != area(width, height)) {
    throw PreconditionError("watermark bit count " + std::to_string(bits_.size()) + " does not match " +
                            std::to_string(width) + "x" + std::to_string(height));
  }
  for (auto& b : bits_) b = b ? 1 : 0;
}

BitPlaneLayout BitPlaneLayout::make(std::uint8_t msc_mask, std::uint8_t lsc_mask) {
  if ((msc_mask & lsc_mask) != 0) {
    throw PreconditionError("a bit cannot be both MSC and LSC");
  }
  if (lsc_mask == 0) {
    throw PreconditionError("layout needs at least one LSC bit");
  }
  return {msc_mask, lsc_mask, static_cast<std::uint8_t>(~(msc_mask | lsc_mask))};
}

int BitPlaneLayout::msc_bits_per_pixel() const noexcept { return std::popcount(msc_mask); }
int BitPlaneLayout::lsc_bits_per_pixel() const noexcept { return std::popcount(lsc_mask); }

BitVector extract_bits(const GrayImage& image, std::uint8_t mask) {
  BitVector out;
  out.reserve(image.pixel_count() * static_cast<std::size_t>(std::popcount(mask)));
  for (std::uint8_t p : image.pixels()) {
    for (int b = 7; b >= 0; --b) {
      if (mask & (1u << b)) out.push_back((p >> b) & 1u);
    }
  }
  return out;
}

BitStream extract_msc(const GrayImage& image, const BitPlaneLayout& layout) {
  return {extract_bits(image, layout.msc_mask), BitStream::Origin::Msc};
}

BitStream extract_lsc(const GrayImage& image, const BitPlaneLayout& layout) {
  return {extract_bits(image, layout.lsc_mask), BitStream::Origin::Lsc};
}

std::size_t lsc_capacity(const GrayImage& image, const BitPlaneLayout& layout) {
  return image.pixel_count() * static_cast<std::size_t>(layout.lsc_bits_per_pixel());
}

GrayImage inject_lsc(const GrayImage& image, const BitPlaneLayout& layout, std::span<const std::uint8_t> stream) {
  const std::size_t expected = lsc_capacity(image, layout);
  if (stream.size() != expected) {
    throw PreconditionError("LSC stream length " + std::to_string(stream.size()) + " != " +
                            std::to_string(expected));
  }
  GrayImage out = image;
  std::size_t k = 0;
  for (std::uint8_t& p : out.pixels()) {
    for (int b = 7; b >= 0; --b) {
      const unsigned bit = 1u << b;
      if (!(layout.lsc_mask & bit)) continue;
      p = static_cast<std::uint8_t>(stream[k++] ? (p | bit) : (p & ~bit));
    }
  }
  return out;
}

}  // namespace chaosmark
