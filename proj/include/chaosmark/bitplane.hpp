#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Core>

namespace chaosmark {

/// Row-major dense raster. Every image-like type in the library is one of these.
template <typename Scalar>
using Raster = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

/// One Boolean per entry, stored as 0/1 bytes so it can be viewed as a span.
using BitVector = std::vector<std::uint8_t>;

/// 8-bit grayscale carrier. Rows are y, columns are x.
class GrayImage {
 public:
  GrayImage(int width, int height, std::uint8_t fill = 0);
  GrayImage(int width, int height, std::span<const std::uint8_t> pixels);
  explicit GrayImage(Raster<std::uint8_t> pixels);

  int width() const noexcept { return static_cast<int>(pixels_.cols()); }
  int height() const noexcept { return static_cast<int>(pixels_.rows()); }
  std::size_t pixel_count() const noexcept { return static_cast<std::size_t>(pixels_.size()); }

  std::uint8_t operator()(int y, int x) const { return pixels_(y, x); }
  std::uint8_t& operator()(int y, int x) { return pixels_(y, x); }

  std::span<const std::uint8_t> pixels() const noexcept { return {pixels_.data(), pixel_count()}; }
  std::span<std::uint8_t> pixels() noexcept { return {pixels_.data(), pixel_count()}; }

  const Raster<std::uint8_t>& raster() const noexcept { return pixels_; }

  /// Pixels as doubles, for the numeric kernels.
  Raster<double> to_real() const { return pixels_.cast<double>(); }

  friend bool operator==(const GrayImage& a, const GrayImage& b) {
    return a.pixels_.rows() == b.pixels_.rows() && a.pixels_.cols() == b.pixels_.cols() &&
           a.pixels_ == b.pixels_;
  }

 private:
  Raster<std::uint8_t> pixels_;
};

/// Rectangular binary bitmap. `bits` is row-major, one 0/1 entry per cell.
class Watermark {
 public:
  Watermark(int width, int height);
  Watermark(int width, int height, BitVector bits);

  int width() const noexcept { return width_; }
  int height() const noexcept { return height_; }
  std::size_t size() const noexcept { return bits_.size(); }

  bool operator()(int y, int x) const { return bits_[index(y, x)] != 0; }
  void set(int y, int x, bool value) { bits_[index(y, x)] = value ? 1 : 0; }

  const BitVector& bits() const noexcept { return bits_; }

  friend bool operator==(const Watermark&, const Watermark&) = default;

 private:
  std::size_t index(int y, int x) const {
    return static_cast<std::size_t>(y) * static_cast<std::size_t>(width_) + static_cast<std::size_t>(x);
  }

  int width_;
  int height_;
  BitVector bits_;
};

/// Split of the eight bits of a pixel into most significant coefficients,
/// least significant coefficients, and bits left alone.
struct BitPlaneLayout {
  std::uint8_t msc_mask;
  std::uint8_t lsc_mask;
  std::uint8_t unused_mask;

  /// Four MSBs are MSCs, the next three are LSCs, bit 0 is unused.
  static BitPlaneLayout standard() noexcept { return {0xF0, 0x0E, 0x01}; }

  /// Validates disjointness; the unused mask is the complement of the other two.
  static BitPlaneLayout make(std::uint8_t msc_mask, std::uint8_t lsc_mask);

  int msc_bits_per_pixel() const noexcept;
  int lsc_bits_per_pixel() const noexcept;

  friend bool operator==(const BitPlaneLayout&, const BitPlaneLayout&) = default;
};

struct BitStream {
  enum class Origin { Msc, Lsc, Keystream, Watermark, Source };

  BitVector bits;
  Origin origin = Origin::Source;

  std::size_t size() const noexcept { return bits.size(); }
  bool operator[](std::size_t i) const { return bits[i] != 0; }
};

/// Bits selected by `mask`, pixel by pixel in row-major order, MSB first.
BitVector extract_bits(const GrayImage& image, std::uint8_t mask);

BitStream extract_msc(const GrayImage& image, const BitPlaneLayout& layout);
BitStream extract_lsc(const GrayImage& image, const BitPlaneLayout& layout);

/// Replaces exactly the LSC bits of every pixel with `stream`, in the order
/// extract_lsc emits them. Throws PreconditionError on a length mismatch.
GrayImage inject_lsc(const GrayImage& image, const BitPlaneLayout& layout, std::span<const std::uint8_t> stream);

/// Number of LSC bits of an image under a layout (the M of the U-sequence).
std::size_t lsc_capacity(const GrayImage& image, const BitPlaneLayout& layout);

}  // namespace chaosmark
