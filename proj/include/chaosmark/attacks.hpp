#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "chaosmark/bitplane.hpp"

namespace chaosmark {

enum class AttackKind { Zeroing, Rotation, Jpeg, Gaussian };
enum class Anchor { Center, TopLeft };
enum class Interpolation { Bilinear, Nearest };

/// How a JPEG attack level maps onto the quantizer. Quality reads level r as
/// libjpeg quality 100 - r with its integer table scaling; Linear multiplies
/// the standard table by r.
enum class JpegScaling { Quality, Linear };

std::string_view to_string(AttackKind kind);
std::optional<AttackKind> parse_attack_kind(std::string_view name);

/// One attack with its parameter: square side in pixels, angle in degrees,
/// compression level, or noise standard deviation.
struct AttackSpec {
  AttackKind kind = AttackKind::Zeroing;
  double parameter = 1.0;
  std::uint64_t seed = 0;
  Anchor anchor = Anchor::Center;
  Interpolation interpolation = Interpolation::Nearest;
  JpegScaling jpeg_scaling = JpegScaling::Quality;

  /// Throws PreconditionError if the parameter is out of range for `image`.
  void validate(const GrayImage& image) const;
};

GrayImage attack_zeroing(const GrayImage& image, int side, Anchor anchor = Anchor::Center);

/// Single rotation by `degrees` about ((w-1)/2, (h-1)/2), clamped sampling.
GrayImage rotate(const GrayImage& image, double degrees, Interpolation interpolation = Interpolation::Nearest);

/// rotate(-angle) after rotate(+angle), each quantized to 8 bits.
GrayImage attack_rotation(const GrayImage& image, double degrees,
                          Interpolation interpolation = Interpolation::Nearest);

/// Quantizer of the JPEG simulation: `base` scaled by `scale`. Integer
/// tables round to the nearest step in [1, 255] as libjpeg does; otherwise
/// the scaled entries are only floored at 1.
struct Dct8x8Tables {
  Eigen::Matrix<double, 8, 8> base;
  double scale = 1.0;
  bool integer_steps = false;

  /// Standard luminance table times `ratio`.
  static Dct8x8Tables linear(double ratio);
  /// libjpeg quality in [1, 100]: scale 50/q below 50, (200 - 2q)/100 above.
  static Dct8x8Tables quality(int quality);

  Eigen::Matrix<double, 8, 8> quantizer() const;
};

/// Edge-replicated padding to 8x8 blocks, level shift, DCT, quantize,
/// dequantize, inverse DCT, clamp, crop. No entropy coding.
GrayImage jpeg_round_trip(const GrayImage& image, const Dct8x8Tables& tables);

/// jpeg_round_trip at compression level `level` (>= 1; below 100 for Quality).
GrayImage attack_jpeg(const GrayImage& image, double level, JpegScaling scaling = JpegScaling::Quality);

/// Adds rounded N(0, sigma^2) noise drawn from SplitMix64 via Box-Muller.
GrayImage attack_gaussian(const GrayImage& image, double sigma, std::uint64_t seed);

GrayImage apply_attack(const GrayImage& image, const AttackSpec& spec);

/// SplitMix64 (Steele, Lea, Flood 2014): state += 0x9E3779B97F4A7C15, then
/// xor-shift-multiply with 0xBF58476D1CE4E5B9 and 0x94D049BB133111EB.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }

  /// Top 53 bits scaled into [0, 1).
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

 private:
  std::uint64_t state_;
};

/// Standard normals in pairs from the basic Box-Muller transform:
/// u1 in (0, 1], u2 in [0, 1), z0 = r cos(2 pi u2), z1 = r sin(2 pi u2).
class BoxMuller {
 public:
  explicit BoxMuller(std::uint64_t seed) : rng_(seed) {}

  double next();

 private:
  SplitMix64 rng_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace chaosmark
