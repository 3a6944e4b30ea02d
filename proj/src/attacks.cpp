#include "chaosmark/attacks.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "chaosmark/dct.hpp"
#include "chaosmark/errors.hpp"

namespace chaosmark {

namespace {

std::uint8_t quantize(double v) {
  return static_cast<std::uint8_t>(std::clamp(std::round(v), 0.0, 255.0));
}

GrayImage from_real(const Raster<double>& real) {
  return GrayImage(Raster<std::uint8_t>(real.unaryExpr([](double v) { return quantize(v); })));
}

double sample_bilinear(const Raster<double>& src, double x, double y) {
  const Eigen::Index w = src.cols();
  const Eigen::Index h = src.rows();
  x = std::clamp(x, 0.0, static_cast<double>(w - 1));
  y = std::clamp(y, 0.0, static_cast<double>(h - 1));
  const auto x0 = static_cast<Eigen::Index>(std::floor(x));
  const auto y0 = static_cast<Eigen::Index>(std::floor(y));
  const Eigen::Index x1 = std::min(x0 + 1, w - 1);
  const Eigen::Index y1 = std::min(y0 + 1, h - 1);
  const double fx = x - static_cast<double>(x0);
  const double fy = y - static_cast<double>(y0);
  const double top = (1 - fx) * src(y0, x0) + fx * src(y0, x1);
  const double bottom = (1 - fx) * src(y1, x0) + fx * src(y1, x1);
  return (1 - fy) * top + fy * bottom;
}

double sample_nearest(const Raster<double>& src, double x, double y) {
  const auto xi = std::clamp<Eigen::Index>(std::lround(x), 0, src.cols() - 1);
  const auto yi = std::clamp<Eigen::Index>(std::lround(y), 0, src.rows() - 1);
  return src(yi, xi);
}

}  // namespace

std::string_view to_string(AttackKind kind) {
  switch (kind) {
    case AttackKind::Zeroing: return "zeroing";
    case AttackKind::Rotation: return "rotation";
    case AttackKind::Jpeg: return "jpeg";
    case AttackKind::Gaussian: return "gaussian";
  }
  return "unknown";
}

std::optional<AttackKind> parse_attack_kind(std::string_view name) {
  for (auto kind : {AttackKind::Zeroing, AttackKind::Rotation, AttackKind::Jpeg, AttackKind::Gaussian}) {
    if (to_string(kind) == name) return kind;
  }
  return std::nullopt;
}

void AttackSpec::validate(const GrayImage& image) const {
  if (!(parameter > 0.0) || !std::isfinite(parameter)) {
    throw PreconditionError(std::string(to_string(kind)) + " parameter must be positive");
  }
  switch (kind) {
    case AttackKind::Zeroing:
      if (parameter != std::floor(parameter) || parameter > std::min(image.width(), image.height())) {
        throw PreconditionError("zeroing side must be an integer in [1, " +
                                std::to_string(std::min(image.width(), image.height())) + "]");
      }
      break;
    case AttackKind::Jpeg:
      if (parameter < 1.0) throw PreconditionError("jpeg level must be at least 1");
      if (jpeg_scaling == JpegScaling::Quality && (parameter >= 100.0 || parameter != std::floor(parameter))) {
        throw PreconditionError("jpeg level must be an integer in [1, 99] under quality scaling");
      }
      break;
    case AttackKind::Rotation:
    case AttackKind::Gaussian:
      break;
  }
}

GrayImage attack_zeroing(const GrayImage& image, int side, Anchor anchor) {
  if (side < 1 || side > std::min(image.width(), image.height())) {
    throw PreconditionError("zeroing side " + std::to_string(side) + " out of range");
  }
  const int x0 = anchor == Anchor::Center ? (image.width() - side) / 2 : 0;
  const int y0 = anchor == Anchor::Center ? (image.height() - side) / 2 : 0;
  Raster<std::uint8_t> out = image.raster();
  out.block(y0, x0, side, side).setZero();
  return GrayImage(std::move(out));
}

GrayImage rotate(const GrayImage& image, double degrees, Interpolation interpolation) {
  const Raster<double> src = image.to_real();
  const double theta = degrees * std::numbers::pi / 180.0;
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double cx = (image.width() - 1) / 2.0;
  const double cy = (image.height() - 1) / 2.0;
  Raster<double> dst(src.rows(), src.cols());
  for (Eigen::Index y = 0; y < dst.rows(); ++y) {
    for (Eigen::Index x = 0; x < dst.cols(); ++x) {
      // Inverse mapping: rotate the destination point back by -theta.
      const double dx = static_cast<double>(x) - cx;
      const double dy = static_cast<double>(y) - cy;
      const double sx = cx + c * dx + s * dy;
      const double sy = cy - s * dx + c * dy;
      dst(y, x) = interpolation == Interpolation::Bilinear ? sample_bilinear(src, sx, sy)
                                                           : sample_nearest(src, sx, sy);
    }
  }
  return from_real(dst);
}

GrayImage attack_rotation(const GrayImage& image, double degrees, Interpolation interpolation) {
  if (degrees == 0.0) return image;
  return rotate(rotate(image, degrees, interpolation), -degrees, interpolation);
}

Dct8x8Tables Dct8x8Tables::linear(double ratio) { return {standard_luminance_table(), ratio, false}; }

Dct8x8Tables Dct8x8Tables::quality(int quality) {
  if (quality < 1 || quality > 100) throw PreconditionError("jpeg quality must lie in [1, 100]");
  const int percent = quality < 50 ? 5000 / quality : 200 - 2 * quality;
  return {standard_luminance_table(), percent / 100.0, true};
}

Block8<double> Dct8x8Tables::quantizer() const {
  const Block8<double> scaled = base * scale;
  if (!integer_steps) return scaled.cwiseMax(1.0);
  return scaled.unaryExpr([](double q) { return std::clamp(std::floor(q + 0.5), 1.0, 255.0); });
}

GrayImage jpeg_round_trip(const GrayImage& image, const Dct8x8Tables& tables) {
  const Eigen::Index h = image.height();
  const Eigen::Index w = image.width();
  const Eigen::Index ph = (h + 7) / 8 * 8;
  const Eigen::Index pw = (w + 7) / 8 * 8;

  Raster<double> padded(ph, pw);
  for (Eigen::Index y = 0; y < ph; ++y) {
    for (Eigen::Index x = 0; x < pw; ++x) {
      padded(y, x) = image(static_cast<int>(std::min(y, h - 1)), static_cast<int>(std::min(x, w - 1))) - 128.0;
    }
  }

  const Block8<double> quantizer = tables.quantizer();
  for (Eigen::Index by = 0; by < ph; by += 8) {
    for (Eigen::Index bx = 0; bx < pw; bx += 8) {
      const Block8<double> block = padded.block<8, 8>(by, bx);
      const Block8<double> levels = dct8x8(block).cwiseQuotient(quantizer).unaryExpr([](double v) {
        return std::round(v);
      });
      padded.block<8, 8>(by, bx) = idct8x8<double>(levels.cwiseProduct(quantizer));
    }
  }
  return from_real((padded.topLeftCorner(h, w).array() + 128.0).matrix());
}

GrayImage attack_jpeg(const GrayImage& image, double level, JpegScaling scaling) {
  if (!(level >= 1.0)) throw PreconditionError("jpeg level must be at least 1");
  if (scaling == JpegScaling::Linear) return jpeg_round_trip(image, Dct8x8Tables::linear(level));
  if (level >= 100.0 || level != std::floor(level)) {
    throw PreconditionError("jpeg level must be an integer in [1, 99] under quality scaling");
  }
  return jpeg_round_trip(image, Dct8x8Tables::quality(100 - static_cast<int>(level)));
}

double BoxMuller::next() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  const double u1 = 1.0 - rng_.uniform();
  const double u2 = rng_.uniform();
  const double r = std::sqrt(-2.0 * std::log(u1));
  const double phi = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(phi);
  has_spare_ = true;
  return r * std::cos(phi);
}

GrayImage attack_gaussian(const GrayImage& image, double sigma, std::uint64_t seed) {
  if (!(sigma > 0.0)) throw PreconditionError("noise standard deviation must be positive");
  BoxMuller normal(seed);
  GrayImage out = image;
  for (std::uint8_t& p : out.pixels()) p = quantize(p + sigma * normal.next());
  return out;
}

GrayImage apply_attack(const GrayImage& image, const AttackSpec& spec) {
  spec.validate(image);
  switch (spec.kind) {
    case AttackKind::Zeroing: return attack_zeroing(image, static_cast<int>(spec.parameter), spec.anchor);
    case AttackKind::Rotation: return attack_rotation(image, spec.parameter, spec.interpolation);
    case AttackKind::Jpeg: return attack_jpeg(image, spec.parameter, spec.jpeg_scaling);
    case AttackKind::Gaussian: return attack_gaussian(image, spec.parameter, spec.seed);
  }
  throw PreconditionError("unknown attack");
}

}  // namespace chaosmark
