#pragma once

#include <cmath>
#include <numbers>

#include <Eigen/Core>

namespace chaosmark {

template <typename Scalar>
using Block8 = Eigen::Matrix<Scalar, 8, 8>;

/// Orthonormal type-II DCT basis: row k holds a(k) cos((2n + 1) k pi / 16).
template <typename Scalar>
const Block8<Scalar>& dct_basis() {
  static const Block8<Scalar> basis = [] {
    Block8<Scalar> c;
    for (int k = 0; k < 8; ++k) {
      const Scalar a = k == 0 ? std::sqrt(Scalar(1) / Scalar(8)) : std::sqrt(Scalar(2) / Scalar(8));
      for (int n = 0; n < 8; ++n) {
        c(k, n) = a * std::cos(Scalar(2 * n + 1) * Scalar(k) * std::numbers::pi_v<Scalar> / Scalar(16));
      }
    }
    return c;
  }();
  return basis;
}

/// Separable 2-D forward transform, rows are y.
template <typename Scalar>
Block8<Scalar> dct8x8(const Block8<Scalar>& block) {
  const auto& c = dct_basis<Scalar>();
  return c * block * c.transpose();
}

template <typename Scalar>
Block8<Scalar> idct8x8(const Block8<Scalar>& coeffs) {
  const auto& c = dct_basis<Scalar>();
  return c.transpose() * coeffs * c;
}

/// Luminance quantization table from Annex K of the JPEG standard.
inline const Block8<double>& standard_luminance_table() {
  static const Block8<double> table = (Block8<double>() <<
      16, 11, 10, 16, 24, 40, 51, 61,
      12, 12, 14, 19, 26, 58, 60, 55,
      14, 13, 16, 24, 40, 57, 69, 56,
      14, 17, 22, 29, 51, 87, 80, 62,
      18, 22, 37, 56, 68, 109, 103, 77,
      24, 35, 55, 64, 81, 104, 113, 92,
      49, 64, 78, 87, 103, 121, 120, 101,
      72, 92, 95, 98, 112, 100, 103, 99).finished();
  return table;
}

}  // namespace chaosmark
