#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "chaosmark/bitplane.hpp"

namespace chaosmark {

/// Private key: logistic-map parameters plus the schedule lengths.
struct SecretKey {
  double mu = 3.99;
  double u0 = 0.3183;
  std::uint32_t burn_in = 100;
  std::size_t mix_iters = 8192;
  bool authenticated = false;

  /// Throws PreconditionError unless mu is in (3.57, 4], u0 is in (0, 1)
  /// away from the degenerate points 0.25/0.5/0.75, and mix_iters >= 1.
  void validate() const;

  friend bool operator==(const SecretKey&, const SecretKey&) = default;
};

/// Default mixing length for a watermark of `bits` cells: two visits per cell.
inline std::size_t default_mix_iters(std::size_t bits) { return 2 * bits; }

/// One step of the logistic map, mu * x * (1 - x), in plain binary64.
inline double logistic_next(double mu, double x) { return mu * x * (1.0 - x); }

/// Discards `key.burn_in` iterates from u0, then emits one bit per iterate
/// (1 iff the iterate is >= 0.5).
BitStream keystream(const SecretKey& key, std::size_t length);

/// Cell indices in [1, n] that schedule chaotic iterations.
struct StrategyStream {
  std::vector<std::uint32_t> values;
  std::size_t n = 0;

  std::size_t size() const noexcept { return values.size(); }
  std::uint32_t operator[](std::size_t k) const { return values[k]; }
};

/// Bits consumed per strategy element: ceil(log2 n), at least 1.
int group_width(std::size_t n);

/// 64-bit FNV-1a over the MSC bits, finished with the SplitMix64 mixer.
/// Each step is a bijection of the state, so streams of equal length that
/// differ in a single bit always digest differently.
std::uint64_t msc_digest(std::span<const std::uint8_t> msc);

/// u0 shifted (mod 1) by the digest mapped into (0, 1); falls back to u0
/// on the degenerate points.
double authenticated_seed(const SecretKey& key, std::span<const std::uint8_t> msc);

/// Source bits for strategy derivation: count * group_width(n) bits.
/// Unauthenticated, the keystream itself. Authenticated, the keystream
/// re-seeded at authenticated_seed(), XORed with the MSC stream cycled to
/// length.
BitVector strategy_source(const SecretKey& key, std::optional<std::span<const std::uint8_t>> msc, std::size_t n,
                          std::size_t count);

/// Groups source bits big-endian, group_width(n) at a time; element = (g mod n) + 1.
StrategyStream strategy_from_bits(std::span<const std::uint8_t> source, std::size_t n, std::size_t count);

/// Throws PreconditionError when the key is authenticated and `msc` is absent or empty.
StrategyStream derive_strategy(const SecretKey& key, std::optional<std::span<const std::uint8_t>> msc, std::size_t n,
                               std::size_t count);

/// State x^n of the iterations together with its step counter n.
struct ChaoticState {
  BitVector x;
  std::size_t step = 0;
};

// Iterate functions are evaluated one component at a time; only the
// component selected by the strategy is ever needed.
struct VectorialNegation {
  std::uint8_t operator()(std::span<const std::uint8_t> x, std::size_t i) const { return x[i] ? 0 : 1; }
};

struct IdentityMap {
  std::uint8_t operator()(std::span<const std::uint8_t> x, std::size_t i) const { return x[i]; }
};

/// Replaces component s-1 with (f(x))_{s-1}; every other component is kept.
template <typename IterateFn>
ChaoticState chaotic_iterate(ChaoticState state, std::uint32_t s, const IterateFn& f);

BitVector vectorial_negation(std::span<const std::uint8_t> x);

/// Chaotic iterations with f0 from x^0 = watermark, one per strategy element.
/// Applying the same strategy twice restores the input.
Watermark mix_watermark(const Watermark& watermark, std::span<const std::uint32_t> strategy);
Watermark mix_watermark(const Watermark& watermark, const StrategyStream& strategy);

}  // namespace chaosmark

#include "chaosmark/detail/chaos_impl.hpp"
