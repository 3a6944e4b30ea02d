#include "chaosmark/chaos.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "chaosmark/errors.hpp"

namespace chaosmark {

namespace {

double burned_in(const SecretKey& key, double x) {
  for (std::uint32_t i = 0; i < key.burn_in; ++i) x = logistic_next(key.mu, x);
  return x;
}

bool degenerate_seed(double x) { return !(x > 0.0 && x < 1.0) || x == 0.25 || x == 0.5 || x == 0.75; }

BitVector draw_bits(double mu, double x, std::size_t length) {
  BitVector out(length);
  for (auto& bit : out) {
    x = logistic_next(mu, x);
    bit = x >= 0.5 ? 1 : 0;
  }
  return out;
}

}  // namespace

void SecretKey::validate() const {
  if (!(mu > 3.57 && mu <= 4.0)) {
    throw PreconditionError("mu must lie in (3.57, 4], got " + std::to_string(mu));
  }
  if (!(u0 > 0.0 && u0 < 1.0) || u0 == 0.25 || u0 == 0.5 || u0 == 0.75) {
    throw PreconditionError("u0 must lie in (0, 1) and avoid 0.25, 0.5, 0.75; got " + std::to_string(u0));
  }
  if (mix_iters < 1) {
    throw PreconditionError("mix_iters must be at least 1");
  }
}

BitStream keystream(const SecretKey& key, std::size_t length) {
  // binary64 only; the build turns off FMA contraction so keys reproduce.
  return {draw_bits(key.mu, burned_in(key, key.u0), length), BitStream::Origin::Keystream};
}

std::uint64_t msc_digest(std::span<const std::uint8_t> msc) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a
  for (const std::uint8_t b : msc) h = (h ^ (b & 1u)) * 0x100000001B3ull;
  h ^= msc.size();
  h = (h ^ (h >> 30)) * 0xBF58476D1CE4E5B9ull;
  h = (h ^ (h >> 27)) * 0x94D049BB133111EBull;
  return h ^ (h >> 31);
}

double authenticated_seed(const SecretKey& key, std::span<const std::uint8_t> msc) {
  const double shift = (static_cast<double>(msc_digest(msc) >> 12) + 0.5) * 0x1.0p-52;
  double x = key.u0 + shift;
  if (x >= 1.0) x -= 1.0;
  return degenerate_seed(x) ? key.u0 : x;
}

int group_width(std::size_t n) {
  if (n < 1) throw PreconditionError("system size must be at least 1");
  return std::max(1, static_cast<int>(std::bit_width(n - 1)));
}

BitVector strategy_source(const SecretKey& key, std::optional<std::span<const std::uint8_t>> msc, std::size_t n,
                          std::size_t count) {
  const std::size_t length = count * static_cast<std::size_t>(group_width(n));
  if (!key.authenticated) return keystream(key, length).bits;
  if (!msc || msc->empty()) {
    throw PreconditionError("authenticated strategy needs the carrier's MSC stream");
  }
  BitVector source = draw_bits(key.mu, burned_in(key, authenticated_seed(key, *msc)), length);
  for (std::size_t i = 0; i < source.size(); ++i) source[i] ^= (*msc)[i % msc->size()];
  return source;
}

StrategyStream strategy_from_bits(std::span<const std::uint8_t> source, std::size_t n, std::size_t count) {
  const auto width = static_cast<std::size_t>(group_width(n));
  if (source.size() < count * width) {
    throw PreconditionError("need " + std::to_string(count * width) + " source bits, have " +
                            std::to_string(source.size()));
  }
  StrategyStream out{std::vector<std::uint32_t>(count), n};
  for (std::size_t k = 0; k < count; ++k) {
    std::uint64_t g = 0;
    for (std::size_t b = 0; b < width; ++b) g = (g << 1) | source[k * width + b];
    out.values[k] = static_cast<std::uint32_t>(g % n) + 1;
  }
  return out;
}

StrategyStream derive_strategy(const SecretKey& key, std::optional<std::span<const std::uint8_t>> msc, std::size_t n,
                               std::size_t count) {
  return strategy_from_bits(strategy_source(key, msc, n, count), n, count);
}

BitVector vectorial_negation(std::span<const std::uint8_t> x) {
  BitVector out(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) out[i] = x[i] ? 0 : 1;
  return out;
}

Watermark mix_watermark(const Watermark& watermark, std::span<const std::uint32_t> strategy) {
  ChaoticState state{watermark.bits(), 0};
  const VectorialNegation f0;
  for (const std::uint32_t s : strategy) state = chaotic_iterate(std::move(state), s, f0);
  return Watermark(watermark.width(), watermark.height(), std::move(state.x));
}

Watermark mix_watermark(const Watermark& watermark, const StrategyStream& strategy) {
  if (strategy.n != watermark.size()) {
    throw PreconditionError("strategy indexes " + std::to_string(strategy.n) + " cells, watermark has " +
                            std::to_string(watermark.size()));
  }
  return mix_watermark(watermark, std::span<const std::uint32_t>(strategy.values));
}

}  // namespace chaosmark
