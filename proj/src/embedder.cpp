#include "chaosmark/embedder.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "chaosmark/errors.hpp"

namespace chaosmark {

USequence u_sequence(const StrategyStream& strategy, std::size_t m, std::size_t count) {
  if (m < 1) throw PreconditionError("LSC count must be at least 1");
  if (strategy.size() < count) {
    throw PreconditionError("U-sequence of length " + std::to_string(count) + " needs as many strategy elements, have " +
                            std::to_string(strategy.size()));
  }
  USequence out{std::vector<std::size_t>(count), m};
  if (count == 0) return out;
  // Every operand is reduced below m before combining, so 64-bit never overflows.
  std::uint64_t u = strategy[0] % m;
  out.values[0] = u;
  for (std::size_t n = 0; n + 1 < count; ++n) {
    u = (strategy[n + 1] % m + 2 * u + n % m) % m;
    out.values[n + 1] = u;
  }
  return out;
}

void PositionSet::insert(std::size_t i) {
  if (!used_[i]) {
    used_[i] = 1;
    ++count_;
  }
}

std::size_t resolve_position(std::size_t u, PositionSet& used, CollisionPolicy policy) {
  const std::size_t m = used.capacity();
  if (u >= m) throw PreconditionError("LSC index " + std::to_string(u) + " outside [0, " + std::to_string(m) + ")");
  if (policy == CollisionPolicy::Overwrite) {
    used.insert(u);
    return u;
  }
  if (used.size() >= m) {
    throw CapacityError("all " + std::to_string(m) + " LSC positions are taken");
  }
  std::size_t i = u;
  while (used.contains(i)) i = (i + 1 == m) ? 0 : i + 1;
  used.insert(i);
  return i;
}

EmbeddingPlan plan_embedding(const GrayImage& image, const SecretKey& key, const EmbedConfig& config,
                             std::size_t bits) {
  key.validate();
  if (bits < 1) throw PreconditionError("watermark must have at least one bit");
  const std::size_t m = lsc_capacity(image, config.layout);
  const bool needs_room = config.collision_policy == CollisionPolicy::Probe || config.mode == EmbedMode::Substitute;
  if (needs_room && bits > m) {
    throw CapacityError("watermark of N=" + std::to_string(bits) + " bits exceeds LSC capacity M=" +
                        std::to_string(m));
  }
  EmbeddingPlan plan;
  plan.lsc_count = m;
  plan.mix_iters = key.mix_iters;
  std::optional<std::span<const std::uint8_t>> msc_view;
  BitVector msc;
  if (key.authenticated) {
    msc = extract_msc(image, config.layout).bits;
    if (msc.empty()) throw PreconditionError("authenticated mode needs a layout with MSC bits");
    msc_view = std::span<const std::uint8_t>(msc);
  }
  plan.strategy = derive_strategy(key, msc_view, bits, std::max(key.mix_iters, bits));
  const USequence u = u_sequence(plan.strategy, m, bits);
  PositionSet used(m);
  plan.positions.reserve(bits);
  for (const std::size_t uk : u.values) plan.positions.push_back(resolve_position(uk, used, config.collision_policy));
  return plan;
}

namespace {

std::span<const std::uint32_t> mixing_prefix(const EmbeddingPlan& plan) {
  return std::span<const std::uint32_t>(plan.strategy.values).first(plan.mix_iters);
}

}  // namespace

GrayImage embed(const GrayImage& carrier, const Watermark& watermark, const SecretKey& key,
                const EmbedConfig& config) {
  const EmbeddingPlan plan = plan_embedding(carrier, key, config, watermark.size());
  const Watermark mixed = mix_watermark(watermark, mixing_prefix(plan));
  BitVector lsc = extract_lsc(carrier, config.layout).bits;

  if (config.mode == EmbedMode::Substitute) {
    for (std::size_t k = 0; k < plan.positions.size(); ++k) lsc[plan.positions[k]] = mixed.bits()[k];
    return inject_lsc(carrier, config.layout, lsc);
  }

  ChaoticState state{std::move(lsc), 0};
  const VectorialNegation f0;
  const IdentityMap identity;
  for (std::size_t k = 0; k < plan.positions.size(); ++k) {
    const auto s = static_cast<std::uint32_t>(plan.positions[k] + 1);
    state = mixed.bits()[k] ? chaotic_iterate(std::move(state), s, f0)
                            : chaotic_iterate(std::move(state), s, identity);
  }
  return inject_lsc(carrier, config.layout, state.x);
}

Watermark extract(const GrayImage& watermarked, const SecretKey& key, const EmbedConfig& config, WatermarkDims dims,
                  const GrayImage* original) {
  if (dims.width < 1 || dims.height < 1) throw PreconditionError("watermark dimensions must be positive");
  if (config.mode == EmbedMode::Negate) {
    if (!original) throw PreconditionError("negate-mode extraction needs the original carrier");
    if (original->width() != watermarked.width() || original->height() != watermarked.height()) {
      throw PreconditionError("original and watermarked images differ in size");
    }
  }
  const std::size_t bits = static_cast<std::size_t>(dims.width) * static_cast<std::size_t>(dims.height);
  const EmbeddingPlan plan = plan_embedding(watermarked, key, config, bits);
  const BitVector lsc = extract_lsc(watermarked, config.layout).bits;

  BitVector mixed(bits);
  if (config.mode == EmbedMode::Substitute) {
    for (std::size_t k = 0; k < bits; ++k) mixed[k] = lsc[plan.positions[k]];
  } else {
    const BitVector reference = extract_lsc(*original, config.layout).bits;
    for (std::size_t k = 0; k < bits; ++k) {
      mixed[k] = lsc[plan.positions[k]] ^ reference[plan.positions[k]];
    }
  }
  return mix_watermark(Watermark(dims.width, dims.height, std::move(mixed)), mixing_prefix(plan));
}

SimilarityReport similarity(const Watermark& a, const Watermark& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw PreconditionError("cannot compare watermarks of different dimensions");
  }
  SimilarityReport r;
  r.total_bits = a.size();
  for (std::size_t i = 0; i < a.size(); ++i) r.matching_bits += a.bits()[i] == b.bits()[i];
  r.percentage = 100.0 * static_cast<double>(r.matching_bits) / static_cast<double>(r.total_bits);
  return r;
}

double psnr(const GrayImage& a, const GrayImage& b) {
  if (a.width() != b.width() || a.height() != b.height()) {
    throw PreconditionError("cannot compare images of different dimensions");
  }
  const double mse = (a.to_real() - b.to_real()).squaredNorm() / static_cast<double>(a.pixel_count());
  if (mse == 0.0) return std::numeric_limits<double>::infinity();
  return 10.0 * std::log10(255.0 * 255.0 / mse);
}

}  // namespace chaosmark
