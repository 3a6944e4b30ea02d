#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

#include "chaosmark/bitplane.hpp"
#include "chaosmark/chaos.hpp"

namespace chaosmark {

/// LSC indices in [0, m) chosen by the doubling recurrence
///   U^0 = S^0 mod m,  U^{n+1} = (S^{n+1} + 2 U^n + n) mod m.
struct USequence {
  std::vector<std::size_t> values;
  std::size_t m = 0;
};

USequence u_sequence(const StrategyStream& strategy, std::size_t m, std::size_t count);

enum class EmbedMode { Substitute, Negate };
enum class CollisionPolicy { Probe, Overwrite };

struct EmbedConfig {
  EmbedMode mode = EmbedMode::Substitute;
  BitPlaneLayout layout = BitPlaneLayout::standard();
  CollisionPolicy collision_policy = CollisionPolicy::Probe;
};

/// Occupancy of LSC positions for one embed or extract call.
class PositionSet {
 public:
  explicit PositionSet(std::size_t m) : used_(m, 0) {}

  std::size_t capacity() const noexcept { return used_.size(); }
  std::size_t size() const noexcept { return count_; }
  bool contains(std::size_t i) const { return used_[i] != 0; }
  void insert(std::size_t i);

 private:
  std::vector<std::uint8_t> used_;
  std::size_t count_ = 0;
};

/// Probe: smallest (u + j) mod m not yet used, which is then recorded.
/// Overwrite: u itself. Throws CapacityError when probing finds no free slot.
std::size_t resolve_position(std::size_t u, PositionSet& used, CollisionPolicy policy);

/// Everything both sides of the channel regenerate from the key and the MSCs.
struct EmbeddingPlan {
  StrategyStream strategy;           // length max(mix_iters, bits)
  std::size_t mix_iters = 0;         // prefix of `strategy` used for mixing
  std::vector<std::size_t> positions;  // resolved LSC index of bit k
  std::size_t lsc_count = 0;         // M
};

EmbeddingPlan plan_embedding(const GrayImage& image, const SecretKey& key, const EmbedConfig& config,
                             std::size_t bits);

/// Substitute mode writes the mixed watermark into the chosen LSCs. Negate
/// mode runs chaotic iterations over the carrier's whole LSC vector along the
/// U-sequence; step k applies f0 when mixed bit k is set and the identity
/// otherwise. MSCs are never touched.
GrayImage embed(const GrayImage& carrier, const Watermark& watermark, const SecretKey& key,
                const EmbedConfig& config = {});

struct WatermarkDims {
  int width = 0;
  int height = 0;
};

/// Blind in substitute mode. Negate mode needs the original carrier and
/// recovers the bits from where the two LSC vectors differ.
Watermark extract(const GrayImage& watermarked, const SecretKey& key, const EmbedConfig& config, WatermarkDims dims,
                  const GrayImage* original = nullptr);

struct SimilarityReport {
  std::size_t matching_bits = 0;
  std::size_t total_bits = 0;
  double percentage = 0.0;
};

SimilarityReport similarity(const Watermark& a, const Watermark& b);

/// Peak signal-to-noise ratio in dB; +infinity for identical images.
double psnr(const GrayImage& a, const GrayImage& b);

}  // namespace chaosmark
