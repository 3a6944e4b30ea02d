#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <tuple>
#include <limits>

#include "chaosmark/corpus.hpp"
#include "chaosmark/embedder.hpp"
#include "chaosmark/errors.hpp"

using namespace chaosmark;

namespace {

SecretKey key_for(std::uint64_t seed, std::size_t bits, bool authenticated) {
  SecretKey key;
  key.mu = 3.9 + 0.09 * static_cast<double>(seed % 11) / 10.0;
  key.u0 = 0.05 + 0.9 * static_cast<double>((seed * 7919) % 1000) / 1000.0 + 1e-4;
  key.mix_iters = default_mix_iters(bits);
  key.authenticated = authenticated;
  return key;
}

}  // namespace

TEST_CASE("u_sequence recurrence") {
  CHECK(u_sequence(StrategyStream{{5, 3}, 10}, 10, 2).values == std::vector<std::size_t>{5, 3});
  CHECK(u_sequence(StrategyStream{{1, 1, 1}, 2}, 2, 3).values == std::vector<std::size_t>{1, 1, 0});
  // U^0 reduced modulo m.
  CHECK(u_sequence(StrategyStream{{12}, 64}, 10, 1).values == std::vector<std::size_t>{2});
  CHECK_THROWS_AS(u_sequence(StrategyStream{{1}, 2}, 2, 2), PreconditionError);
  CHECK_THROWS_AS(u_sequence(StrategyStream{{1}, 2}, 0, 1), PreconditionError);
}

TEST_CASE("a change in S^0 propagates as the doubling map") {
  const std::size_t m = 1'000'000'007;
  StrategyStream a{{}, 64};
  for (std::uint32_t k = 0; k < 20; ++k) a.values.push_back(1 + (k * 37) % 64);
  StrategyStream b = a;
  b.values[0] += 1;
  const auto ua = u_sequence(a, m, 20).values;
  const auto ub = u_sequence(b, m, 20).values;
  std::uint64_t shift = 1;
  for (std::size_t n = 0; n < 20; ++n) {
    CHECK((ub[n] + m - ua[n]) % m == shift);
    shift = shift * 2 % m;
  }
  CHECK(u_sequence(a, m, 20).values == ua);
}

TEST_CASE("resolve_position") {
  PositionSet used(10);
  CHECK(resolve_position(3, used, CollisionPolicy::Probe) == 3);
  used.insert(4);
  CHECK(resolve_position(3, used, CollisionPolicy::Probe) == 5);
  CHECK(resolve_position(9, used, CollisionPolicy::Probe) == 9);
  CHECK(resolve_position(9, used, CollisionPolicy::Probe) == 0);  // wraps
  CHECK(resolve_position(3, used, CollisionPolicy::Overwrite) == 3);

  PositionSet full(4);
  for (std::size_t i = 0; i < 4; ++i) full.insert(i);
  CHECK_THROWS_AS(resolve_position(0, full, CollisionPolicy::Probe), CapacityError);
}

TEST_CASE("substitute round trip is exact, with and without authentication") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    const GrayImage carrier = random_image(32, 32, seed);
    const Watermark w = random_watermark(12, 10, seed + 100);
    for (const bool auth : {false, true}) {
      const SecretKey key = key_for(seed, w.size(), auth);
      const GrayImage marked = embed(carrier, w, key);
      CHECK(extract(marked, key, {}, {12, 10}) == w);
      CHECK(extract_msc(marked, BitPlaneLayout::standard()).bits ==
            extract_msc(carrier, BitPlaneLayout::standard()).bits);
    }
  }
}

TEST_CASE("embedding writes at most N LSC positions") {
  const GrayImage carrier = synthetic_carrier();
  const Watermark w = synthetic_logo();
  const SecretKey key = key_for(3, w.size(), false);
  const GrayImage marked = embed(carrier, w, key);
  const auto before = extract_lsc(carrier, BitPlaneLayout::standard()).bits;
  const auto after = extract_lsc(marked, BitPlaneLayout::standard()).bits;
  std::size_t changed = 0;
  for (std::size_t i = 0; i < before.size(); ++i) changed += before[i] != after[i];
  CHECK(changed <= 4096);
  CHECK(changed > 0);
  const auto plan = plan_embedding(carrier, key, {}, w.size());
  std::vector<std::size_t> sorted = plan.positions;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  CHECK(plan.lsc_count == 196608);
  CHECK(psnr(carrier, marked) >= 37.0);
}

TEST_CASE("negate mode is self-inverse and extracts with the original") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const GrayImage carrier = random_image(16, 16, seed);
    const Watermark w = random_watermark(8, 8, seed + 7);
    for (const bool auth : {false, true}) {
      const SecretKey key = key_for(seed + 50, w.size(), auth);
      const EmbedConfig cfg{EmbedMode::Negate, BitPlaneLayout::standard(), CollisionPolicy::Probe};
      const GrayImage once = embed(carrier, w, key, cfg);
      CHECK(embed(once, w, key, cfg) == carrier);
      CHECK(extract(once, key, cfg, {8, 8}, &carrier) == w);
      CHECK_THROWS_AS(extract(once, key, cfg, {8, 8}), PreconditionError);
    }
  }
}

TEST_CASE("overwrite policy is paper-faithful and still self-inverse in negate mode") {
  const GrayImage carrier = random_image(8, 8, 1);
  const Watermark w = random_watermark(12, 12, 2);  // 144 bits into 192 LSCs: collisions likely
  const SecretKey key = key_for(9, w.size(), false);
  const EmbedConfig neg{EmbedMode::Negate, BitPlaneLayout::standard(), CollisionPolicy::Overwrite};
  CHECK(embed(embed(carrier, w, key, neg), w, key, neg) == carrier);
  const EmbedConfig sub{EmbedMode::Substitute, BitPlaneLayout::standard(), CollisionPolicy::Overwrite};
  const auto plan = plan_embedding(carrier, key, sub, w.size());
  std::vector<std::size_t> sorted = plan.positions;
  std::sort(sorted.begin(), sorted.end());
  CHECK(std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end());
  CHECK(similarity(extract(embed(carrier, w, key, sub), key, sub, {12, 12}), w).percentage < 100.0);
}

TEST_CASE("capacity and dimension errors") {
  const GrayImage carrier(4, 4, 100);  // M = 48
  const Watermark big = random_watermark(7, 7, 1);
  const SecretKey key = key_for(1, big.size(), false);
  try {
    embed(carrier, big, key);
    FAIL("expected a capacity error");
  } catch (const CapacityError& e) {
    const std::string what = e.what();
    CHECK(what.find("N=49") != std::string::npos);
    CHECK(what.find("M=48") != std::string::npos);
  }
  CHECK_THROWS_AS(extract(carrier, key, {}, {7, 7}), CapacityError);
  CHECK_THROWS_AS(extract(carrier, key, {}, {0, 7}), PreconditionError);
}

TEST_CASE("a wrong key extracts noise") {
  const GrayImage carrier = synthetic_carrier();
  const Watermark w = synthetic_logo();
  const SecretKey key = key_for(4, w.size(), false);
  SecretKey wrong = key;
  wrong.u0 += 1e-9;
  const double pct = similarity(extract(embed(carrier, w, key), wrong, {}, {64, 64}), w).percentage;
  CHECK(pct >= 45.0);
  CHECK(pct <= 55.0);
}

TEST_CASE("authenticated extraction after one MSC flip is noise") {
  const GrayImage carrier = synthetic_carrier();
  const Watermark w = synthetic_logo();
  const SecretKey key = key_for(5, w.size(), true);
  const GrayImage marked = embed(carrier, w, key);
  CHECK(similarity(extract(marked, key, {}, {64, 64}), w).percentage == 100.0);
  for (const auto& [y, x, mask] : {std::tuple{200, 17, 0x80}, {0, 0, 0x10}, {255, 255, 0x10}, {128, 64, 0x40}}) {
    GrayImage tampered = marked;
    tampered(y, x) ^= static_cast<std::uint8_t>(mask);
    const double pct = similarity(extract(tampered, key, {}, {64, 64}), w).percentage;
    CHECK(pct <= 60.0);
    CHECK(pct >= 40.0);
  }
}

TEST_CASE("similarity") {
  const Watermark w = random_watermark(64, 64, 1);
  CHECK(similarity(w, w).percentage == 100.0);
  Watermark neg(64, 64, vectorial_negation(w.bits()));
  const auto r = similarity(w, neg);
  CHECK(r.percentage == 0.0);
  CHECK(r.total_bits == 4096);
  double total = 0;
  for (std::uint64_t s = 2; s < 102; ++s) {
    const double pct = similarity(w, random_watermark(64, 64, s)).percentage;
    CHECK(pct >= 45.0);
    CHECK(pct <= 55.0);
    total += pct;
  }
  CHECK(total / 100 == doctest::Approx(50.0).epsilon(0.01));
  CHECK_THROWS_AS(similarity(w, Watermark(4, 4)), PreconditionError);
}

TEST_CASE("psnr") {
  const GrayImage a = random_image(10, 10, 3);
  CHECK(psnr(a, a) == std::numeric_limits<double>::infinity());
  GrayImage b(10, 10, 0);
  GrayImage c(10, 10, 1);
  CHECK(psnr(b, c) == doctest::Approx(10.0 * std::log10(65025.0)));
  CHECK(psnr(b, c) == doctest::Approx(48.13).epsilon(1e-3));
  CHECK_THROWS_AS(psnr(a, GrayImage(5, 5)), PreconditionError);
}
