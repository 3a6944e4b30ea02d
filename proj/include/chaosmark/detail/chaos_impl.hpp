#pragma once

#include <string>

#include "chaosmark/errors.hpp"

namespace chaosmark {

template <typename IterateFn>
ChaoticState chaotic_iterate(ChaoticState state, std::uint32_t s, const IterateFn& f) {
  if (s < 1 || s > state.x.size()) {
    throw PreconditionError("strategy element " + std::to_string(s) + " outside [1, " +
                            std::to_string(state.x.size()) + "]");
  }
  const std::size_t i = s - 1;
  state.x[i] = f(std::span<const std::uint8_t>(state.x), i);
  ++state.step;
  return state;
}

}  // namespace chaosmark
