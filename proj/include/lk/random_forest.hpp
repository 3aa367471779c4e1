#pragma once

#include "lk/forest.hpp"

#include <cstdint>

namespace lk {

enum class V0Attachment { leaf, random };

struct RandomForestSpec {
  std::uint64_t seed = 0;
  int max_framed = 4;
  int framing_lo = -5;
  int framing_hi = -1;
  V0Attachment v0_attachment = V0Attachment::random;
  int max_tries = 10000;
};

// Uniform labelled tree shapes (Pruefer codes), one or two components, the
// framed count uniform in [1, max_framed]; rejection until negative definite.
// Vertex ids are "v0" (unframed) and "v1".."vn". Throws Error when the
// rejection budget runs out.
Forest random_forest(const RandomForestSpec& spec);

// SplitMix64 of seed and index; used to give every instance its own stream.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index);

}  // namespace lk
