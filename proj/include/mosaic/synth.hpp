#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <string_view>

#include "mosaic/setsystem.hpp"

namespace mosaic {

struct SynthProfile {
  std::string name;
  int elements = 0;
  int base_sets = 0;
  int overlays = 0;
};

// "bonn" (51, 6, 3), "vienna" (71, 4, 3), "parliament" (178, 5, 3). A
// positive `overlays` replaces the profile's overlay count.
SynthProfile named_profile(std::string_view name, int overlays = 0);

// Seeded generator with a portable bounded draw (the standard distributions
// are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  // Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  int between(int lo, int hi) { return lo + static_cast<int>(below(hi - lo + 1)); }

 private:
  std::mt19937_64 engine_;
};

// Random base partition (every base set has at least one element, sizes
// roughly balanced) and overlays that each draw members from two or three
// cyclically adjacent base sets plus one member shared with the previous
// overlay.
SetSystem synthesize(const SynthProfile& profile, std::uint64_t seed);

}  // namespace mosaic
