#include "doctest.h"
#include "mosaic/error.hpp"
#include "mosaic/synth.hpp"

using namespace mosaic;

TEST_CASE("named profiles") {
  const auto bonn = named_profile("bonn");
  CHECK(bonn.elements == 51);
  CHECK(bonn.base_sets == 6);
  CHECK(bonn.overlays == 3);
  CHECK(named_profile("parliament", 8).overlays == 8);
  CHECK_THROWS_AS(named_profile("paris"), Error);
}

TEST_CASE("synthetic systems have the profile's shape and parse back") {
  for (const char* name : {"bonn", "vienna", "parliament"}) {
    for (std::uint64_t seed : {0u, 1u, 17u}) {
      const auto profile = named_profile(name);
      const auto sys = synthesize(profile, seed);
      CHECK(sys.element_count() == static_cast<std::size_t>(profile.elements));
      CHECK(sys.base_set_indices().size() == static_cast<std::size_t>(profile.base_sets));
      CHECK(sys.overlay_set_indices().size() == static_cast<std::size_t>(profile.overlays));
      for (auto s : sys.base_set_indices()) CHECK_FALSE(sys.sets()[s].members.empty());
      const auto back = parse_set_system(elements_to_csv(sys), overlays_to_csv(sys));
      CHECK(back.element_count() == sys.element_count());
      CHECK(back.set_count() == sys.set_count());
    }
  }
}

TEST_CASE("synthesis is deterministic per seed") {
  const auto profile = named_profile("vienna");
  CHECK(elements_to_csv(synthesize(profile, 5)) == elements_to_csv(synthesize(profile, 5)));
  CHECK(overlays_to_csv(synthesize(profile, 5)) == overlays_to_csv(synthesize(profile, 5)));
  CHECK(overlays_to_csv(synthesize(profile, 5)) != overlays_to_csv(synthesize(profile, 6)));
}

TEST_CASE("bounded draws stay in range") {
  Rng rng(3);
  for (int i = 0; i < 1000; ++i) {
    const auto v = rng.between(2, 4);
    CHECK(v >= 2);
    CHECK(v <= 4);
  }
}
