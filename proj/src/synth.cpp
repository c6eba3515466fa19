#include "mosaic/synth.hpp"

#include <algorithm>
#include <numeric>

#include <fmt/format.h>

#include "mosaic/error.hpp"

namespace mosaic {

SynthProfile named_profile(std::string_view name, int overlays) {
  SynthProfile p;
  if (name == "bonn") {
    p = {"bonn", 51, 6, 3};
  } else if (name == "vienna") {
    p = {"vienna", 71, 4, 3};
  } else if (name == "parliament") {
    p = {"parliament", 178, 5, 3};
  } else {
    throw Error(ErrorCode::InvalidArgument, "unknown profile '" + std::string(name) + "'");
  }
  if (overlays > 0) p.overlays = overlays;
  return p;
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty range");
  const std::uint64_t limit = engine_.max() - engine_.max() % n;
  std::uint64_t v = 0;
  do {
    v = engine_();
  } while (v >= limit);
  return v % n;
}

namespace {

template <typename T>
void shuffle(std::vector<T>& items, Rng& rng) {
  for (std::size_t i = items.size(); i > 1; --i) {
    std::swap(items[i - 1], items[rng.below(i)]);
  }
}

}  // namespace

SetSystem synthesize(const SynthProfile& profile, std::uint64_t seed) {
  const int n = profile.elements;
  const int k = profile.base_sets;
  if (n < 1 || k < 1 || k > n || profile.overlays < 0) {
    throw Error(ErrorCode::InvalidArgument,
                fmt::format("cannot build {} elements in {} base sets", n, k));
  }
  Rng rng(seed);

  // Base sizes: an even share each, with the remainder and a random
  // transfer of up to a third of each share.
  std::vector<int> sizes(k, n / k);
  for (int i = 0; i < n % k; ++i) ++sizes[rng.below(k)];
  for (int i = 0; i < k; ++i) {
    const int j = static_cast<int>(rng.below(k));
    const int movable = std::max(0, sizes[i] - 1) / 3;
    if (movable == 0 || i == j) continue;
    const int moved = rng.between(0, movable);
    sizes[i] -= moved;
    sizes[j] += moved;
  }

  std::vector<Element> elements;
  std::vector<NamedSet> sets;
  int next_id = 1;
  for (int b = 0; b < k; ++b) {
    NamedSet base{fmt::format("Dept {}", static_cast<char>('A' + b % 26)) +
                      (b >= 26 ? std::to_string(b / 26) : ""),
                  {},
                  SetKind::Base};
    for (int i = 0; i < sizes[b]; ++i, ++next_id) {
      const auto id = fmt::format("g{:03d}", next_id);
      elements.push_back({id, fmt::format("Group {}", next_id)});
      base.members.push_back(id);
    }
    sets.push_back(std::move(base));
  }

  std::vector<std::string> previous;
  for (int o = 0; o < profile.overlays; ++o) {
    const int span = std::min(k, rng.between(2, 3));
    const int first = static_cast<int>(rng.below(k));
    std::vector<std::string> members;
    for (int j = 0; j < span; ++j) {
      auto pool = sets[(first + j) % k].members;
      shuffle(pool, rng);
      const int take = std::min(static_cast<int>(pool.size()), rng.between(2, 3));
      members.insert(members.end(), pool.begin(), pool.begin() + take);
    }
    if (!previous.empty()) members.push_back(previous[rng.below(previous.size())]);
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    previous = members;
    sets.push_back({fmt::format("Project {}", o + 1), members, SetKind::Overlay});
  }
  return SetSystem(std::move(elements), std::move(sets));
}

}  // namespace mosaic
