#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mosaic/error.hpp"
#include "mosaic/geometry.hpp"

namespace mosaic {

struct Element {
  std::string id;
  std::string label;
};

enum class SetKind { Base, Overlay };

struct NamedSet {
  std::string name;
  std::vector<std::string> members;
  SetKind kind = SetKind::Base;
};

// A validated set system: base sets partition the elements, overlay sets may
// overlap arbitrarily. Element and set order is the declaration order.
class SetSystem {
 public:
  SetSystem() = default;
  SetSystem(std::vector<Element> elements, std::vector<NamedSet> sets);

  const std::vector<Element>& elements() const { return elements_; }
  const std::vector<NamedSet>& sets() const { return sets_; }
  std::size_t element_count() const { return elements_.size(); }
  std::size_t set_count() const { return sets_.size(); }

  std::optional<std::size_t> find_element(std::string_view id) const;
  std::size_t element_index(std::string_view id) const;
  std::optional<std::size_t> find_set(std::string_view name) const;
  std::size_t set_index(std::string_view name) const;

  // Member element indices of set `set`, in declaration order.
  const std::vector<std::size_t>& member_indices(std::size_t set) const {
    return member_indices_[set];
  }
  // Indices of the sets containing element `element`, ascending.
  const std::vector<std::size_t>& sets_of(std::size_t element) const {
    return sets_of_[element];
  }
  std::size_t base_set_of(std::size_t element) const {
    return base_of_[element];
  }

  std::vector<std::size_t> base_set_indices() const;
  std::vector<std::size_t> overlay_set_indices() const;
  std::vector<std::string> set_names(SetKind kind) const;

 private:
  std::vector<Element> elements_;
  std::vector<NamedSet> sets_;
  std::map<std::string, std::size_t, std::less<>> element_lookup_;
  std::map<std::string, std::size_t, std::less<>> set_lookup_;
  std::vector<std::vector<std::size_t>> member_indices_;
  std::vector<std::vector<std::size_t>> sets_of_;
  std::vector<std::size_t> base_of_;
};

// Parses the two-table CSV input (elements: id,label,base_set; overlays:
// set,element_id). The overlay document may be empty.
SetSystem parse_set_system(std::string_view elements_csv,
                           std::string_view overlays_csv);

// JSON variant: {"elements":[{"id","label","base"}], "overlays":{name:[ids]}}.
SetSystem parse_set_system_json(std::string_view json_text);

std::string elements_to_csv(const SetSystem& system);
std::string overlays_to_csv(const SetSystem& system);

// Result of merging elements with identical membership signatures.
// Representatives are indexed like `system.elements()`.
struct ContractedSystem {
  SetSystem original;
  SetSystem system;
  std::vector<int> alpha;
  // Original element ids per representative, sorted ascending.
  std::vector<std::vector<std::string>> groups;
  // Representative index designated as center, per set index.
  std::vector<std::size_t> center;

  int total_alpha() const;
  int set_weight(std::size_t set) const;  // sum of alpha over members
  std::size_t representative_of(std::string_view original_id) const;
};

ContractedSystem contract_indistinguishable(const SetSystem& system);

// Trivial contraction (every element its own representative); used to
// compare contracted and uncontracted models.
ContractedSystem identity_contraction(const SetSystem& system);

// Distributes each representative's cells over its original elements: both
// the group's ids and the cells are sorted and paired in order.
std::map<std::string, CellId> expand_embedding(
    const ContractedSystem& cs,
    const std::map<std::string, std::vector<CellId>>& contracted_cells);

}  // namespace mosaic
