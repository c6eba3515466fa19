#include "mosaic/setsystem.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"

#include "csv.hpp"

namespace mosaic {

SetSystem::SetSystem(std::vector<Element> elements, std::vector<NamedSet> sets)
    : elements_(std::move(elements)), sets_(std::move(sets)) {
  for (std::size_t i = 0; i < elements_.size(); ++i) {
    const auto& id = elements_[i].id;
    if (id.empty()) {
      throw Error(ErrorCode::MalformedInput, "element with empty id");
    }
    if (!element_lookup_.emplace(id, i).second) {
      throw Error(ErrorCode::DuplicateId, "element '" + id + "' listed twice");
    }
  }

  sets_of_.assign(elements_.size(), {});
  base_of_.assign(elements_.size(), 0);
  std::vector<int> base_count(elements_.size(), 0);
  member_indices_.reserve(sets_.size());

  for (std::size_t s = 0; s < sets_.size(); ++s) {
    const auto& set = sets_[s];
    if (set.name.empty()) {
      throw Error(ErrorCode::MalformedInput, "set with empty name");
    }
    if (!set_lookup_.emplace(set.name, s).second) {
      throw Error(ErrorCode::DuplicateId, "set '" + set.name + "' declared twice");
    }
    if (set.members.empty()) {
      throw Error(ErrorCode::MalformedInput, "set '" + set.name + "' is empty");
    }
    std::vector<std::size_t> indices;
    std::set<std::size_t> seen;
    for (const auto& member : set.members) {
      auto it = element_lookup_.find(member);
      if (it == element_lookup_.end()) {
        throw Error(ErrorCode::UnknownElement,
                    "set '" + set.name + "' references unknown element '" + member + "'");
      }
      if (!seen.insert(it->second).second) {
        throw Error(ErrorCode::DuplicateId,
                    "set '" + set.name + "' lists element '" + member + "' twice");
      }
      indices.push_back(it->second);
      sets_of_[it->second].push_back(s);
      if (set.kind == SetKind::Base) {
        ++base_count[it->second];
        base_of_[it->second] = s;
      }
    }
    member_indices_.push_back(std::move(indices));
  }

  for (std::size_t i = 0; i < elements_.size(); ++i) {
    if (base_count[i] != 1) {
      throw Error(ErrorCode::PartitionViolation,
                  "element '" + elements_[i].id + "' belongs to " +
                      std::to_string(base_count[i]) + " base sets");
    }
  }
}

std::optional<std::size_t> SetSystem::find_element(std::string_view id) const {
  auto it = element_lookup_.find(id);
  if (it == element_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t SetSystem::element_index(std::string_view id) const {
  if (auto i = find_element(id)) return *i;
  throw Error(ErrorCode::UnknownElement, "no element '" + std::string(id) + "'");
}

std::optional<std::size_t> SetSystem::find_set(std::string_view name) const {
  auto it = set_lookup_.find(name);
  if (it == set_lookup_.end()) return std::nullopt;
  return it->second;
}

std::size_t SetSystem::set_index(std::string_view name) const {
  if (auto i = find_set(name)) return *i;
  throw Error(ErrorCode::UnknownSet, "no set '" + std::string(name) + "'");
}

std::vector<std::size_t> SetSystem::base_set_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < sets_.size(); ++s) {
    if (sets_[s].kind == SetKind::Base) out.push_back(s);
  }
  return out;
}

std::vector<std::size_t> SetSystem::overlay_set_indices() const {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < sets_.size(); ++s) {
    if (sets_[s].kind == SetKind::Overlay) out.push_back(s);
  }
  return out;
}

std::vector<std::string> SetSystem::set_names(SetKind kind) const {
  std::vector<std::string> out;
  for (const auto& set : sets_) {
    if (set.kind == kind) out.push_back(set.name);
  }
  return out;
}

namespace {

std::vector<NamedSet>::iterator find_or_add(std::vector<NamedSet>& sets,
                                            const std::string& name, SetKind kind) {
  auto it = std::find_if(sets.begin(), sets.end(),
                         [&](const NamedSet& s) { return s.name == name; });
  if (it != sets.end()) {
    if (it->kind != kind) {
      throw Error(ErrorCode::DuplicateId,
                  "'" + name + "' used both as base set and overlay set");
    }
    return it;
  }
  sets.push_back(NamedSet{name, {}, kind});
  return std::prev(sets.end());
}

}  // namespace

SetSystem parse_set_system(std::string_view elements_csv, std::string_view overlays_csv) {
  auto element_rows = detail::parse_csv(elements_csv);
  if (element_rows.empty()) {
    throw Error(ErrorCode::MalformedInput, "elements file has no header");
  }
  const std::vector<std::string> element_header{"id", "label", "base_set"};
  if (element_rows.front() != element_header) {
    throw Error(ErrorCode::MalformedInput,
                "elements header must be 'id,label,base_set'");
  }

  std::vector<Element> elements;
  std::vector<NamedSet> sets;
  for (std::size_t r = 1; r < element_rows.size(); ++r) {
    const auto& row = element_rows[r];
    if (row.size() != 3) {
      throw Error(ErrorCode::MalformedInput,
                  "elements row " + std::to_string(r + 1) + " has " +
                      std::to_string(row.size()) + " fields, expected 3");
    }
    if (row[2].empty()) {
      throw Error(ErrorCode::PartitionViolation,
                  "element '" + row[0] + "' has no base set");
    }
    elements.push_back(Element{row[0], row[1]});
    find_or_add(sets, row[2], SetKind::Base)->members.push_back(row[0]);
  }

  auto overlay_rows = detail::parse_csv(overlays_csv);
  if (!overlay_rows.empty()) {
    const std::vector<std::string> overlay_header{"set", "element_id"};
    if (overlay_rows.front() != overlay_header) {
      throw Error(ErrorCode::MalformedInput, "overlays header must be 'set,element_id'");
    }
    for (std::size_t r = 1; r < overlay_rows.size(); ++r) {
      const auto& row = overlay_rows[r];
      if (row.size() != 2 || row[0].empty()) {
        throw Error(ErrorCode::MalformedInput,
                    "overlays row " + std::to_string(r + 1) + " is malformed");
      }
      find_or_add(sets, row[0], SetKind::Overlay)->members.push_back(row[1]);
    }
  }
  return SetSystem(std::move(elements), std::move(sets));
}

SetSystem parse_set_system_json(std::string_view json_text) {
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  }
  try {
    std::vector<Element> elements;
    std::vector<NamedSet> sets;
    for (const auto& e : doc.at("elements")) {
      auto id = e.at("id").get<std::string>();
      auto label = e.contains("label") ? e.at("label").get<std::string>() : id;
      auto base = e.at("base").get<std::string>();
      elements.push_back(Element{id, label});
      find_or_add(sets, base, SetKind::Base)->members.push_back(id);
    }
    if (doc.contains("overlays")) {
      for (const auto& [name, ids] : doc.at("overlays").items()) {
        auto it = find_or_add(sets, name, SetKind::Overlay);
        for (const auto& id : ids) it->members.push_back(id.get<std::string>());
        if (it->members.empty()) {
          throw Error(ErrorCode::MalformedInput, "overlay '" + name + "' is empty");
        }
      }
    }
    return SetSystem(std::move(elements), std::move(sets));
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedInput, e.what());
  }
}

std::string elements_to_csv(const SetSystem& system) {
  std::ostringstream out;
  out << "id,label,base_set\n";
  for (std::size_t i = 0; i < system.element_count(); ++i) {
    const auto& e = system.elements()[i];
    out << detail::csv_field(e.id) << ',' << detail::csv_field(e.label) << ','
        << detail::csv_field(system.sets()[system.base_set_of(i)].name) << '\n';
  }
  return out.str();
}

std::string overlays_to_csv(const SetSystem& system) {
  std::ostringstream out;
  out << "set,element_id\n";
  for (const auto& set : system.sets()) {
    if (set.kind != SetKind::Overlay) continue;
    for (const auto& m : set.members) {
      out << detail::csv_field(set.name) << ',' << detail::csv_field(m) << '\n';
    }
  }
  return out.str();
}

int ContractedSystem::total_alpha() const {
  return std::accumulate(alpha.begin(), alpha.end(), 0);
}

int ContractedSystem::set_weight(std::size_t set) const {
  int n = 0;
  for (auto rep : system.member_indices(set)) n += alpha[rep];
  return n;
}

std::size_t ContractedSystem::representative_of(std::string_view original_id) const {
  for (std::size_t r = 0; r < groups.size(); ++r) {
    if (std::binary_search(groups[r].begin(), groups[r].end(), original_id)) return r;
  }
  throw Error(ErrorCode::UnknownElement,
              "no representative for '" + std::string(original_id) + "'");
}

namespace {

// Builds the contracted system from a grouping of original element indices.
ContractedSystem make_contraction(const SetSystem& system,
                                  std::vector<std::vector<std::size_t>> grouping) {
  ContractedSystem cs;
  cs.original = system;

  std::vector<std::size_t> rep_of_element(system.element_count());
  std::vector<Element> reps;
  for (std::size_t g = 0; g < grouping.size(); ++g) {
    std::vector<std::string> ids;
    for (auto e : grouping[g]) {
      ids.push_back(system.elements()[e].id);
      rep_of_element[e] = g;
    }
    std::sort(ids.begin(), ids.end());
    const auto rep_index = system.element_index(ids.front());
    reps.push_back(system.elements()[rep_index]);
    cs.alpha.push_back(static_cast<int>(ids.size()));
    cs.groups.push_back(std::move(ids));
  }

  std::vector<NamedSet> sets;
  for (std::size_t s = 0; s < system.set_count(); ++s) {
    NamedSet contracted{system.sets()[s].name, {}, system.sets()[s].kind};
    std::set<std::size_t> added;
    for (auto e : system.member_indices(s)) {
      const auto g = rep_of_element[e];
      if (added.insert(g).second) contracted.members.push_back(reps[g].id);
    }
    sets.push_back(std::move(contracted));
  }
  cs.system = SetSystem(std::move(reps), std::move(sets));

  for (std::size_t s = 0; s < cs.system.set_count(); ++s) {
    const auto& members = cs.system.member_indices(s);
    auto best = *std::min_element(members.begin(), members.end(),
                                  [&](std::size_t a, std::size_t b) {
                                    return cs.system.elements()[a].id <
                                           cs.system.elements()[b].id;
                                  });
    cs.center.push_back(best);
  }
  return cs;
}

}  // namespace

ContractedSystem contract_indistinguishable(const SetSystem& system) {
  // Groups are ordered by the first appearance of any of their members.
  std::map<std::vector<std::size_t>, std::size_t> group_of_signature;
  std::vector<std::vector<std::size_t>> grouping;
  for (std::size_t e = 0; e < system.element_count(); ++e) {
    auto [it, inserted] = group_of_signature.emplace(system.sets_of(e), grouping.size());
    if (inserted) grouping.emplace_back();
    grouping[it->second].push_back(e);
  }
  return make_contraction(system, std::move(grouping));
}

ContractedSystem identity_contraction(const SetSystem& system) {
  std::vector<std::vector<std::size_t>> grouping;
  for (std::size_t e = 0; e < system.element_count(); ++e) grouping.push_back({e});
  return make_contraction(system, std::move(grouping));
}

std::map<std::string, CellId> expand_embedding(
    const ContractedSystem& cs,
    const std::map<std::string, std::vector<CellId>>& contracted_cells) {
  std::map<std::string, CellId> out;
  std::set<CellId> used;
  for (std::size_t r = 0; r < cs.groups.size(); ++r) {
    const auto& rep_id = cs.system.elements()[r].id;
    auto it = contracted_cells.find(rep_id);
    const std::size_t got = it == contracted_cells.end() ? 0 : it->second.size();
    if (got != static_cast<std::size_t>(cs.alpha[r])) {
      throw Error(ErrorCode::CardinalityMismatch,
                  "representative '" + rep_id + "' has " + std::to_string(got) +
                      " cells, expected " + std::to_string(cs.alpha[r]));
    }
    auto cells = it->second;
    std::sort(cells.begin(), cells.end());
    for (std::size_t k = 0; k < cells.size(); ++k) {
      if (!used.insert(cells[k]).second) {
        throw Error(ErrorCode::CardinalityMismatch,
                    "cell " + std::to_string(to_int(cells[k])) + " assigned twice");
      }
      out.emplace(cs.groups[r][k], cells[k]);
    }
  }
  for (const auto& [rep_id, cells] : contracted_cells) {
    if (!cs.system.find_element(rep_id)) {
      throw Error(ErrorCode::UnknownElement, "unknown representative '" + rep_id + "'");
    }
  }
  return out;
}

}  // namespace mosaic
