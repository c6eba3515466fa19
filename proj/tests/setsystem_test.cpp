#include "doctest.h"
#include "mosaic/error.hpp"
#include "mosaic/setsystem.hpp"
#include "support.hpp"

using namespace mosaic;
using testing_support::make_system;

namespace {

ErrorCode code_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::IoError;
}

}  // namespace

TEST_CASE("parse the two-table input") {
  const auto sys = parse_set_system("id,label,base_set\na,Alpha,X\nb,Beta,X\nc,Gamma,Y\n",
                                    "set,element_id\nP,a\nP,c\n");
  CHECK(sys.element_count() == 3);
  REQUIRE(sys.set_count() == 3);
  CHECK(sys.sets()[0].name == "X");
  CHECK(sys.sets()[0].members == std::vector<std::string>{"a", "b"});
  CHECK(sys.sets()[1].name == "Y");
  CHECK(sys.sets()[1].members == std::vector<std::string>{"c"});
  CHECK(sys.sets()[2].name == "P");
  CHECK(sys.sets()[2].kind == SetKind::Overlay);
  CHECK(sys.sets()[2].members == std::vector<std::string>{"a", "c"});
  CHECK(sys.elements()[1].label == "Beta");
  CHECK(sys.sets_of(0) == std::vector<std::size_t>{0, 2});
  CHECK(sys.base_set_of(2) == 1);
}

TEST_CASE("quoted CSV fields and empty overlay table") {
  const auto sys =
      parse_set_system("id,label,base_set\r\n\"a\",\"Data, Science\",X\r\n", "");
  CHECK(sys.elements()[0].label == "Data, Science");
  CHECK(sys.overlay_set_indices().empty());
}

TEST_CASE("input validation") {
  const std::string elements = "id,label,base_set\na,A,X\nb,B,X\n";
  CHECK(code_of([&] { parse_set_system(elements, "set,element_id\nP,z\n"); }) ==
        ErrorCode::UnknownElement);
  CHECK(code_of([&] { parse_set_system("id,label,base_set\na,A,X\na,A,Y\n", ""); }) ==
        ErrorCode::DuplicateId);
  CHECK(code_of([&] { parse_set_system("id,label\na,A\n", ""); }) ==
        ErrorCode::MalformedInput);
  CHECK(code_of([&] { parse_set_system(elements, "set,element_id\nP,a\nP,a\n"); }) ==
        ErrorCode::DuplicateId);
  // An element in two base sets breaks the partition.
  CHECK(code_of([] {
          SetSystem({{"a", "a"}}, {{"X", {"a"}, SetKind::Base}, {"Y", {"a"}, SetKind::Base}});
        }) == ErrorCode::PartitionViolation);
  CHECK(code_of([] { SetSystem({{"a", "a"}}, {{"P", {"a"}, SetKind::Overlay}}); }) ==
        ErrorCode::PartitionViolation);
  CHECK(code_of([] { parse_set_system_json("{\"elements\": ["); }) ==
        ErrorCode::MalformedInput);
}

TEST_CASE("JSON input matches CSV input") {
  const auto from_json = parse_set_system_json(R"({
    "elements": [{"id": "a", "label": "A", "base": "X"},
                 {"id": "b", "base": "X"},
                 {"id": "c", "label": "C", "base": "Y"}],
    "overlays": {"P": ["a", "c"]}})");
  const auto from_csv = parse_set_system(elements_to_csv(from_json), overlays_to_csv(from_json));
  CHECK(from_json.elements()[1].label == "b");
  REQUIRE(from_csv.set_count() == from_json.set_count());
  for (std::size_t s = 0; s < from_csv.set_count(); ++s) {
    CHECK(from_csv.sets()[s].name == from_json.sets()[s].name);
    CHECK(from_csv.sets()[s].members == from_json.sets()[s].members);
    CHECK(from_csv.sets()[s].kind == from_json.sets()[s].kind);
  }
}

TEST_CASE("contraction merges elements with equal memberships") {
  // S1 = {a,b,c} is the base set; S2 = {c,d} needs d in a base set too, so
  // d gets its own base set.
  const auto sys = make_system({{"S1", {"a", "b", "c"}}, {"D", {"d"}}}, {{"S2", {"c", "d"}}});
  const auto cs = contract_indistinguishable(sys);
  REQUIRE(cs.system.element_count() == 3);
  CHECK(cs.system.elements()[0].id == "a");
  CHECK(cs.groups[0] == std::vector<std::string>{"a", "b"});
  CHECK(cs.alpha == std::vector<int>{2, 1, 1});
  CHECK(cs.system.sets()[0].members == std::vector<std::string>{"a", "c"});
  CHECK(cs.system.sets()[2].members == std::vector<std::string>{"c", "d"});
  CHECK(cs.total_alpha() == 4);
  CHECK(cs.set_weight(0) == 3);
  CHECK(cs.representative_of("b") == 0);
  // Centers are the smallest representative ids.
  CHECK(cs.center == std::vector<std::size_t>{0, 2, 1});
}

TEST_CASE("contraction edge cases") {
  SUBCASE("distinct signatures give the identity") {
    const auto sys = make_system({{"X", {"a"}}, {"Y", {"b"}}});
    const auto cs = contract_indistinguishable(sys);
    CHECK(cs.alpha == std::vector<int>{1, 1});
    CHECK(cs.system.element_count() == 2);
  }
  SUBCASE("one set collapses to one representative") {
    const auto cs = contract_indistinguishable(make_system({{"S", {"a", "b"}}}));
    CHECK(cs.alpha == std::vector<int>{2});
    CHECK(cs.system.sets()[0].members == std::vector<std::string>{"a"});
  }
  SUBCASE("identity contraction keeps every element") {
    const auto cs = identity_contraction(make_system({{"S", {"b", "a"}}}));
    CHECK(cs.alpha == std::vector<int>{1, 1});
    CHECK(cs.center[0] == 1);  // "a" is the smallest id
  }
}

TEST_CASE("expanding a contracted embedding") {
  const auto sys = make_system({{"S", {"b", "a"}}, {"T", {"c"}}});
  const auto cs = contract_indistinguishable(sys);
  const auto f = expand_embedding(cs, {{"a", {cell_id(5), cell_id(2)}}, {"c", {cell_id(7)}}});
  CHECK(f.at("a") == cell_id(2));
  CHECK(f.at("b") == cell_id(5));
  CHECK(f.at("c") == cell_id(7));
  CHECK(code_of([&] { expand_embedding(cs, {{"a", {cell_id(1)}}, {"c", {cell_id(7)}}}); }) ==
        ErrorCode::CardinalityMismatch);
}
