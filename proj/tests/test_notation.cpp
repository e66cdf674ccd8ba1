#include <doctest.h>

#include "arrangekit/notation.hpp"

using namespace arrangekit;

namespace {

const SpeciesTable kAbc({{"A"}, {"B"}, {"C"}});

}  // namespace

TEST_CASE("parse canonicalizes") {
  const Arrangement a = parse("(A)(B,C)", kAbc);
  REQUIRE(a.groups().size() == 2);
  CHECK(a.groups()[0].cluster.key() == "B,C");
  CHECK(print(a) == "(B,C)(A)");
  CHECK(print(parse("(B,A)(C)", kAbc)) == "(A,B)(C)");
}

TEST_CASE("group multiplicity expands") {
  const Arrangement a = parse("(A_2)_2", kAbc);
  CHECK(a.cluster_count() == 2);
  CHECK(a.composition() == Composition{{"A", 4}});
  CHECK(print(a) == "(A_2)_2");

  const SpeciesTable rb({{"Rb"}});
  const Arrangement r = parse("(Rb_2)(Rb)_3", rb);
  CHECK(r.composition() == Composition{{"Rb", 5}});
  CHECK(r.cluster_count() == 4);
  CHECK(print(r) == "(Rb_2)(Rb)_3");
}

TEST_CASE("print contracts repetition") {
  CHECK(print(Arrangement({Cluster({{"A", 1}}), Cluster({{"A", 1}}), Cluster({{"A", 1}})})) == "(A)_3");
  CHECK(print(Arrangement({Cluster({{"A", 3}})})) == "(A_3)");
  CHECK(print(Arrangement({Cluster({{"A", 1}}), Cluster({{"A", 2}})})) == "(A_2)(A)");
  CHECK(print(Cluster({{"A", 2}, {"B", 1}})) == "(A_2,B)");
}

TEST_CASE("whitespace and item order do not matter") {
  CHECK(parse("(B,A)", kAbc) == parse("(A,B)", kAbc));
  CHECK(parse(" ( A , B ) ( C ) ", kAbc) == parse("(A,B)(C)", kAbc));
  CHECK(parse("(A,A)", kAbc) == parse("(A_2)", kAbc));
}

TEST_CASE("charged species tokens") {
  const SpeciesTable ions({{"A^+"}, {"e^-"}});
  CHECK(print(parse("(A^+)(e^-)", ions)) == "(A^+)(e^-)");
}

TEST_CASE("parse errors carry offsets") {
  try {
    parse("(A", kAbc);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.offset() == 2);
    CHECK(e.expected() == "')' or ','");
  }
  CHECK_THROWS_AS(parse("", kAbc), ParseError);
  CHECK_THROWS_AS(parse("()", kAbc), ParseError);
  CHECK_THROWS_AS(parse("(A)_0", kAbc), ParseError);
  CHECK_THROWS_AS(parse("(A)_01", kAbc), ParseError);
  CHECK_THROWS_AS(parse("(A_)", kAbc), ParseError);
  CHECK_THROWS_AS(parse("(A))", kAbc), ParseError);
  CHECK_THROWS_AS(parse("(A)_99999999999", kAbc), ParseError);
}

TEST_CASE("unknown species and infinity") {
  try {
    parse("(A)(Z)", kAbc);
    FAIL("expected UnknownSpecies");
  } catch (const UnknownSpecies& e) {
    CHECK(e.name() == "Z");
    CHECK(e.offset() == 4);
  }
  try {
    parse("(Rb_2)(Rb)_inf", SpeciesTable({{"Rb"}}));
    FAIL("expected InfinityNotEnumerable");
  } catch (const InfinityNotEnumerable& e) {
    CHECK(e.offset() == 11);
  }
}

TEST_CASE("distinguishable species appear once") {
  const SpeciesTable t({{"X", false}, {"e"}});
  CHECK_NOTHROW(parse("(X,e)(e)", t));
  CHECK_THROWS_AS(parse("(X)(X)", t), ValidationError);
  CHECK_THROWS_AS(parse("(X)_2", t), ValidationError);
  CHECK_THROWS_AS(parse("(X_2)", t), ValidationError);
}

TEST_CASE("single cluster parsing") {
  CHECK(parse_cluster("(B,A_2)", kAbc).key() == "A_2,B");
  CHECK_THROWS_AS(parse_cluster("(A)(B)", kAbc), ParseError);
  CHECK_THROWS_AS(parse_cluster("(A)_2", kAbc), ParseError);
}

TEST_CASE("display form keeps order and accepts _inf") {
  const DisplayForm f = parse_display("(Rb_2)(Rb)_inf");
  REQUIRE(f.groups.size() == 2);
  CHECK(f.has_infinity());
  CHECK(f.groups[1].infinite());
  CHECK(print(f) == "(Rb_2)(Rb)_inf");
  CHECK_FALSE(parse_display("(A)(B)_2").has_infinity());
}

TEST_CASE("inferred species and error rendering") {
  const SpeciesTable t = infer_species("(Rb_2)(Cs)");
  CHECK(t.size() == 2);
  CHECK(t.contains("Rb"));
  CHECK(t.find("Cs")->identical);
  CHECK(render_error("(A", 2, "oops") == "oops\n  (A\n    ^");
}
