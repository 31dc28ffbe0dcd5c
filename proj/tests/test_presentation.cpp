#include <doctest.h>

#include "gk/parser.hpp"
#include "gk/presentation.hpp"

#include "support.hpp"

using namespace gk;

TEST_CASE("smallest program") {
  Presentation p = parse_presentation("object A\n");
  CHECK(p.objects.size() == 1);
  CHECK(p.find_hom("id(A)").has_value());
  CHECK(p.find_hom("0(A,A)").has_value());
  CHECK(p.identity_hom(0) != p.zero_hom(0, 0));
  CHECK(validate_presentation(p).ok());
}

TEST_CASE("P1 structure") {
  Presentation p = test::load_presentation("P1.gk");
  CHECK(p.objects.size() == 4);
  for (const char* name : {"f", "g", "s", "iA", "pA", "iB", "pB"})
    CHECK(p.is_generator(p.hom_id(name)));
  CHECK(p.sums.size() == 1);
  CHECK(p.splitexacts.size() == 1);
  CHECK(p.homotopies.size() == 1);
  CHECK(p.object_name(p.dom(p.hom_id("f"))) == "A");
  CHECK(p.object_name(p.cod(p.hom_id("f"))) == "D");
  const SplitExactDecl& se = p.splitexacts[0];
  CHECK(se.name == "S1");
  CHECK(p.object_name(se.d) == "D");
}

TEST_CASE("unresolved and duplicate names") {
  CHECK_THROWS_WITH_AS(parse_presentation("object A\nhom f : A -> X\n"),
                       doctest::Contains("unresolved reference to object X"),
                       ParseError);
  CHECK_THROWS_WITH_AS(parse_presentation("object A\nobject A\n"),
                       doctest::Contains("duplicate object name"), ParseError);
  CHECK_THROWS_WITH_AS(
      parse_presentation("object A\nhom f : A -> A\nhom f : A -> A\n"),
      doctest::Contains("duplicate hom name"), ParseError);
}

TEST_CASE("syntax errors carry positions") {
  try {
    parse_presentation("object A\nhom f A -> A\n");
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.pos().line == 2);
    CHECK(std::string(e.what()).find("expected ':'") != std::string::npos);
  }
}

TEST_CASE("fixtures validate cleanly") {
  for (const char* name : {"P1.gk", "P2.gk", "P2R.gk", "P3.gk", "PZ.gk"}) {
    Presentation p = test::load_presentation(name);
    ValidationReport report = validate_presentation(p);
    INFO(name, ": ", report.to_string());
    CHECK(report.ok());
  }
}

TEST_CASE("print and reparse is stable") {
  for (const char* name : {"P1.gk", "P2.gk", "P2R.gk", "P3.gk", "PZ.gk"}) {
    Presentation p = test::load_presentation(name);
    Presentation q = parse_presentation(print_presentation(p));
    CHECK(p == q);
    CHECK(print_presentation(p) == print_presentation(q));
  }
}

TEST_CASE("broken split-exact fact is reported") {
  std::string text = test::read_fixture("P1.gk");
  auto pos = text.find("compose s ; g = id(B)");
  REQUIRE(pos != std::string::npos);
  text.replace(pos, std::string("compose s ; g = id(B)").size(), "compose s ; g = 0");
  Presentation p = parse_presentation(text);
  ValidationReport report = validate_presentation(p);
  CHECK(report.has("splitexact-fact"));
}

TEST_CASE("missing composition closure is reported") {
  // f;g is declared, g;h is declared, but the closure pairs x;h and f;y are not
  std::string text =
      "object W\nobject X\nobject Y\nobject V\n"
      "hom f : W -> X\nhom g : X -> Y\nhom h : Y -> V\n"
      "hom x : W -> Y\nhom y : X -> V\n"
      "compose f ; g = x\ncompose g ; h = y\n";
  Presentation p = parse_presentation(text);
  ValidationReport report = validate_presentation(p);
  CHECK(report.has("missing-composition"));
}

TEST_CASE("associativity violation is reported") {
  std::string text =
      "object X\n"
      "hom a : X -> X\nhom b : X -> X\nhom c : X -> X\n"
      "compose a ; a = b\ncompose a ; b = c\ncompose b ; a = a\n"
      "compose a ; c = a\ncompose c ; a = a\ncompose b ; b = a\n"
      "compose b ; c = a\ncompose c ; b = a\ncompose c ; c = a\n";
  Presentation p = parse_presentation(text);
  ValidationReport report = validate_presentation(p);
  CHECK(report.has("associativity"));
}

TEST_CASE("compose_lookup resolves table, units and absorption") {
  Presentation p = test::load_presentation("P1.gk");
  HomId s = p.hom_id("s"), g = p.hom_id("g"), f = p.hom_id("f");
  ObjectId A = p.object_id("A"), B = p.object_id("B"), D = p.object_id("D");
  CHECK(compose_lookup(p, s, g) == p.identity_hom(B));
  CHECK(compose_lookup(p, p.identity_hom(A), f) == f);
  CHECK(compose_lookup(p, f, p.zero_hom(D, B)) == p.zero_hom(A, B));
  CHECK_THROWS_AS(compose_lookup(p, g, f), TypeError);
}

TEST_CASE("compose_lookup is associative on every fixture triple") {
  for (const char* name : {"P1.gk", "P2R.gk", "P3.gk"}) {
    Presentation p = test::load_presentation(name);
    std::vector<HomId> gens;
    for (HomId h = 0; h < static_cast<HomId>(p.homs.size()); ++h)
      if (p.is_generator(h)) gens.push_back(h);
    for (HomId a : gens)
      for (HomId b : gens) {
        if (p.cod(a) != p.dom(b)) continue;
        for (HomId c : gens) {
          if (p.cod(b) != p.dom(c)) continue;
          CHECK(compose_lookup(p, compose_lookup(p, a, b), c) ==
                compose_lookup(p, a, compose_lookup(p, b, c)));
        }
      }
  }
}

TEST_CASE("implicit homs obey unit and absorption laws") {
  Presentation p = test::load_presentation("P3.gk");
  for (HomId h = 0; h < static_cast<HomId>(p.homs.size()); ++h) {
    CHECK(compose_lookup(p, p.identity_hom(p.dom(h)), h) == h);
    CHECK(compose_lookup(p, h, p.identity_hom(p.cod(h))) == h);
    for (ObjectId o : {p.object_id("A"), p.object_id("D'")}) {
      CHECK(p.is_zero(compose_lookup(p, p.zero_hom(o, p.dom(h)), h)));
    }
  }
}

TEST_CASE("zero-flagged objects collapse their homs") {
  Presentation p = test::load_presentation("PZ.gk");
  ObjectId Z = p.object_id("Z"), ZZ = p.object_id("ZZ");
  CHECK(p.identity_hom(Z) == p.zero_hom(Z, Z));
  CHECK(p.is_zero(p.hom_id("i1")));
  CHECK(!p.is_zero(p.identity_hom(ZZ)));
  CHECK(validate_presentation(p).ok());
  CHECK(p.zero_aliases.size() == 4);
}

TEST_CASE("group tag round-trips") {
  Presentation p = parse_presentation("group M\nobject A\n");
  CHECK(p.group_tag == "M");
  CHECK(parse_presentation(print_presentation(p)) == p);
}
