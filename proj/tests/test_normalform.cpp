#include <doctest.h>

#include "gk/normalform.hpp"
#include "gk/parser.hpp"

#include "support.hpp"

using namespace gk;

namespace {

Word word_of(const Presentation& p, const std::string& text) {
  FormalSum s = parse_term(p, text);
  REQUIRE(s.terms.size() == 1);
  return s.terms[0].word;
}

}  // namespace

TEST_CASE("representative set") {
  Presentation p = gk::test::load_presentation("P3.gk");
  CHECK(in_representative_set(p, p.object_id("A")));
  CHECK(in_representative_set(p, p.object_id("AB")));
  CHECK(in_representative_set(p, p.object_id("D'")));
  CHECK(!in_representative_set(p, p.object_id("D")));
}

TEST_CASE("desyntheticize conjugates over the declared representative") {
  Presentation p = gk::test::load_presentation("P3.gk");
  Word w = desyntheticize(p, word_of(p, "theta(S1)"));
  CHECK(print_word(p, w) == "u;theta(S1');id(AB)");

  // identity linkage pads with identities
  Presentation p2 = gk::test::load_presentation("P2.gk");
  CHECK(print_word(p2, desyntheticize(p2, word_of(p2, "inv(c)"))) ==
        "id(KA);inv(c);id(A)");

  // morphism letters pass through
  Presentation p1 = gk::test::load_presentation("P1.gk");
  CHECK(print_word(p1, desyntheticize(p1, word_of(p1, "f;g"))) == "f;g");
}

TEST_CASE("desyntheticize with a non-identity corner representative") {
  Presentation p = gk::test::load_presentation("P2R.gk");
  Word w = desyntheticize(p, word_of(p, "inv(c)"));
  CHECK(print_word(p, w) == "ps;inv(c');pi'");
  for (const Letter& l : w.letters) {
    if (letter_is_synthetic(l)) {
      CHECK(in_representative_set(p, letter_dom(p, l)));
      CHECK(in_representative_set(p, letter_cod(p, l)));
    }
  }
}

TEST_CASE("missing linkage is an error") {
  std::string text = gk::test::read_fixture("P3.gk");
  auto pos = text.find(" link split S1 to S1' sumvia id(AB)");
  REQUIRE(pos != std::string::npos);
  std::string broken = text;
  broken.erase(pos, std::string(" link split S1 to S1' sumvia id(AB)").size());
  Presentation p = parse_presentation(broken);
  CHECK(validate_presentation(p).has("rep-link-missing"));
  CHECK_THROWS_WITH_AS(desyntheticize(p, word_of(p, "theta(S1)")),
                       doctest::Contains("missing linkage"), Error);
}

TEST_CASE("fuse_runs folds morphism runs") {
  Presentation p = gk::test::load_presentation("P1.gk");
  auto fused = fuse_runs(p, word_of(p, "pB;s;g"));
  REQUIRE(fused.has_value());
  CHECK(print_word(p, *fused) == "pB");

  CHECK(!fuse_runs(p, word_of(p, "f;g")).has_value());  // zero-flagged

  auto unit = fuse_runs(p, word_of(p, "id(A);f"));
  REQUIRE(unit.has_value());
  CHECK(print_word(p, *unit) == "f");

  // boundary identities around a leading/trailing synthetic letter
  auto padded = fuse_runs(p, word_of(p, "theta(S1)"));
  REQUIRE(padded.has_value());
  CHECK(print_word(p, *padded) == "id(D);theta(S1);id(AB)");
}

TEST_CASE("normalize_sum on the defining sum") {
  Presentation p = gk::test::load_presentation("P1.gk");
  MatrixModel m = gk::test::load_model_fixture(p, "M1.json");
  FormalSum input = parse_term(p, "pA;f;theta(S1) + pB;s;theta(S1)");
  FormalSum normal = normalize_sum(p, input);
  CHECK(print_sum(p, normal) == "pAf;theta(S1);id(AB) + pBs;theta(S1);id(AB)");
  for (const SignedWord& t : normal.terms) CHECK(is_normal_word(p, t.word));
  CHECK(eval(p, m, normal) == eval(p, m, input));
  CHECK(eval(p, m, normal).is_identity());
  CHECK(normalize_sum(p, normal) == normal);
}

TEST_CASE("normalize_sum keeps a single synthetic letter") {
  Presentation p = gk::test::load_presentation("P2.gk");
  MatrixModel m = gk::test::load_model_fixture(p, "M2.json");
  FormalSum input = parse_term(p, "c;inv(c);c");
  FormalSum normal = normalize_sum(p, input);
  REQUIRE(normal.terms.size() == 1);
  CHECK(is_normal_word(p, normal.terms[0].word));
  int synthetics = 0;
  for (const Letter& l : normal.terms[0].word.letters)
    if (letter_is_synthetic(l)) ++synthetics;
  CHECK(synthetics == 1);
  CHECK(eval(p, m, normal) == eval(p, m, parse_term(p, "c")));
}

TEST_CASE("normalize_sum of a morphism word is a single letter") {
  Presentation p = gk::test::load_presentation("P1.gk");
  FormalSum normal = normalize_sum(p, parse_term(p, "pA;f"));
  CHECK(print_sum(p, normal) == "pAf");
}

TEST_CASE("normalize_trace witnesses the defining sum") {
  Presentation p = gk::test::load_presentation("P1.gk");
  RuleSet rules = instantiate_rules(p);
  MatrixModel m = gk::test::load_model_fixture(p, "M1.json");
  FormalSum input = parse_term(p, "pA;f;theta(S1) + pB;s;theta(S1)");
  ProofTrace trace = normalize_trace(p, rules, input);
  CHECK(trace.end == normalize_sum(p, input));
  CHECK(check_trace(p, trace).ok);
  CHECK(soundness_check_trace(p, m, trace));
}

TEST_CASE("normalize_trace through a non-identity representative") {
  Presentation p = gk::test::load_presentation("P3.gk");
  RuleSet rules = instantiate_rules(p);
  MatrixModel m = gk::test::load_model_fixture(p, "M3.json");
  for (const char* text :
       {"theta(S1)", "pA;f;theta(S1)", "theta(S1);pA;f - u;theta(S1');pA;f",
        "g;s;theta(S1);pB;s"}) {
    FormalSum input = parse_term(p, text);
    ProofTrace trace = normalize_trace(p, rules, input);
    INFO(text);
    CHECK(trace.end == normalize_sum(p, input));
    CHECK(check_trace(p, trace).ok);
    CHECK(soundness_check_trace(p, m, trace));
  }
}

TEST_CASE("normalize_trace through a corner representative") {
  Presentation p = gk::test::load_presentation("P2R.gk");
  RuleSet rules = instantiate_rules(p);
  MatrixModel m = gk::test::load_model_fixture(p, "M2R.json");
  for (const char* text : {"inv(c)", "c;inv(c)", "pi;c';inv(c')", "inv(c);pi"}) {
    FormalSum input = parse_term(p, text);
    ProofTrace trace = normalize_trace(p, rules, input);
    INFO(text);
    CHECK(trace.end == normalize_sum(p, input));
    CHECK(check_trace(p, trace).ok);
    CHECK(soundness_check_trace(p, m, trace));
  }
}

TEST_CASE("random words normalize to the alternating shape") {
  Presentation p = gk::test::load_presentation("P3.gk");
  MatrixModel m = gk::test::load_model_fixture(p, "M3.json");
  RuleSet rules = instantiate_rules(p);
  gk::test::Rng rng(31);
  int done = 0;
  while (done < 25) {
    auto w = gk::test::random_word(p, rng, 5);
    if (!w) continue;
    ++done;
    FormalSum input = sum_of_word(*w);
    FormalSum normal = normalize_sum(p, input);
    for (const SignedWord& t : normal.terms) {
      CHECK(is_normal_word(p, t.word));
      for (const Letter& l : t.word.letters) {
        if (letter_is_synthetic(l)) {
          CHECK(in_representative_set(p, letter_dom(p, l)));
          CHECK(in_representative_set(p, letter_cod(p, l)));
        }
      }
    }
    CHECK(normalize_sum(p, normal) == normal);
    CHECK(eval(p, m, normal) == eval(p, m, input));
    ProofTrace trace = normalize_trace(p, rules, input);
    CHECK(trace.end == normal);
    CHECK(check_trace(p, trace).ok);
  }
}
