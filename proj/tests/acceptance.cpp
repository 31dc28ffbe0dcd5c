// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include "gk/cli.hpp"
#include "gk/normalform.hpp"
#include "gk/parser.hpp"
#include "gk/rewrite.hpp"

#include "support.hpp"

using namespace gk;

namespace {

int failures = 0;
std::vector<std::string> notes;

void criterion(int number, const std::string& label,
               const std::function<void()>& body) {
  notes.clear();
  bool ok = true;
  std::string error;
  try {
    body();
  } catch (const std::exception& e) {
    ok = false;
    error = e.what();
  }
  if (!notes.empty() && ok) {
    ok = false;
    error = notes.front();
  }
  if (ok) {
    std::cout << "[PASS] criterion " << number << ": " << label << "\n";
  } else {
    ++failures;
    std::cout << "[FAIL] criterion " << number << ": " << label << " -- " << error
              << "\n";
  }
}

void expect(bool cond, const std::string& what) {
  if (!cond) notes.push_back(what);
}

struct Fixture {
  Presentation p;
  RuleSet rules;
};

Fixture load(const std::string& name) {
  Presentation p = gk::test::load_presentation(name);
  return {p, instantiate_rules(p)};
}

void prove_at_depth_one(const Fixture& fx, const std::string& left,
                        const std::string& right) {
  SearchBudget b;
  b.depth = 1;
  Verdict v = decide_equiv(fx.p, fx.rules, parse_term(fx.p, left),
                           parse_term(fx.p, right), b);
  expect(v.equivalent, left + " == " + right + " not proved at depth 1");
  if (v.equivalent)
    expect(check_trace(fx.p, *v.trace).ok, "trace for " + left + " fails to check");
}

std::vector<MatrixModel> split_models(const Presentation& p, gk::test::Rng& rng) {
  std::vector<MatrixModel> models;
  for (auto [da, db] : {std::pair<std::size_t, std::size_t>{1, 1},
                        {1, 2},
                        {2, 1},
                        {2, 2},
                        {3, 2},
                        {2, 3}}) {
    MatrixModel m = gk::test::random_split_model(p, da, db, rng);
    expect(validate_model(p, m).ok(), "generated model fails validation");
    models.push_back(std::move(m));
  }
  return models;
}

}  // namespace

int main() {
  Fixture p1 = load("P1.gk");
  Fixture p2 = load("P2.gk");
  Fixture p3 = load("P3.gk");

  criterion(1, "defining relations prove at depth 1 with checkable traces", [&] {
    prove_at_depth_one(p2, "c;inv(c)", "id(A)");
    prove_at_depth_one(p2, "inv(c);c", "id(KA)");
    prove_at_depth_one(p2, "id(KA);inv(c)", "inv(c)");
    prove_at_depth_one(p2, "inv(c);id(A)", "inv(c)");
    for (const Fixture* fx : {&p1, &p3}) {
      prove_at_depth_one(*fx, "pA;f;theta(S1) + pB;s;theta(S1)", "id(AB)");
      prove_at_depth_one(*fx, "theta(S1);pA;f + theta(S1);pB;s", "id(D)");
      prove_at_depth_one(*fx, "pA;iA + pB;iB", "id(AB)");
      prove_at_depth_one(*fx, "h0", "h1");
      prove_at_depth_one(*fx, "id(D);theta(S1)", "theta(S1)");
      prove_at_depth_one(*fx, "theta(S1);id(AB)", "theta(S1)");
    }
    prove_at_depth_one(p3, "pA;f';theta(S1') + pB;s';theta(S1')", "id(AB)");
    prove_at_depth_one(p3, "theta(S1');pA;f' + theta(S1');pB;s'", "id(D')");
  });

  criterion(2, "random rewrite walks preserve every model value exactly", [&] {
    gk::test::Rng rng(42);
    SearchBudget b;
    for (const Fixture* fx : {&p1, &p3}) {
      std::vector<MatrixModel> models = split_models(fx->p, rng);
      for (int walk = 0; walk < 60; ++walk) {
        FormalSum start =
            canonical_sum_form(fx->p, gk::test::random_sum(fx->p, rng, 3, 1));
        FormalSum cur = start;
        for (int step = 0; step < 6; ++step) {
          auto steps = enumerate_steps(fx->p, fx->rules, cur, b);
          if (steps.empty()) break;
          cur = steps[rng() % steps.size()].after;
        }
        for (const MatrixModel& m : models) {
          if (!(eval(fx->p, m, start) == eval(fx->p, m, cur))) {
            expect(false, "walk endpoint changed a model value");
            return;
          }
        }
      }
    }
  });

  criterion(3, "universal property: generators embed exactly, rules are sound", [&] {
    gk::test::Rng rng(7);
    auto check_fixture = [&](const Fixture& fx, const std::vector<MatrixModel>& ms) {
      for (const MatrixModel& m : ms) {
        for (HomId h = 0; h < static_cast<HomId>(fx.p.homs.size()); ++h) {
          if (!fx.p.is_generator(h)) continue;
          if (!(eval(fx.p, m, embed_hom(fx.p, h)) == m.gen(h))) {
            expect(false, "embedding of " + fx.p.hom_name(h) + " differs");
            return;
          }
        }
        for (const Rule& r : fx.rules.rules) {
          if (!(eval(fx.p, m, r.lhs) == eval(fx.p, m, r.rhs))) {
            expect(false, "rule " + r.id + " changes the model value");
            return;
          }
        }
      }
    };
    check_fixture(p1, split_models(p1.p, rng));
    check_fixture(p3, split_models(p3.p, rng));
    std::vector<MatrixModel> corner_models;
    for (std::size_t n : {1, 2, 3, 2, 4}) {
      MatrixModel m = gk::test::random_corner_model(p2.p, n, rng);
      expect(validate_model(p2.p, m).ok(), "corner model fails validation");
      corner_models.push_back(std::move(m));
    }
    check_fixture(p2, corner_models);
  });

  criterion(4, "zero object: id(Z (+) Z) is zero; zero annihilates products", [&] {
    Fixture pz = load("PZ.gk");
    SearchBudget b4;
    b4.depth = 4;
    Verdict v = decide_equiv(pz.p, pz.rules, parse_term(pz.p, "id(ZZ)"),
                             parse_term(pz.p, "0(ZZ,ZZ)"), b4);
    expect(v.equivalent, "id(ZZ) == 0 not proved at depth 4");
    if (v.equivalent)
      expect(check_trace(pz.p, *v.trace).ok, "zero-object trace fails to check");

    SearchBudget b3;
    b3.depth = 3;
    FormalSum zero_through_theta =
        product(p1.p, empty_sum(p1.p.object_id("A"), p1.p.object_id("D")),
                parse_term(p1.p, "theta(S1)"));
    Verdict va = decide_equiv(p1.p, p1.rules, zero_through_theta,
                              parse_term(p1.p, "0(A,AB)"), b3);
    expect(va.equivalent, "0 * theta == 0 not proved at depth 3");
  });

  criterion(5, "random words normalize to alternating representative form", [&] {
    gk::test::Rng rng(2718);
    std::vector<MatrixModel> models = split_models(p3.p, rng);
    int done = 0;
    while (done < 50) {
      auto w = gk::test::random_word(p3.p, rng, 5);
      if (!w) continue;
      ++done;
      FormalSum input = sum_of_word(*w);
      FormalSum normal = normalize_sum(p3.p, input);
      for (const SignedWord& t : normal.terms) {
        if (!is_normal_word(p3.p, t.word)) {
          expect(false, "not a normal word: " + print_word(p3.p, t.word));
          return;
        }
      }
      if (!(normalize_sum(p3.p, normal) == normal)) {
        expect(false, "normalize_sum is not idempotent on " + print_sum(p3.p, normal));
        return;
      }
      for (const MatrixModel& m : models) {
        if (!(eval(p3.p, m, normal) == eval(p3.p, m, input))) {
          expect(false, "normal form changed a model value");
          return;
        }
      }
      ProofTrace trace = normalize_trace(p3.p, p3.rules, input);
      if (!check_trace(p3.p, trace).ok) {
        expect(false, "normalization witness fails to check");
        return;
      }
    }
  });

  criterion(6, "product laws hold up to canonical form on random triples", [&] {
    const Presentation& p = p3.p;
    gk::test::Rng rng(314);
    auto canon = [&](const FormalSum& s) { return canonical_sum_form(p, s); };

    int triples = 0;
    while (triples < 200) {
      FormalSum a = gk::test::random_sum(p, rng, 3, 1);
      auto w2 = gk::test::random_word(p, rng, 3);
      if (!w2 || w2->dom != a.cod) continue;
      auto w3 = gk::test::random_word(p, rng, 3);
      if (!w3 || w3->dom != w2->cod) continue;
      ++triples;
      FormalSum b = sum_of_word(*w2), c = sum_of_word(*w3);
      if (!(canon(product(p, product(p, a, b), c)) ==
            canon(product(p, a, product(p, b, c))))) {
        expect(false, "product associativity fails");
        return;
      }
      FormalSum ca = canon(a);
      if (!(canon(ca) == ca)) {
        expect(false, "canonical form is not idempotent");
        return;
      }
      if (!(negate(negate(a)) == a)) {
        expect(false, "negate is not involutive");
        return;
      }
    }

    int rounds = 0;
    while (rounds < 200) {
      FormalSum a = gk::test::random_sum(p, rng, 3, 1);
      FormalSum b = gk::test::random_sum(p, rng, 3, 1);
      if (a.dom != b.dom || a.cod != b.cod) continue;
      auto right = gk::test::random_word(p, rng, 2);
      if (!right || right->dom != a.cod) continue;
      auto left = gk::test::random_word(p, rng, 2);
      if (!left || left->cod != a.dom) continue;
      ++rounds;
      FormalSum r = sum_of_word(*right), l = sum_of_word(*left);
      if (!(canon(product(p, add(a, b), r)) ==
            canon(add(product(p, a, r), product(p, b, r))))) {
        expect(false, "right bilinearity fails");
        return;
      }
      if (!(canon(product(p, l, add(a, b))) ==
            canon(add(product(p, l, a), product(p, l, b))))) {
        expect(false, "left bilinearity fails");
        return;
      }
    }
  });

  criterion(7, "repeated equiv invocations are byte-identical", [&] {
    auto dir = std::filesystem::temp_directory_path();
    auto run_once = [&](const std::string& trace_name) {
      std::ostringstream out, err;
      int code = run_cli({"equiv", gk::test::fixture_path("P3.gk"), "-l",
                          "pA;f;theta(S1) + pB;s;theta(S1)", "-r", "id(AB)",
                          "--depth", "2", "--trace", (dir / trace_name).string()},
                         out, err);
      std::ifstream f(dir / trace_name);
      std::ostringstream trace;
      trace << f.rdbuf();
      return std::tuple(code, out.str(), trace.str());
    };
    auto [c1, o1, t1] = run_once("gk_acc1.json");
    auto [c2, o2, t2] = run_once("gk_acc2.json");
    expect(c1 == 0, "equiv did not prove the relation");
    expect(c1 == c2 && o1 == o2, "stdout differs between runs");
    expect(t1 == t2 && !t1.empty(), "trace bytes differ between runs");
  });

  criterion(8, "model validation names each broken condition (a)-(e)", [&] {
    MatrixModel m1 = gk::test::load_model_fixture(p1.p, "M1.json");
    auto mutated = [&](const std::string& hom, IntMatrix value) {
      MatrixModel m = m1;
      m.gens[p1.p.hom_id(hom)] = std::move(value);
      return validate_model(p1.p, m);
    };
    ModelReport ra = mutated("gs", IntMatrix::identity(2));
    expect(ra.has('a') && !ra.has('b') && !ra.has('c') && !ra.has('d') && !ra.has('e'),
           "(a) mutation not isolated");
    ModelReport rb = mutated("h1", IntMatrix(1, 1, {1}));
    expect(rb.has('b'), "(b) mutation not named");
    ModelReport rd = mutated("s", IntMatrix(2, 1, {0, 2}));
    expect(rd.has('d'), "(d) mutation not named");
    ModelReport re = mutated("iA", IntMatrix(2, 1, {1, 1}));
    expect(re.has('e'), "(e) mutation not named");

    MatrixModel m2 = gk::test::load_model_fixture(p2.p, "M2.json");
    m2.gens[p2.p.hom_id("c")] = IntMatrix(2, 2, {0, 2, 1, 0});
    ModelReport rc = validate_model(p2.p, m2);
    expect(rc.has('c') && rc.violations.size() == 1, "(c) mutation not isolated");
  });

  if (failures == 0) {
    std::cout << "all criteria passed\n";
    return 0;
  }
  std::cout << failures << " criteria failed\n";
  return 1;
}
