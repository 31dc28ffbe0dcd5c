#include "gk/rewrite.hpp"

#include <algorithm>
#include <deque>
#include <map>
#include <set>

#include <json.hpp>

#include "gk/parser.hpp"

namespace gk {

namespace {

FormalSum sum_of_letter(const Presentation& p, Letter l) {
  return sum_of_word(make_word(p, {l}));
}

}  // namespace

std::optional<int> RuleSet::index_of(const std::string& id) const {
  for (int i = 0; i < size(); ++i)
    if (rules[i].id == id) return i;
  return std::nullopt;
}

RuleSet instantiate_rules(const Presentation& p) {
  RuleSet rs;
  auto push = [&](std::string id, FormalSum lhs, FormalSum rhs) {
    rs.rules.push_back({std::move(id), canonical_sum_form(p, lhs),
                        canonical_sum_form(p, rhs)});
  };

  for (const SumDecl& sd : p.sums) {
    FormalSum lhs = add(product(p, embed_hom(p, sd.p_left), embed_hom(p, sd.i_left)),
                        product(p, embed_hom(p, sd.p_right), embed_hom(p, sd.i_right)));
    push("R4(" + p.object_name(sd.sum_object) + ")", lhs,
         embed_hom(p, p.identity_hom(sd.sum_object)));
  }

  for (const CompositionEntry& e : p.table) {
    push("R5(" + p.hom_name(e.f) + "," + p.hom_name(e.g) + ")",
         product(p, embed_hom(p, e.f), embed_hom(p, e.g)), embed_hom(p, e.result));
  }
  for (HomId h = 0; h < static_cast<HomId>(p.homs.size()); ++h) {
    if (!p.is_generator(h)) continue;
    HomId idl = p.identity_hom(p.dom(h));
    HomId idr = p.identity_hom(p.cod(h));
    push("R5(" + p.hom_name(idl) + "," + p.hom_name(h) + ")",
         product(p, embed_hom(p, idl), embed_hom(p, h)), embed_hom(p, h));
    push("R5(" + p.hom_name(h) + "," + p.hom_name(idr) + ")",
         product(p, embed_hom(p, h), embed_hom(p, idr)), embed_hom(p, h));
  }
  for (ObjectId o = 0; o < static_cast<ObjectId>(p.objects.size()); ++o) {
    if (p.objects[o].is_zero) continue;
    HomId id = p.identity_hom(o);
    push("R5(" + p.hom_name(id) + "," + p.hom_name(id) + ")",
         product(p, embed_hom(p, id), embed_hom(p, id)), embed_hom(p, id));
  }

  auto unit_rules = [&](Letter q, const std::string& qname) {
    HomId idl = p.identity_hom(letter_dom(p, q));
    HomId idr = p.identity_hom(letter_cod(p, q));
    push("R6(" + qname + ",L)", product(p, embed_hom(p, idl), sum_of_letter(p, q)),
         sum_of_letter(p, q));
    push("R6(" + qname + ",R)", product(p, sum_of_letter(p, q), embed_hom(p, idr)),
         sum_of_letter(p, q));
  };
  for (int ci = 0; ci < static_cast<int>(p.corners.size()); ++ci)
    unit_rules(Letter::corner_inv(ci), "inv(" + p.corners[ci].name + ")");
  for (int si = 0; si < static_cast<int>(p.splitexacts.size()); ++si)
    unit_rules(Letter::theta(si), "theta(" + p.splitexacts[si].name + ")");

  for (const HomotopyDecl& hd : p.homotopies) {
    push("R7(" + p.hom_name(hd.f0) + "," + p.hom_name(hd.f1) + ")",
         embed_hom(p, hd.f0), embed_hom(p, hd.f1));
  }

  for (int ci = 0; ci < static_cast<int>(p.corners.size()); ++ci) {
    const CornerDecl& cd = p.corners[ci];
    Letter inv = Letter::corner_inv(ci);
    push("R8(" + cd.name + ",A)",
         product(p, embed_hom(p, cd.emb), sum_of_letter(p, inv)),
         embed_hom(p, p.identity_hom(p.dom(cd.emb))));
    push("R8(" + cd.name + ",K)",
         product(p, sum_of_letter(p, inv), embed_hom(p, cd.emb)),
         embed_hom(p, p.identity_hom(p.cod(cd.emb))));
  }

  for (int si = 0; si < static_cast<int>(p.splitexacts.size()); ++si) {
    const SplitExactDecl& se = p.splitexacts[si];
    Letter th = Letter::theta(si);
    push("R9(" + se.name + "," + p.object_name(p.sums[se.sum].sum_object) + ")",
         product(p, sigma_of(p, si), sum_of_letter(p, th)),
         embed_hom(p, p.identity_hom(p.sums[se.sum].sum_object)));
    push("R9(" + se.name + "," + p.object_name(se.d) + ")",
         product(p, sum_of_letter(p, th), sigma_of(p, si)),
         embed_hom(p, p.identity_hom(se.d)));
  }

  return rs;
}

namespace {

// sign * (y ++ side ++ z), distributed over the side's terms
FormalSum distribute(const Presentation& p, int sign, const std::optional<Word>& y,
                     const FormalSum& side, const std::optional<Word>& z) {
  if (y && y->cod != side.dom)
    throw TypeError("left context ends at " + p.object_name(y->cod) +
                    " but the rule side starts at " + p.object_name(side.dom));
  if (z && z->dom != side.cod)
    throw TypeError("right context starts at " + p.object_name(z->dom) +
                    " but the rule side ends at " + p.object_name(side.cod));
  FormalSum out = empty_sum(y ? y->dom : side.dom, z ? z->cod : side.cod);
  for (const SignedWord& t : side.terms) {
    Word w = t.word;
    if (y) w = concat(p, *y, w);
    if (z) w = concat(p, w, *z);
    out.terms.push_back({sign * t.sign, std::move(w)});
  }
  return out;
}

// indices of `pattern`'s terms inside `state` (first unused match per term),
// or nullopt when not a sub-multiset
std::optional<std::vector<int>> match_indices(const FormalSum& state,
                                              const FormalSum& pattern) {
  std::vector<bool> used(state.terms.size(), false);
  std::vector<int> out;
  for (const SignedWord& pt : pattern.terms) {
    bool found = false;
    for (std::size_t i = 0; i < state.terms.size(); ++i) {
      if (used[i]) continue;
      if (state.terms[i].sign == pt.sign && state.terms[i].word == pt.word) {
        used[i] = true;
        out.push_back(static_cast<int>(i));
        found = true;
        break;
      }
    }
    if (!found) return std::nullopt;
  }
  return out;
}

FormalSum remove_and_add(const Presentation& p, const FormalSum& state,
                         const std::vector<int>& remove, const FormalSum& added) {
  FormalSum out = empty_sum(state.dom, state.cod);
  std::vector<bool> drop(state.terms.size(), false);
  for (int i : remove) drop[i] = true;
  for (std::size_t i = 0; i < state.terms.size(); ++i)
    if (!drop[i]) out.terms.push_back(state.terms[i]);
  for (const SignedWord& t : added.terms) out.terms.push_back(t);
  return canonical_sum_form(p, out);
}

struct PreparedStep {
  FormalSum pattern;
  FormalSum replacement;
};

PreparedStep prepare(const Presentation& p, const RuleSet& rules,
                     const ContextApplication& app) {
  if (app.rule < 0 || app.rule >= rules.size()) throw Error("unknown rule index");
  const Rule& r = rules[app.rule];
  const FormalSum& from = app.forward ? r.lhs : r.rhs;
  const FormalSum& to = app.forward ? r.rhs : r.lhs;
  if (app.sign != 1 && app.sign != -1) throw Error("application sign must be +1 or -1");
  return {distribute(p, app.sign, app.left, from, app.right),
          distribute(p, app.sign, app.left, to, app.right)};
}

}  // namespace

FormalSum apply_rule(const Presentation& p, const RuleSet& rules, const FormalSum& s,
                     const ContextApplication& app) {
  FormalSum state = canonical_sum_form(p, s);
  PreparedStep ps = prepare(p, rules, app);
  if (ps.pattern.dom != state.dom || ps.pattern.cod != state.cod)
    throw TypeError("application type does not match the sum");
  if (app.expand) {
    FormalSum out = state;
    for (const SignedWord& t : ps.replacement.terms) out.terms.push_back(t);
    for (const SignedWord& t : ps.pattern.terms)
      out.terms.push_back({-t.sign, t.word});
    return canonical_sum_form(p, out);
  }
  auto matched = match_indices(state, ps.pattern);
  if (!matched)
    throw Error("pattern of " + rules[app.rule].id + " is not present in the sum");
  return remove_and_add(p, state, *matched, ps.replacement);
}

std::vector<ProofStep> enumerate_steps(const Presentation& p, const RuleSet& rules,
                                       const FormalSum& s, const SearchBudget& budget) {
  const FormalSum state = canonical_sum_form(p, s);
  std::size_t cap = static_cast<std::size_t>(budget.max_word_len);
  for (const SignedWord& t : state.terms) cap = std::max(cap, t.word.size());

  std::vector<ProofStep> out;
  std::set<std::string> seen_after;
  auto emit = [&](const ContextApplication& app, const PreparedStep& ps) {
    FormalSum after;
    if (app.expand) {
      FormalSum tmp = state;
      for (const SignedWord& t : ps.replacement.terms) tmp.terms.push_back(t);
      for (const SignedWord& t : ps.pattern.terms) tmp.terms.push_back({-t.sign, t.word});
      after = canonical_sum_form(p, tmp);
    } else {
      auto matched = match_indices(state, ps.pattern);
      if (!matched) return;
      after = remove_and_add(p, state, *matched, ps.replacement);
    }
    for (const SignedWord& t : after.terms)
      if (t.word.size() > cap) return;
    if (after == state) return;
    std::string key = print_sum(p, after);
    if (!seen_after.insert(key).second) return;
    ProofStep step;
    step.app = app;
    if (!app.expand) step.matched = *match_indices(state, ps.pattern);
    step.before = state;
    step.after = std::move(after);
    out.push_back(std::move(step));
  };

  for (int ri = 0; ri < rules.size(); ++ri) {
    const Rule& r = rules[ri];
    for (bool forward : {true, false}) {
      const FormalSum& from = forward ? r.lhs : r.rhs;
      if (from.empty()) {
        // cancelling-pair introduction degenerates to plain insertion of the
        // other side; admitted with empty contexts when the types line up
        if (from.dom == state.dom && from.cod == state.cod) {
          for (int sign : {1, -1}) {
            ContextApplication app{ri, forward, sign, std::nullopt, std::nullopt, false};
            emit(app, prepare(p, rules, app));
          }
        }
        continue;
      }
      // contexts are read off the state: every occurrence of the first
      // pattern term inside a summand yields a candidate (sign, y, z)
      const Word& anchor = from.terms.front().word;
      const int anchor_sign = from.terms.front().sign;
      std::set<std::string> tried;
      for (const SignedWord& t : state.terms) {
        if (t.word.size() < anchor.size()) continue;
        for (std::size_t pos = 0; pos + anchor.size() <= t.word.size(); ++pos) {
          bool hit = true;
          for (std::size_t k = 0; k < anchor.size(); ++k) {
            if (!(t.word.letters[pos + k] == anchor.letters[k])) {
              hit = false;
              break;
            }
          }
          if (!hit) continue;
          std::optional<Word> y, z;
          if (pos > 0)
            y = make_word(p, {t.word.letters.begin(), t.word.letters.begin() + pos});
          if (pos + anchor.size() < t.word.size())
            z = make_word(p, {t.word.letters.begin() + pos + anchor.size(),
                              t.word.letters.end()});
          int sign = t.sign * anchor_sign;
          std::string key = std::to_string(sign) + "|" +
                            (y ? print_word(p, *y) : "") + "|" +
                            (z ? print_word(p, *z) : "");
          if (!tried.insert(key).second) continue;
          ContextApplication app{ri, forward, sign, y, z, false};
          emit(app, prepare(p, rules, app));
        }
      }
    }
    if (budget.expansions) {
      for (bool forward : {true, false}) {
        const FormalSum& from = forward ? r.lhs : r.rhs;
        if (from.empty()) continue;
        if (from.dom != state.dom || from.cod != state.cod) continue;
        for (int sign : {1, -1}) {
          ContextApplication app{ri, forward, sign, std::nullopt, std::nullopt, true};
          emit(app, prepare(p, rules, app));
        }
      }
    }
  }
  return out;
}

namespace {

struct VisitedEntry {
  std::string parent;  // key of the predecessor state, empty for the root
  ProofStep step;      // step taken from parent to this state
};

ProofStep reversed(const ProofStep& step) {
  ProofStep out;
  out.app = step.app;
  out.app.forward = !step.app.forward;
  out.before = step.after;
  out.after = step.before;
  // recompute matched indices against the new before-state
  out.matched.clear();
  return out;
}

}  // namespace

Verdict decide_equiv(const Presentation& p, const RuleSet& rules, const FormalSum& s1,
                     const FormalSum& s2, const SearchBudget& budget) {
  if (s1.dom != s2.dom || s1.cod != s2.cod)
    throw TypeError("cannot compare sums of different types");

  const FormalSum a = canonical_sum_form(p, s1);
  const FormalSum b = canonical_sum_form(p, s2);

  Verdict verdict;
  // side 0 grows from a, side 1 from b
  std::map<std::string, VisitedEntry> visited[2];
  std::map<std::string, FormalSum> states[2];
  std::vector<std::string> frontier[2];

  const std::string ka = print_sum(p, a);
  const std::string kb = print_sum(p, b);
  visited[0][ka] = {};
  states[0][ka] = a;
  frontier[0] = {ka};
  visited[1][kb] = {};
  states[1][kb] = b;
  frontier[1] = {kb};

  auto build_trace = [&](const std::string& meet) {
    ProofTrace trace;
    trace.start = a;
    trace.end = b;
    std::vector<ProofStep> left;
    for (std::string k = meet; !visited[0][k].parent.empty() || k != ka;) {
      const VisitedEntry& e = visited[0][k];
      left.push_back(e.step);
      k = e.parent;
      if (k == ka && visited[0][k].parent.empty()) break;
    }
    std::reverse(left.begin(), left.end());
    trace.steps = std::move(left);
    for (std::string k = meet; k != kb;) {
      const VisitedEntry& e = visited[1][k];
      ProofStep r = reversed(e.step);
      trace.steps.push_back(r);
      k = e.parent;
    }
    // fill in matched indices for reversed steps
    for (ProofStep& st : trace.steps) {
      if (!st.app.expand && st.matched.empty()) {
        PreparedStep ps = prepare(p, rules, st.app);
        auto m = match_indices(st.before, ps.pattern);
        if (m) st.matched = *m;
      }
    }
    return trace;
  };

  if (ka == kb) {
    verdict.equivalent = true;
    verdict.trace = ProofTrace{a, b, {}};
    verdict.stats.explored = 2;
    return verdict;
  }

  int total_states = 2;
  int levels_used = 0;
  int side = 0;
  while (levels_used < budget.depth) {
    if (frontier[side].empty() && frontier[1 - side].empty()) break;
    if (frontier[side].empty()) side = 1 - side;
    std::vector<std::string> next;
    bool exhausted = false;
    for (const std::string& key : frontier[side]) {
      const FormalSum cur = states[side][key];
      for (ProofStep& step : enumerate_steps(p, rules, cur, budget)) {
        std::string nk = print_sum(p, step.after);
        if (visited[side].count(nk)) continue;
        if (total_states >= budget.max_states) {
          exhausted = true;
          break;
        }
        visited[side][nk] = {key, step};
        states[side][nk] = step.after;
        next.push_back(nk);
        ++total_states;
      }
      if (exhausted) break;
    }
    frontier[side] = std::move(next);
    ++levels_used;
    // meet check in insertion order
    for (const std::string& k : frontier[side]) {
      if (visited[1 - side].count(k)) {
        verdict.equivalent = true;
        verdict.trace = build_trace(k);
        verdict.stats.explored = total_states;
        return verdict;
      }
    }
    if (exhausted) {
      verdict.stats.states_exhausted = true;
      break;
    }
    side = 1 - side;
  }

  verdict.stats.explored = total_states;
  verdict.stats.frontier_left = static_cast<int>(frontier[0].size());
  verdict.stats.frontier_right = static_cast<int>(frontier[1].size());
  return verdict;
}

CheckResult check_trace(const Presentation& p, const ProofTrace& trace) {
  RuleSet rules = instantiate_rules(p);
  if (trace.start != canonical_sum_form(p, trace.start))
    return {false, -1, "start is not canonical"};
  if (trace.end != canonical_sum_form(p, trace.end))
    return {false, -1, "end is not canonical"};
  FormalSum cur = trace.start;
  for (int i = 0; i < static_cast<int>(trace.steps.size()); ++i) {
    const ProofStep& step = trace.steps[i];
    if (!(step.before == cur))
      return {false, i, "before-state does not chain"};
    FormalSum after;
    try {
      after = apply_rule(p, rules, cur, step.app);
    } catch (const Error& e) {
      return {false, i, e.what()};
    }
    if (!(after == step.after))
      return {false, i, "recomputed after-state differs"};
    if (!step.app.expand && !step.matched.empty()) {
      PreparedStep ps = prepare(p, rules, step.app);
      auto m = match_indices(cur, ps.pattern);
      if (!m || *m != step.matched)
        return {false, i, "matched indices are inconsistent"};
    }
    cur = after;
  }
  if (!(cur == trace.end)) return {false, -1, "chain does not reach the end"};
  return {true, -1, ""};
}

bool soundness_check_trace(const Presentation& p, const MatrixModel& m,
                           const ProofTrace& trace) {
  IntMatrix value = eval(p, m, trace.start);
  for (const ProofStep& step : trace.steps) {
    if (eval(p, m, step.before) != value) return false;
    IntMatrix next = eval(p, m, step.after);
    if (next != value) return false;
  }
  return eval(p, m, trace.end) == value;
}

std::string trace_to_json(const Presentation& p, const ProofTrace& trace) {
  RuleSet rules = instantiate_rules(p);
  nlohmann::ordered_json j;
  j["start"] = print_sum(p, trace.start);
  j["end"] = print_sum(p, trace.end);
  j["steps"] = nlohmann::ordered_json::array();
  for (const ProofStep& step : trace.steps) {
    nlohmann::ordered_json js;
    js["kind"] = step.app.expand ? "expand" : "rewrite";
    js["ruleId"] = rules[step.app.rule].id;
    js["direction"] = step.app.forward ? "fwd" : "rev";
    js["sign"] = step.app.sign;
    js["y"] = step.app.left ? print_word(p, *step.app.left) : "";
    js["z"] = step.app.right ? print_word(p, *step.app.right) : "";
    js["matchedIndices"] = step.matched;
    js["after"] = print_sum(p, step.after);
    j["steps"].push_back(std::move(js));
  }
  return j.dump(1) + "\n";
}

ProofTrace trace_from_json(const Presentation& p, const std::string& json_text) {
  RuleSet rules = instantiate_rules(p);
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("trace: ") + e.what(), {});
  }
  auto parse_sum_field = [&](const nlohmann::json& v, const char* what) {
    if (!v.is_string()) throw ParseError(std::string("trace: ") + what + " must be a term", {});
    return parse_term(p, v.get<std::string>());
  };
  ProofTrace trace;
  trace.start = parse_sum_field(j.at("start"), "start");
  trace.end = parse_sum_field(j.at("end"), "end");
  FormalSum cur = trace.start;
  for (const auto& js : j.at("steps")) {
    ProofStep step;
    std::string rule_id = js.at("ruleId").get<std::string>();
    auto ri = rules.index_of(rule_id);
    if (!ri) throw ParseError("trace: unknown rule " + rule_id, {});
    step.app.rule = *ri;
    step.app.expand = js.at("kind").get<std::string>() == "expand";
    step.app.forward = js.at("direction").get<std::string>() == "fwd";
    step.app.sign = js.at("sign").get<int>();
    auto parse_ctx = [&](const nlohmann::json& v) -> std::optional<Word> {
      std::string text = v.get<std::string>();
      if (text.empty()) return std::nullopt;
      FormalSum s = parse_term(p, text);
      if (s.terms.size() != 1 || s.terms[0].sign != 1)
        throw ParseError("trace: context must be a single positive word", {});
      return s.terms[0].word;
    };
    step.app.left = parse_ctx(js.at("y"));
    step.app.right = parse_ctx(js.at("z"));
    step.matched = js.at("matchedIndices").get<std::vector<int>>();
    step.before = cur;
    step.after = parse_sum_field(js.at("after"), "after");
    cur = step.after;
    trace.steps.push_back(std::move(step));
  }
  return trace;
}

}  // namespace gk
