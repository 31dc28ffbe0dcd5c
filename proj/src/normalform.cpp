#include "gk/normalform.hpp"

#include <algorithm>

namespace gk {

namespace {

struct Conjugation {
  Letter before;  // morphism letter in front of the replacement synthetic
  Letter synth;   // replacement synthetic letter
  Letter after;   // morphism letter behind it
  bool identity = false;
};

Conjugation conjugation_of(const Presentation& p, Letter l) {
  if (l.kind == Letter::Kind::corner_inv) {
    const CornerDecl& cd = p.corners[l.ref];
    ObjectId base = p.dom(cd.emb);
    const RepresentativeDecl* rd = p.rep_decl(base);
    if (rd == nullptr) {
      return {Letter::gen(p.identity_hom(p.cod(cd.emb))), l,
              Letter::gen(p.identity_hom(base)), true};
    }
    for (const CornerLink& link : rd->corner_links) {
      if (link.corner == l.ref) {
        return {Letter::gen(link.stab_iso), Letter::corner_inv(link.corner_rep),
                Letter::gen(rd->iso_inv), false};
      }
    }
    throw Error("missing linkage for inv(" + cd.name + "): rep of " +
                p.object_name(base) + " declares no corner link");
  }
  if (l.kind == Letter::Kind::theta) {
    const SplitExactDecl& se = p.splitexacts[l.ref];
    const RepresentativeDecl* rd = p.rep_decl(se.d);
    if (rd == nullptr) {
      return {Letter::gen(p.identity_hom(se.d)), l,
              Letter::gen(p.identity_hom(p.sums[se.sum].sum_object)), true};
    }
    for (const SplitLink& link : rd->split_links) {
      if (link.split == l.ref) {
        return {Letter::gen(rd->iso), Letter::theta(link.split_rep),
                Letter::gen(link.sum_leg), false};
      }
    }
    throw Error("missing linkage for theta(" + se.name + "): rep of " +
                p.object_name(se.d) + " declares no split link");
  }
  throw Error("not a synthetic letter");
}

bool is_zero_gen(const Presentation& p, Letter l) {
  return l.kind == Letter::Kind::gen && p.is_zero(l.ref);
}

std::optional<std::vector<Letter>> desynth_letters(const Presentation& p,
                                                   const Word& w) {
  std::vector<Letter> out;
  for (const Letter& l : w.letters) {
    if (!letter_is_synthetic(l)) {
      out.push_back(l);
      continue;
    }
    Conjugation c = conjugation_of(p, l);
    if (is_zero_gen(p, c.before) || is_zero_gen(p, c.after)) return std::nullopt;
    out.push_back(c.before);
    out.push_back(c.synth);
    out.push_back(c.after);
  }
  return out;
}

}  // namespace

bool in_representative_set(const Presentation& p, ObjectId o) {
  return p.rep_of(o) == o;
}

bool is_normal_word(const Presentation& p, const Word& w) {
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    const Letter& l = w.letters[i];
    if (i % 2 == 0) {
      if (letter_is_synthetic(l)) return false;
    } else {
      if (!letter_is_synthetic(l)) return false;
      if (!in_representative_set(p, letter_dom(p, l)) ||
          !in_representative_set(p, letter_cod(p, l)))
        return false;
    }
  }
  return w.letters.size() % 2 == 1;  // begins and ends with a morphism letter
}

Word desyntheticize(const Presentation& p, const Word& w) {
  auto letters = desynth_letters(p, w);
  if (!letters)
    throw Error("conjugation introduces a zero morphism; the word is zero");
  return make_word(p, *letters);
}

std::optional<Word> fuse_runs(const Presentation& p, const Word& w) {
  std::vector<Letter> out;
  std::optional<HomId> run;
  auto flush = [&](ObjectId boundary) -> bool {  // true when the run is zero
    HomId h = run.value_or(p.identity_hom(boundary));
    run.reset();
    if (p.is_zero(h)) return true;
    out.push_back(Letter::gen(h));
    return false;
  };
  for (const Letter& l : w.letters) {
    if (letter_is_synthetic(l)) {
      if (flush(letter_dom(p, l))) return std::nullopt;
      out.push_back(l);
    } else {
      run = run ? compose_lookup(p, *run, l.ref) : l.ref;
      if (p.is_zero(*run)) return std::nullopt;
    }
  }
  if (flush(w.cod)) return std::nullopt;
  return make_word(p, out);
}

FormalSum normalize_sum(const Presentation& p, const FormalSum& s) {
  FormalSum out = empty_sum(s.dom, s.cod);
  for (const SignedWord& t : canonical_sum_form(p, s).terms) {
    auto letters = desynth_letters(p, t.word);
    if (!letters) continue;
    auto fused = fuse_runs(p, make_word(p, *letters));
    if (!fused) continue;
    out.terms.push_back({t.sign, *fused});
  }
  return canonical_sum_form(p, out);
}

namespace {

// Rule applications recorded against an evolving sum. Steps are addressed
// with fully explicit contexts, so intermediate states never need to be
// searched.
class TraceBuilder {
 public:
  TraceBuilder(const Presentation& p, const RuleSet& rules, const FormalSum& start)
      : p_(p), rules_(rules), cur_(canonical_sum_form(p, start)) {
    trace_.start = cur_;
  }

  // False when the addressed summand is no longer present: an intermediate
  // form of the summand under construction cancelled against another
  // summand. The caller then abandons this summand; the cancelled partner
  // is skipped the same way when its turn comes, dropping exactly the pair
  // normalize_sum cancels.
  bool apply(const std::string& rule_id, bool forward, int sign,
             std::optional<Word> y, std::optional<Word> z) {
    auto ri = rules_.index_of(rule_id);
    if (!ri) throw Error("trace construction: no rule " + rule_id);
    ProofStep step;
    step.app = {*ri, forward, sign, std::move(y), std::move(z), false};
    step.before = cur_;
    try {
      step.after = apply_rule(p_, rules_, cur_, step.app);
    } catch (const Error&) {
      return false;
    }
    cur_ = step.after;
    trace_.steps.push_back(std::move(step));
    return true;
  }

  ProofTrace finish() {
    // matched indices, recomputed the way check_trace does
    FormalSum cur = trace_.start;
    for (ProofStep& step : trace_.steps) {
      step.before = cur;
      const Rule& r = rules_[step.app.rule];
      const FormalSum& from = step.app.forward ? r.lhs : r.rhs;
      std::vector<bool> used(cur.terms.size(), false);
      step.matched.clear();
      for (const SignedWord& t : from.terms) {
        Word w = t.word;
        if (step.app.left) w = concat(p_, *step.app.left, w);
        if (step.app.right) w = concat(p_, w, *step.app.right);
        SignedWord want{step.app.sign * t.sign, std::move(w)};
        for (std::size_t i = 0; i < cur.terms.size(); ++i) {
          if (!used[i] && cur.terms[i] == want) {
            used[i] = true;
            step.matched.push_back(static_cast<int>(i));
            break;
          }
        }
      }
      cur = step.after;
    }
    trace_.end = cur_;
    return std::move(trace_);
  }

 private:
  const Presentation& p_;
  const RuleSet& rules_;
  FormalSum cur_;
  ProofTrace trace_;
};

using Letters = std::vector<Letter>;

std::optional<Word> join(const Presentation& p, const Letters& a, const Letters& b) {
  Letters all = a;
  all.insert(all.end(), b.begin(), b.end());
  if (all.empty()) return std::nullopt;
  return make_word(p, all);
}

std::string rule_r5(const Presentation& p, HomId f, HomId g) {
  return "R5(" + p.hom_name(f) + "," + p.hom_name(g) + ")";
}

// inv(c) == stab inv(c') pi_inv, derived through the linkage square
// pi;c' = c;stab and the two corner inversion relations.
bool corner_chain(TraceBuilder& tb, const Presentation& p, int sign,
                  const Letters& pre, const Letters& suf, int corner,
                  const Conjugation& cj) {
  const CornerDecl& cd = p.corners[corner];
  const CornerDecl& cdp = p.corners[cj.synth.ref];
  const RepresentativeDecl& rd = *p.rep_decl(p.dom(cd.emb));
  const HomId pi = rd.iso, pii = rd.iso_inv, stab = cj.before.ref;
  const HomId x = compose_lookup(p, pi, cdp.emb);
  if (p.is_zero(x))
    throw Error("trace construction: degenerate corner linkage for " + cd.name);
  const HomId idAp = p.identity_hom(rd.rep);
  const HomId idKA = p.identity_hom(p.cod(cd.emb));
  const Letter IC = Letter::corner_inv(corner);
  const Letter ICP = cj.synth;
  const std::string qn = "inv(" + cd.name + ")";
  auto y = [&](const Letters& mid) { return join(p, pre, mid); };
  auto z = [&](const Letters& mid) { return join(p, mid, suf); };

  return tb.apply("R6(" + qn + ",R)", false, sign, y({}), z({})) &&
         tb.apply(rule_r5(p, pi, pii), false, sign, y({IC}), z({})) &&
         tb.apply(rule_r5(p, idAp, pii), false, sign, y({IC, Letter::gen(pi)}),
                  z({})) &&
         tb.apply("R8(" + cdp.name + ",A)", false, sign, y({IC, Letter::gen(pi)}),
                  z({Letter::gen(pii)})) &&
         tb.apply(rule_r5(p, pi, cdp.emb), true, sign, y({IC}),
                  z({ICP, Letter::gen(pii)})) &&
         tb.apply(rule_r5(p, cd.emb, stab), false, sign, y({IC}),
                  z({ICP, Letter::gen(pii)})) &&
         tb.apply("R8(" + cd.name + ",K)", true, sign, y({}),
                  z({Letter::gen(stab), ICP, Letter::gen(pii)})) &&
         tb.apply(rule_r5(p, idKA, stab), true, sign, y({}),
                  z({ICP, Letter::gen(pii)}));
}

// theta(S) == pi_D theta(S') sum_leg, derived through the linkage squares
// and the two sigma inversion relations of S and S'.
bool theta_chain(TraceBuilder& tb, const Presentation& p, int sign,
                 const Letters& pre, const Letters& suf, int split,
                 const Conjugation& cj) {
  const SplitExactDecl& se = p.splitexacts[split];
  const SplitExactDecl& sp = p.splitexacts[cj.synth.ref];
  const RepresentativeDecl& rd = *p.rep_decl(se.d);
  const HomId v = rd.iso, vi = rd.iso_inv;
  const HomId leg = cj.after.ref;
  const SumDecl& sum = p.sums[se.sum];
  auto iso_of = [&](ObjectId o) {
    const RepresentativeDecl* r = p.rep_decl(o);
    return r ? r->iso : p.identity_hom(o);
  };
  const HomId piA = iso_of(se.a), piB = iso_of(se.b);
  const HomId v1 = compose_lookup(p, leg, sum.p_left);
  const HomId v2 = compose_lookup(p, leg, sum.p_right);
  const HomId x1 = compose_lookup(p, piA, sp.f);
  const HomId x2 = compose_lookup(p, piB, sp.s);
  for (HomId h : {v1, v2, x1, x2}) {
    if (p.is_zero(h))
      throw Error("trace construction: degenerate split linkage for " + se.name);
  }
  const HomId idDp = p.identity_hom(sp.d);
  const HomId idAB = p.identity_hom(sum.sum_object);
  const Letter TH = Letter::theta(split);
  const Letter THP = cj.synth;
  const Letter V = Letter::gen(v), VI = Letter::gen(vi), LEG = Letter::gen(leg);
  const std::string thn = "theta(" + se.name + ")";
  auto y = [&](const Letters& mid) { return join(p, pre, mid); };
  auto z = [&](const Letters& mid) { return join(p, mid, suf); };

  if (!tb.apply("R6(" + thn + ",L)", false, sign, y({}), z({}))) return false;
  if (!tb.apply(rule_r5(p, v, vi), false, sign, y({}), z({TH}))) return false;
  if (!tb.apply(rule_r5(p, idDp, vi), false, sign, y({V}), z({TH}))) return false;
  if (!tb.apply("R9(" + sp.name + "," + p.object_name(sp.d) + ")", false, sign,
                y({V}), z({VI, TH})))
    return false;
  // each branch: ... theta(S') p' f' vi theta(S) ... down to ... leg p f theta(S)
  auto branch = [&](HomId vv, HomId pi_side, HomId fs, HomId hom, HomId proj) {
    // vv = leg;proj composite, pi_side = end iso, fs = f'/s' of S',
    // hom = f/s of S, proj = projection of S
    const Letter FS = Letter::gen(fs);
    return tb.apply(rule_r5(p, vv, pi_side), false, sign, y({V, THP}),
                    z({FS, VI, TH})) &&
           tb.apply(rule_r5(p, leg, proj), false, sign, y({V, THP}),
                    z({Letter::gen(pi_side), FS, VI, TH})) &&
           tb.apply(rule_r5(p, pi_side, fs), true, sign,
                    y({V, THP, LEG, Letter::gen(proj)}), z({VI, TH})) &&
           tb.apply(rule_r5(p, hom, v), false, sign,
                    y({V, THP, LEG, Letter::gen(proj)}), z({VI, TH})) &&
           tb.apply(rule_r5(p, v, vi), true, sign,
                    y({V, THP, LEG, Letter::gen(proj), Letter::gen(hom)}),
                    z({TH})) &&
           tb.apply("R6(" + thn + ",L)", true, sign,
                    y({V, THP, LEG, Letter::gen(proj), Letter::gen(hom)}), z({}));
  };
  if (!branch(v1, piA, sp.f, se.f, sum.p_left)) return false;
  if (!branch(v2, piB, sp.s, se.s, sum.p_right)) return false;
  if (!tb.apply("R9(" + se.name + "," + p.object_name(sum.sum_object) + ")", true,
                sign, y({V, THP, LEG}), z({})))
    return false;
  return tb.apply(rule_r5(p, leg, idAB), true, sign, y({V, THP}), z({}));
}

}  // namespace

ProofTrace normalize_trace(const Presentation& p, const RuleSet& rules,
                           const FormalSum& s) {
  TraceBuilder tb(p, rules, s);
  const FormalSum start = canonical_sum_form(p, s);

  // Longest summands first: short summands can pass through longer ones
  // while being conjugated, and consuming the long ones early keeps such
  // transient cancellations rare.
  for (auto it = start.terms.rbegin(); it != start.terms.rend(); ++it) {
    const SignedWord& term = *it;
    Letters word = term.word.letters;
    const int sign = term.sign;
    bool done = false;  // summand removed or abandoned

    // conjugate synthetic letters left to right
    for (std::size_t i = 0; i < word.size() && !done; ++i) {
      if (!letter_is_synthetic(word[i])) continue;
      const Letter q = word[i];
      const std::string qn = letter_name(p, q);
      const Conjugation cj = conjugation_of(p, q);
      const Letters pre(word.begin(), word.begin() + i);
      const Letters suf(word.begin() + i + 1, word.end());
      if (is_zero_gen(p, cj.before) || is_zero_gen(p, cj.after)) {
        // the conjugated letter is zero: its unit rule has an empty side, so
        // the reverse application removes the summand outright
        tb.apply("R6(" + qn + (is_zero_gen(p, cj.before) ? ",L)" : ",R)"), false, sign,
                 join(p, pre, {}), join(p, suf, {}));
        done = true;
        break;
      }
      bool ok;
      if (cj.identity) {
        ok = tb.apply("R6(" + qn + ",L)", false, sign, join(p, pre, {}),
                      join(p, suf, {})) &&
             tb.apply("R6(" + qn + ",R)", false, sign, join(p, pre, {cj.before}),
                      join(p, suf, {}));
      } else if (q.kind == Letter::Kind::corner_inv) {
        ok = corner_chain(tb, p, sign, pre, suf, q.ref, cj);
      } else {
        ok = theta_chain(tb, p, sign, pre, suf, q.ref, cj);
      }
      if (!ok) {
        done = true;
        break;
      }
      word.erase(word.begin() + i);
      word.insert(word.begin() + i, {cj.before, cj.synth, cj.after});
      i += 2;
    }
    if (done) continue;

    // fuse morphism runs left to right; a zero fold removes the summand
    std::size_t i = 0;
    while (i < word.size() && !done) {
      if (letter_is_synthetic(word[i])) {
        ++i;
        continue;
      }
      while (i + 1 < word.size() && !letter_is_synthetic(word[i + 1])) {
        const HomId a = word[i].ref, b = word[i + 1].ref;
        const HomId folded = compose_lookup(p, a, b);
        if (!tb.apply(rule_r5(p, a, b), true, sign,
                      join(p, Letters(word.begin(), word.begin() + i), {}),
                      join(p, Letters(word.begin() + i + 2, word.end()), {}))) {
          done = true;
          break;
        }
        if (p.is_zero(folded)) {
          done = true;
          break;
        }
        word.erase(word.begin() + i + 1);
        word[i] = Letter::gen(folded);
      }
      ++i;
    }
  }

  ProofTrace trace = tb.finish();
  if (!(trace.end == normalize_sum(p, s)))
    throw Error("trace construction did not reach the normal form");
  return trace;
}

}  // namespace gk
