#include "gk/terms.hpp"

#include <algorithm>

namespace gk {

ObjectId letter_dom(const Presentation& p, Letter l) {
  switch (l.kind) {
    case Letter::Kind::gen: return p.dom(l.ref);
    case Letter::Kind::corner_inv: return p.cod(p.corners[l.ref].emb);
    case Letter::Kind::theta: return p.splitexacts[l.ref].d;
  }
  throw Error("bad letter");
}

ObjectId letter_cod(const Presentation& p, Letter l) {
  switch (l.kind) {
    case Letter::Kind::gen: return p.cod(l.ref);
    case Letter::Kind::corner_inv: return p.dom(p.corners[l.ref].emb);
    case Letter::Kind::theta: return p.sums[p.splitexacts[l.ref].sum].sum_object;
  }
  throw Error("bad letter");
}

std::string letter_name(const Presentation& p, Letter l) {
  switch (l.kind) {
    case Letter::Kind::gen: return p.hom_name(l.ref);
    case Letter::Kind::corner_inv: return "inv(" + p.corners[l.ref].name + ")";
    case Letter::Kind::theta: return "theta(" + p.splitexacts[l.ref].name + ")";
  }
  throw Error("bad letter");
}

bool letter_is_synthetic(Letter l) { return l.kind != Letter::Kind::gen; }

Word make_word(const Presentation& p, const std::vector<Letter>& letters) {
  if (letters.empty()) throw Error("a word needs at least one letter");
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const Letter& l = letters[i];
    if (l.kind == Letter::Kind::gen && p.is_zero(l.ref)) {
      throw TypeError("zero morphism " + p.hom_name(l.ref) +
                      " cannot appear in a word; use the empty sum");
    }
    if (i + 1 < letters.size() &&
        letter_cod(p, letters[i]) != letter_dom(p, letters[i + 1])) {
      throw TypeError("type mismatch at position " + std::to_string(i + 2) + ": " +
                      letter_name(p, letters[i]) + " ends at " +
                      p.object_name(letter_cod(p, letters[i])) + " but " +
                      letter_name(p, letters[i + 1]) + " starts at " +
                      p.object_name(letter_dom(p, letters[i + 1])));
    }
  }
  return {letters, letter_dom(p, letters.front()), letter_cod(p, letters.back())};
}

Word concat(const Presentation& p, const Word& w1, const Word& w2) {
  if (w1.cod != w2.dom) {
    throw TypeError("cannot concatenate: first word ends at " + p.object_name(w1.cod) +
                    ", second starts at " + p.object_name(w2.dom));
  }
  Word out = w1;
  out.letters.insert(out.letters.end(), w2.letters.begin(), w2.letters.end());
  out.cod = w2.cod;
  return out;
}

FormalSum empty_sum(ObjectId dom, ObjectId cod) { return {dom, cod, {}}; }

FormalSum sum_of_word(Word w) {
  FormalSum s{w.dom, w.cod, {}};
  s.terms.push_back({1, std::move(w)});
  return s;
}

FormalSum embed_hom(const Presentation& p, HomId h) {
  if (p.is_zero(h)) return empty_sum(p.dom(h), p.cod(h));
  return sum_of_word(make_word(p, {Letter::gen(h)}));
}

FormalSum product(const Presentation& p, const FormalSum& s1, const FormalSum& s2) {
  if (s1.cod != s2.dom) {
    throw TypeError("cannot multiply: first factor ends at " + p.object_name(s1.cod) +
                    ", second starts at " + p.object_name(s2.dom));
  }
  FormalSum out = empty_sum(s1.dom, s2.cod);
  for (const SignedWord& t2 : s2.terms) {
    for (const SignedWord& t1 : s1.terms) {
      out.terms.push_back({t1.sign * t2.sign, concat(p, t1.word, t2.word)});
    }
  }
  return out;
}

FormalSum add(const FormalSum& s1, const FormalSum& s2) {
  if (s1.dom != s2.dom || s1.cod != s2.cod) {
    throw TypeError("cannot add sums of different types");
  }
  FormalSum out = s1;
  out.terms.insert(out.terms.end(), s2.terms.begin(), s2.terms.end());
  return out;
}

FormalSum negate(FormalSum s) {
  for (SignedWord& t : s.terms) t.sign = -t.sign;
  return s;
}

FormalSum sigma_of(const Presentation& p, int split) {
  const SplitExactDecl& se = p.splitexacts[split];
  const SumDecl& sd = p.sums[se.sum];
  FormalSum left = product(p, embed_hom(p, sd.p_left), embed_hom(p, se.f));
  FormalSum right = product(p, embed_hom(p, sd.p_right), embed_hom(p, se.s));
  return add(left, right);
}

FormalSum sigma_of(const Presentation& p, const std::string& split_name) {
  auto idx = p.find_splitexact(split_name);
  if (!idx) throw Error("unknown splitexact: " + split_name);
  return sigma_of(p, *idx);
}

int word_compare(const Presentation& p, const Word& a, const Word& b) {
  if (a.letters.size() != b.letters.size())
    return a.letters.size() < b.letters.size() ? -1 : 1;
  for (std::size_t i = 0; i < a.letters.size(); ++i) {
    if (a.letters[i] == b.letters[i]) continue;
    const std::string na = letter_name(p, a.letters[i]);
    const std::string nb = letter_name(p, b.letters[i]);
    if (na != nb) return na < nb ? -1 : 1;
  }
  return 0;
}

FormalSum canonical_sum_form(const Presentation& p, const FormalSum& s) {
  FormalSum out = empty_sum(s.dom, s.cod);
  std::vector<SignedWord> terms = s.terms;
  std::stable_sort(terms.begin(), terms.end(), [&](const SignedWord& a, const SignedWord& b) {
    return word_compare(p, a.word, b.word) < 0;
  });
  std::size_t i = 0;
  while (i < terms.size()) {
    std::size_t j = i;
    long net = 0;
    while (j < terms.size() && word_compare(p, terms[i].word, terms[j].word) == 0) {
      net += terms[j].sign;
      ++j;
    }
    const int sign = net < 0 ? -1 : 1;
    for (long k = 0; k < (net < 0 ? -net : net); ++k)
      out.terms.push_back({sign, terms[i].word});
    i = j;
  }
  return out;
}

std::string print_word(const Presentation& p, const Word& w) {
  std::string out;
  for (std::size_t i = 0; i < w.letters.size(); ++i) {
    if (i) out += ";";
    out += letter_name(p, w.letters[i]);
  }
  return out;
}

std::string print_sum(const Presentation& p, const FormalSum& s) {
  if (s.terms.empty())
    return "0(" + p.object_name(s.dom) + "," + p.object_name(s.cod) + ")";
  std::string out;
  for (std::size_t i = 0; i < s.terms.size(); ++i) {
    const SignedWord& t = s.terms[i];
    if (i == 0) {
      if (t.sign < 0) out += "- ";
    } else {
      out += t.sign < 0 ? " - " : " + ";
    }
    out += print_word(p, t.word);
  }
  return out;
}

}  // namespace gk
