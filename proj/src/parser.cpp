#include "gk/parser.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <optional>
#include <vector>

namespace gk {

namespace {

struct Token {
  enum class Kind { ident, number, punct, end };
  Kind kind = Kind::end;
  std::string text;
  SourcePos pos;
};

class Lexer {
 public:
  Lexer(const std::string& text, int line_base) : text_(text), line_(line_base) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      Token t = next();
      bool end = t.kind == Token::Kind::end;
      out.push_back(std::move(t));
      if (end) break;
    }
    return out;
  }

 private:
  Token next() {
    while (i_ < text_.size() && (text_[i_] == ' ' || text_[i_] == '\t')) advance();
    SourcePos pos{line_, col_};
    if (i_ >= text_.size() || text_[i_] == '#') return {Token::Kind::end, "", pos};
    char c = text_[i_];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::string s;
      while (i_ < text_.size()) {
        char d = text_[i_];
        if (std::isalnum(static_cast<unsigned char>(d)) || d == '_' || d == '\'') {
          s += d;
          advance();
        } else {
          break;
        }
      }
      return {Token::Kind::ident, s, pos};
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::string s;
      while (i_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[i_]))) {
        s += text_[i_];
        advance();
      }
      return {Token::Kind::number, s, pos};
    }
    if (c == '-' && i_ + 1 < text_.size() && text_[i_ + 1] == '>') {
      advance();
      advance();
      return {Token::Kind::punct, "->", pos};
    }
    static const std::string punct = ":;=()+~,-";
    if (punct.find(c) != std::string::npos) {
      advance();
      return {Token::Kind::punct, std::string(1, c), pos};
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }

  void advance() {
    ++i_;
    ++col_;
  }

  const std::string& text_;
  std::size_t i_ = 0;
  int line_;
  int col_ = 1;
};

class TokenStream {
 public:
  explicit TokenStream(std::vector<Token> tokens) : tokens_(std::move(tokens)) {}

  const Token& peek() const { return tokens_[i_]; }
  bool at_end() const { return peek().kind == Token::Kind::end; }

  Token take() { return tokens_[i_++]; }

  std::string expect_ident(const std::string& what) {
    if (peek().kind != Token::Kind::ident)
      throw ParseError("expected " + what + ", got '" + shown() + "'", peek().pos);
    return take().text;
  }

  void expect_punct(const std::string& text) {
    if (peek().kind != Token::Kind::punct || peek().text != text)
      throw ParseError("expected '" + text + "', got '" + shown() + "'", peek().pos);
    take();
  }

  bool accept_punct(const std::string& text) {
    if (peek().kind == Token::Kind::punct && peek().text == text) {
      take();
      return true;
    }
    return false;
  }

  bool accept_keyword(const std::string& kw) {
    if (peek().kind == Token::Kind::ident && peek().text == kw) {
      take();
      return true;
    }
    return false;
  }

  void expect_keyword(const std::string& kw) {
    if (!accept_keyword(kw))
      throw ParseError("expected '" + kw + "', got '" + shown() + "'", peek().pos);
  }

  void expect_end() {
    if (!at_end())
      throw ParseError("trailing input: '" + shown() + "'", peek().pos);
  }

  std::string shown() const {
    return peek().kind == Token::Kind::end ? "end of line" : peek().text;
  }

 private:
  std::vector<Token> tokens_;
  std::size_t i_ = 0;
};

// Unresolved hom reference: a plain name, id(OBJ), or a typed zero
// 0(OBJ,OBJ). Compose results may also be a bare 0 whose type is inferred.
struct HomRef {
  enum class Kind { name, identity, zero, zero_typed };
  Kind kind = Kind::name;
  std::string name;    // hom or object name
  std::string second;  // codomain object for zero_typed
  SourcePos pos;
};

HomRef parse_hom_ref(TokenStream& ts) {
  const Token& t = ts.peek();
  if (t.kind == Token::Kind::number && t.text == "0") {
    ts.take();
    if (ts.accept_punct("(")) {
      std::string a = ts.expect_ident("an object name");
      ts.expect_punct(",");
      std::string b = ts.expect_ident("an object name");
      ts.expect_punct(")");
      return {HomRef::Kind::zero_typed, a, b, t.pos};
    }
    return {HomRef::Kind::zero, "", "", t.pos};
  }
  std::string name = ts.expect_ident("a hom name");
  if (name == "id" && ts.accept_punct("(")) {
    std::string obj = ts.expect_ident("an object name");
    ts.expect_punct(")");
    return {HomRef::Kind::identity, obj, "", t.pos};
  }
  return {HomRef::Kind::name, name, "", t.pos};
}

struct RawStab {
  std::string stab_obj, base_obj, hom;
  SourcePos pos;
};
struct RawHom {
  std::string name, dom, cod;
  SourcePos pos;
};
struct RawCompose {
  HomRef f, g, result;
  SourcePos pos;
};
struct RawSum {
  std::string sum_obj, left, right;
  HomRef il, ir, pl, pr;
  SourcePos pos;
};
struct RawHomotopy {
  HomRef f0, f1;
  SourcePos pos;
};
struct RawSplit {
  std::string name;
  HomRef f, g, s;
  std::string sum_obj;
  SourcePos pos;
};
struct RawCornerLink {
  std::string corner, corner_rep;
  HomRef stab_iso;
};
struct RawSplitLink {
  std::string split, split_rep;
  HomRef sum_leg;
};
struct RawRep {
  std::string rep_obj, obj;
  HomRef iso, iso_inv;
  std::vector<RawCornerLink> corner_links;
  std::vector<RawSplitLink> split_links;
  SourcePos pos;
};

struct RawProgram {
  std::optional<std::string> group_tag;
  std::vector<ObjectDecl> objects;
  std::vector<RawStab> stabs;
  std::vector<RawHom> homs;
  std::vector<RawCompose> composes;
  std::vector<RawSum> sums;
  std::vector<RawHomotopy> homotopies;
  std::vector<RawSplit> splits;
  std::vector<RawRep> reps;
};

void parse_statement(TokenStream& ts, RawProgram& prog) {
  SourcePos pos = ts.peek().pos;
  if (ts.accept_keyword("group")) {
    prog.group_tag = ts.expect_ident("a group tag");
  } else if (ts.accept_keyword("object")) {
    ObjectDecl o;
    o.name = ts.expect_ident("an object name");
    o.is_zero = ts.accept_keyword("zero");
    o.pos = pos;
    prog.objects.push_back(std::move(o));
  } else if (ts.accept_keyword("stab")) {
    RawStab st;
    st.stab_obj = ts.expect_ident("an object name");
    ts.expect_keyword("of");
    st.base_obj = ts.expect_ident("an object name");
    ts.expect_keyword("via");
    st.hom = ts.expect_ident("a hom name");
    st.pos = pos;
    prog.stabs.push_back(std::move(st));
  } else if (ts.accept_keyword("hom")) {
    RawHom h;
    h.name = ts.expect_ident("a hom name");
    ts.expect_punct(":");
    h.dom = ts.expect_ident("an object name");
    ts.expect_punct("->");
    h.cod = ts.expect_ident("an object name");
    h.pos = pos;
    prog.homs.push_back(std::move(h));
  } else if (ts.accept_keyword("compose")) {
    RawCompose c;
    c.f = parse_hom_ref(ts);
    ts.expect_punct(";");
    c.g = parse_hom_ref(ts);
    ts.expect_punct("=");
    c.result = parse_hom_ref(ts);
    c.pos = pos;
    prog.composes.push_back(std::move(c));
  } else if (ts.accept_keyword("sum")) {
    RawSum s;
    s.sum_obj = ts.expect_ident("an object name");
    ts.expect_punct("=");
    s.left = ts.expect_ident("an object name");
    ts.expect_punct("(");
    ts.expect_punct("+");
    ts.expect_punct(")");
    s.right = ts.expect_ident("an object name");
    ts.expect_keyword("inj");
    s.il = parse_hom_ref(ts);
    s.ir = parse_hom_ref(ts);
    ts.expect_keyword("proj");
    s.pl = parse_hom_ref(ts);
    s.pr = parse_hom_ref(ts);
    s.pos = pos;
    prog.sums.push_back(std::move(s));
  } else if (ts.accept_keyword("homotopic")) {
    RawHomotopy h;
    h.f0 = parse_hom_ref(ts);
    ts.expect_punct("~");
    h.f1 = parse_hom_ref(ts);
    h.pos = pos;
    prog.homotopies.push_back(std::move(h));
  } else if (ts.accept_keyword("splitexact")) {
    RawSplit s;
    s.name = ts.expect_ident("a splitexact name");
    ts.expect_punct(":");
    s.f = parse_hom_ref(ts);
    s.g = parse_hom_ref(ts);
    s.s = parse_hom_ref(ts);
    ts.expect_keyword("sum");
    s.sum_obj = ts.expect_ident("an object name");
    s.pos = pos;
    prog.splits.push_back(std::move(s));
  } else if (ts.accept_keyword("rep")) {
    RawRep r;
    r.rep_obj = ts.expect_ident("an object name");
    ts.expect_keyword("for");
    r.obj = ts.expect_ident("an object name");
    ts.expect_keyword("via");
    r.iso = parse_hom_ref(ts);
    ts.expect_keyword("invvia");
    r.iso_inv = parse_hom_ref(ts);
    while (ts.accept_keyword("link")) {
      if (ts.accept_keyword("corner")) {
        RawCornerLink l;
        l.corner = ts.expect_ident("a corner name");
        ts.expect_keyword("to");
        l.corner_rep = ts.expect_ident("a corner name");
        ts.expect_keyword("via");
        l.stab_iso = parse_hom_ref(ts);
        r.corner_links.push_back(std::move(l));
      } else if (ts.accept_keyword("split")) {
        RawSplitLink l;
        l.split = ts.expect_ident("a splitexact name");
        ts.expect_keyword("to");
        l.split_rep = ts.expect_ident("a splitexact name");
        ts.expect_keyword("sumvia");
        l.sum_leg = parse_hom_ref(ts);
        r.split_links.push_back(std::move(l));
      } else {
        throw ParseError("expected 'corner' or 'split' after 'link'", ts.peek().pos);
      }
    }
    r.pos = pos;
    prog.reps.push_back(std::move(r));
  } else {
    throw ParseError("unknown statement '" + ts.shown() + "'", pos);
  }
  ts.expect_end();
}

}  // namespace

Presentation parse_presentation(const std::string& text) {
  RawProgram prog;
  int line_no = 0;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string::npos) end = text.size();
    std::string line = text.substr(start, end - start);
    ++line_no;
    TokenStream ts(Lexer(line, line_no).run());
    if (!ts.at_end()) parse_statement(ts, prog);
    if (end == text.size()) break;
    start = end + 1;
  }

  Presentation p;
  p.group_tag = prog.group_tag;

  for (const ObjectDecl& o : prog.objects) {
    if (p.find_object(o.name))
      throw ParseError("duplicate object name: " + o.name, o.pos);
    p.object_index_[o.name] = static_cast<ObjectId>(p.objects.size());
    p.objects.push_back(o);
  }

  auto need_object = [&](const std::string& name, SourcePos pos) {
    auto id = p.find_object(name);
    if (!id) throw ParseError("unresolved reference to object " + name, pos);
    return *id;
  };

  // Declared homs. A hom touching a zero-flagged object is the zero map;
  // record the name as an alias once the zero homs exist.
  std::vector<std::pair<std::string, std::pair<ObjectId, ObjectId>>> pending_aliases;
  for (const RawHom& h : prog.homs) {
    if (p.find_hom(h.name) != std::nullopt ||
        std::any_of(pending_aliases.begin(), pending_aliases.end(),
                    [&](const auto& a) { return a.first == h.name; }))
      throw ParseError("duplicate hom name: " + h.name, h.pos);
    if (p.find_object(h.name))
      throw ParseError("hom name collides with object: " + h.name, h.pos);
    ObjectId dom = need_object(h.dom, h.pos);
    ObjectId cod = need_object(h.cod, h.pos);
    if (p.objects[dom].is_zero || p.objects[cod].is_zero) {
      pending_aliases.push_back({h.name, {dom, cod}});
      continue;
    }
    p.hom_index_[h.name] = static_cast<HomId>(p.homs.size());
    p.homs.push_back({h.name, HomKind::generator, dom, cod, h.pos});
  }

  p.materialize_implicit_homs();
  for (const auto& [name, doms] : pending_aliases) {
    HomId z = p.zero_hom(doms.first, doms.second);
    p.hom_index_[name] = z;
    p.zero_aliases.push_back({name, z});
  }

  auto resolve_ref = [&](const HomRef& r) -> HomId {
    switch (r.kind) {
      case HomRef::Kind::identity:
        return p.identity_hom(need_object(r.name, r.pos));
      case HomRef::Kind::zero:
        throw ParseError("bare 0 is only allowed as a compose result", r.pos);
      case HomRef::Kind::zero_typed:
        return p.zero_hom(need_object(r.name, r.pos), need_object(r.second, r.pos));
      case HomRef::Kind::name: {
        auto id = p.find_hom(r.name);
        if (!id) throw ParseError("unresolved reference to hom " + r.name, r.pos);
        return *id;
      }
    }
    throw ParseError("bad hom reference", r.pos);
  };

  for (const RawStab& st : prog.stabs) {
    ObjectId stab_obj = need_object(st.stab_obj, st.pos);
    ObjectId base = need_object(st.base_obj, st.pos);
    auto hom = p.find_hom(st.hom);
    if (!hom) throw ParseError("unresolved reference to hom " + st.hom, st.pos);
    if (p.objects[stab_obj].stabilization_of &&
        *p.objects[stab_obj].stabilization_of != base)
      throw ParseError(st.stab_obj + " is already the stabilization of another object",
                       st.pos);
    p.objects[stab_obj].stabilization_of = base;
    if (p.find_corner(st.hom))
      throw ParseError("duplicate corner declaration for " + st.hom, st.pos);
    p.corners.push_back({st.hom, *hom, st.pos});
  }

  for (const RawCompose& c : prog.composes) {
    HomId f = resolve_ref(c.f);
    HomId g = resolve_ref(c.g);
    if (p.cod(f) != p.dom(g))
      throw ParseError("compose entry is not composable: cod " +
                           p.object_name(p.cod(f)) + " != dom " +
                           p.object_name(p.dom(g)),
                       c.pos);
    HomId result;
    if (c.result.kind == HomRef::Kind::zero) {
      result = p.zero_hom(p.dom(f), p.cod(g));
    } else {
      result = resolve_ref(c.result);
      if (p.dom(result) != p.dom(f) || p.cod(result) != p.cod(g))
        throw ParseError("compose result has the wrong type", c.pos);
    }
    if (!p.is_generator(f) || !p.is_generator(g))
      throw ParseError("compose entries are only for declared generator homs; "
                       "identity and zero compositions are implicit",
                       c.pos);
    p.table.push_back({f, g, result, c.pos});
  }

  for (const RawSum& s : prog.sums) {
    SumDecl sd;
    sd.sum_object = need_object(s.sum_obj, s.pos);
    sd.left = need_object(s.left, s.pos);
    sd.right = need_object(s.right, s.pos);
    sd.i_left = resolve_ref(s.il);
    sd.i_right = resolve_ref(s.ir);
    sd.p_left = resolve_ref(s.pl);
    sd.p_right = resolve_ref(s.pr);
    sd.pos = s.pos;
    if (p.find_sum_by_object(sd.sum_object))
      throw ParseError("duplicate sum declaration for " + s.sum_obj, s.pos);
    p.sums.push_back(sd);
  }

  for (const RawHomotopy& h : prog.homotopies) {
    p.homotopies.push_back({resolve_ref(h.f0), resolve_ref(h.f1), h.pos});
  }

  for (const RawSplit& s : prog.splits) {
    SplitExactDecl se;
    se.name = s.name;
    if (p.find_splitexact(s.name))
      throw ParseError("duplicate splitexact name: " + s.name, s.pos);
    se.f = resolve_ref(s.f);
    se.g = resolve_ref(s.g);
    se.s = resolve_ref(s.s);
    se.a = p.dom(se.f);
    se.d = p.cod(se.f);
    se.b = p.cod(se.g);
    ObjectId sum_obj = need_object(s.sum_obj, s.pos);
    auto sum = p.find_sum_by_object(sum_obj);
    if (!sum) throw ParseError("no sum declared on object " + s.sum_obj, s.pos);
    se.sum = *sum;
    se.pos = s.pos;
    p.splitexacts.push_back(se);
  }

  for (const RawRep& r : prog.reps) {
    RepresentativeDecl rd;
    rd.rep = need_object(r.rep_obj, r.pos);
    rd.object = need_object(r.obj, r.pos);
    rd.iso = resolve_ref(r.iso);
    rd.iso_inv = resolve_ref(r.iso_inv);
    for (const RawCornerLink& l : r.corner_links) {
      auto c = p.find_corner(l.corner);
      if (!c) throw ParseError("unresolved reference to corner " + l.corner, r.pos);
      auto cr = p.find_corner(l.corner_rep);
      if (!cr)
        throw ParseError("unresolved reference to corner " + l.corner_rep, r.pos);
      rd.corner_links.push_back({*c, *cr, resolve_ref(l.stab_iso)});
    }
    for (const RawSplitLink& l : r.split_links) {
      auto s = p.find_splitexact(l.split);
      if (!s) throw ParseError("unresolved reference to splitexact " + l.split, r.pos);
      auto sr = p.find_splitexact(l.split_rep);
      if (!sr)
        throw ParseError("unresolved reference to splitexact " + l.split_rep, r.pos);
      rd.split_links.push_back({*s, *sr, resolve_ref(l.sum_leg)});
    }
    rd.pos = r.pos;
    if (p.rep_decl(rd.object) != nullptr)
      throw ParseError("duplicate rep declaration for " + r.obj, r.pos);
    p.representatives.push_back(rd);
    p.rep_index_[rd.object] = static_cast<int>(p.representatives.size()) - 1;
  }

  // rebuild indexes now that the table and reps are complete
  p.table_index_.clear();
  for (const CompositionEntry& e : p.table) p.table_index_[{e.f, e.g}] = e.result;

  return p;
}

FormalSum parse_term(const Presentation& p, const std::string& text) {
  TokenStream ts(Lexer(text, 1).run());

  auto parse_atom = [&]() -> std::optional<Letter> {
    // returns nullopt for a typed zero atom 0(A,B) handled by the caller
    const Token& t = ts.peek();
    if (t.kind == Token::Kind::ident) {
      std::string name = ts.take().text;
      if ((name == "id" || name == "inv" || name == "theta") && ts.accept_punct("(")) {
        std::string arg = ts.expect_ident("a name");
        ts.expect_punct(")");
        if (name == "id") {
          auto obj = p.find_object(arg);
          if (!obj) throw ParseError("unresolved reference to object " + arg, t.pos);
          return Letter::gen(p.identity_hom(*obj));
        }
        if (name == "inv") {
          auto c = p.find_corner(arg);
          if (!c) throw ParseError("unresolved reference to corner " + arg, t.pos);
          return Letter::corner_inv(*c);
        }
        auto s = p.find_splitexact(arg);
        if (!s) throw ParseError("unresolved reference to splitexact " + arg, t.pos);
        return Letter::theta(*s);
      }
      auto h = p.find_hom(name);
      if (!h) throw ParseError("unresolved reference to hom " + name, t.pos);
      return Letter::gen(*h);
    }
    throw ParseError("expected a word atom, got '" + ts.shown() + "'", t.pos);
  };

  auto parse_zero = [&]() -> FormalSum {
    SourcePos pos = ts.peek().pos;
    ts.take();  // the 0
    ts.expect_punct("(");
    std::string a = ts.expect_ident("an object name");
    ts.expect_punct(",");
    std::string b = ts.expect_ident("an object name");
    ts.expect_punct(")");
    auto oa = p.find_object(a);
    auto ob = p.find_object(b);
    if (!oa || !ob)
      throw ParseError("unresolved reference to object " + (oa ? b : a), pos);
    return empty_sum(*oa, *ob);
  };

  std::optional<FormalSum> acc;
  int sign = 1;
  if (ts.accept_punct("-")) sign = -1;
  else ts.accept_punct("+");
  while (true) {
    SourcePos pos = ts.peek().pos;
    FormalSum piece;
    if (ts.peek().kind == Token::Kind::number && ts.peek().text == "0") {
      piece = parse_zero();
    } else {
      std::vector<Letter> letters;
      letters.push_back(*parse_atom());
      while (ts.accept_punct(";")) letters.push_back(*parse_atom());
      // typed zero letters collapse the word to the empty sum
      bool zero = std::any_of(letters.begin(), letters.end(), [&](Letter l) {
        return l.kind == Letter::Kind::gen && p.is_zero(l.ref);
      });
      if (zero) {
        ObjectId dom = letter_dom(p, letters.front());
        ObjectId cod = letter_cod(p, letters.back());
        for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
          if (letter_cod(p, letters[i]) != letter_dom(p, letters[i + 1]))
            throw ParseError("type mismatch inside word", pos);
        }
        piece = empty_sum(dom, cod);
      } else {
        try {
          piece = sum_of_word(make_word(p, letters));
        } catch (const TypeError& e) {
          throw ParseError(e.what(), pos);
        }
      }
    }
    if (sign < 0) piece = negate(piece);
    if (!acc) {
      acc = piece;
    } else {
      if (acc->dom != piece.dom || acc->cod != piece.cod)
        throw ParseError("summand type mismatch: expected " +
                             p.object_name(acc->dom) + " -> " + p.object_name(acc->cod),
                         pos);
      acc = add(*acc, piece);
    }
    if (ts.accept_punct("+")) {
      sign = 1;
    } else if (ts.accept_punct("-")) {
      sign = -1;
    } else {
      break;
    }
  }
  ts.expect_end();
  return *acc;
}

}  // namespace gk
