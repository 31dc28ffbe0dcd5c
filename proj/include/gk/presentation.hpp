#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "gk/error.hpp"

namespace gk {

using ObjectId = int;
using HomId = int;

struct ObjectDecl {
  std::string name;
  std::optional<ObjectId> stabilization_of;  // set by a "stab" statement
  bool is_zero = false;
  SourcePos pos;
};

enum class HomKind { generator, identity, zero };

// Declared generator morphisms plus the materialized identity and zero
// morphisms. A generator declared in or out of a zero-flagged object is an
// alias of the corresponding zero morphism (its name resolves to the zero
// hom id), since every such map is the zero map.
struct HomDecl {
  std::string name;  // identities print as id(A), zeros as 0(A,B)
  HomKind kind = HomKind::generator;
  ObjectId dom = -1;
  ObjectId cod = -1;
  SourcePos pos;
};

struct CompositionEntry {
  HomId f;  // f ; g  (g after f)
  HomId g;
  HomId result;
  SourcePos pos;
};

struct SumDecl {
  ObjectId sum_object;
  ObjectId left;
  ObjectId right;
  HomId i_left, i_right;  // injections
  HomId p_left, p_right;  // projections
  SourcePos pos;
};

struct CornerDecl {
  std::string name;  // same as the embedding hom's name
  HomId emb;         // c : A -> A_K
  SourcePos pos;
};

struct HomotopyDecl {
  HomId f0;
  HomId f1;
  SourcePos pos;
};

struct SplitExactDecl {
  std::string name;
  ObjectId a, d, b;
  HomId f;  // A -> D
  HomId g;  // D -> B
  HomId s;  // B -> D, section of g
  int sum;  // index into Presentation::sums, the declared A (+) B
  SourcePos pos;
};

struct CornerLink {
  int corner;      // index into corners, embedding out of the repped object
  int corner_rep;  // index into corners, embedding out of the representative
  HomId stab_iso;  // stab(object) -> stab(rep)
};

struct SplitLink {
  int split;      // index into splitexacts, middle object == repped object
  int split_rep;  // the transported sequence on the representative
  HomId sum_leg;  // sum(split_rep) -> sum(split)
};

struct RepresentativeDecl {
  ObjectId object;
  ObjectId rep;
  HomId iso;      // object -> rep
  HomId iso_inv;  // rep -> object
  std::vector<CornerLink> corner_links;
  std::vector<SplitLink> split_links;
  SourcePos pos;
};

struct Violation {
  std::string condition;  // short tag, e.g. "missing-composition"
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;
  bool ok() const { return violations.empty(); }
  bool has(const std::string& condition) const;
  std::string to_string() const;
};

// A finite presentation after name resolution. Immutable once validated;
// all queries are const.
class Presentation {
 public:
  std::vector<ObjectDecl> objects;
  std::vector<HomDecl> homs;
  std::vector<CompositionEntry> table;
  std::vector<SumDecl> sums;
  std::vector<CornerDecl> corners;
  std::vector<HomotopyDecl> homotopies;
  std::vector<SplitExactDecl> splitexacts;
  std::vector<RepresentativeDecl> representatives;
  std::optional<std::string> group_tag;
  // Generators declared against a zero-flagged object resolve to the zero
  // hom; the declared spelling is kept so printing round-trips.
  std::vector<std::pair<std::string, HomId>> zero_aliases;

  ObjectId object_id(const std::string& name) const;  // throws on unknown
  HomId hom_id(const std::string& name) const;
  std::optional<ObjectId> find_object(const std::string& name) const;
  std::optional<HomId> find_hom(const std::string& name) const;

  const std::string& object_name(ObjectId o) const { return objects[o].name; }
  const std::string& hom_name(HomId h) const { return homs[h].name; }
  ObjectId dom(HomId h) const { return homs[h].dom; }
  ObjectId cod(HomId h) const { return homs[h].cod; }
  bool is_identity(HomId h) const { return homs[h].kind == HomKind::identity; }
  bool is_zero(HomId h) const { return homs[h].kind == HomKind::zero; }
  bool is_generator(HomId h) const { return homs[h].kind == HomKind::generator; }

  // id(A); for a zero-flagged object this is the zero hom 0(A,A).
  HomId identity_hom(ObjectId o) const;
  HomId zero_hom(ObjectId a, ObjectId b) const;

  // Declared entry for a generator pair, if any.
  std::optional<HomId> table_entry(HomId f, HomId g) const;

  std::optional<int> find_sum_by_object(ObjectId sum_object) const;
  std::optional<int> find_splitexact(const std::string& name) const;
  std::optional<int> find_corner(const std::string& name) const;  // by hom name

  // Representative assignment: identity unless a rep declaration exists.
  ObjectId rep_of(ObjectId o) const;
  const RepresentativeDecl* rep_decl(ObjectId o) const;

  // Called by the parser after all declarations are resolved.
  void materialize_implicit_homs();

  friend bool operator==(const Presentation& x, const Presentation& y);

 private:
  std::map<std::string, ObjectId> object_index_;
  std::map<std::string, HomId> hom_index_;
  std::map<std::pair<ObjectId, ObjectId>, HomId> zero_index_;
  std::vector<HomId> identity_index_;               // per object
  std::map<std::pair<HomId, HomId>, HomId> table_index_;
  std::map<ObjectId, int> rep_index_;

  friend Presentation parse_presentation(const std::string&);
  friend class PresentationBuilder;
};

// Table lookup with the unit and absorption laws applied first:
//   id ; g = g,  f ; id = f,  anything with a zero hom is a zero hom.
// For generator pairs the declared table entry is returned; a missing entry
// or a non-composable pair throws.
HomId compose_lookup(const Presentation& p, HomId f, HomId g);

// Every structural invariant that is not already a parse error: table
// totality and associativity, sum and split-exact facts, corner targets,
// homotopy typing, representative isos, linkage completeness and the
// commuting squares of declared links.
ValidationReport validate_presentation(const Presentation& p);

// Presentation -> source text; parse(print(parse(t))) == parse(t).
std::string print_presentation(const Presentation& p);

}  // namespace gk
