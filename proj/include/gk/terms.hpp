#pragma once

#include <string>
#include <vector>

#include "gk/presentation.hpp"

namespace gk {

// One symbol of the alphabet: a morphism of the presentation (including
// identities), or one of the synthetic inverses -- inv(c) for a corner
// embedding c, running backwards, and theta(S) for a split-exact sequence S,
// running from the middle object to the declared sum.
struct Letter {
  enum class Kind { gen, corner_inv, theta };
  Kind kind = Kind::gen;
  int ref = -1;  // HomId | corner index | splitexact index

  static Letter gen(HomId h) { return {Kind::gen, h}; }
  static Letter corner_inv(int corner) { return {Kind::corner_inv, corner}; }
  static Letter theta(int split) { return {Kind::theta, split}; }

  bool operator==(const Letter&) const = default;
};

ObjectId letter_dom(const Presentation& p, Letter l);
ObjectId letter_cod(const Presentation& p, Letter l);
std::string letter_name(const Presentation& p, Letter l);
bool letter_is_synthetic(Letter l);

// Nonempty chain-typed sequence; l1 l2 ... ln denotes the composite
// "last after first".
struct Word {
  std::vector<Letter> letters;
  ObjectId dom = -1;
  ObjectId cod = -1;

  std::size_t size() const { return letters.size(); }
  bool operator==(const Word&) const = default;
};

struct SignedWord {
  int sign = 1;  // +1 or -1
  Word word;

  bool operator==(const SignedWord&) const = default;
};

// Formal signed sum of parallel words. The empty sum is the zero morphism
// of its type.
struct FormalSum {
  ObjectId dom = -1;
  ObjectId cod = -1;
  std::vector<SignedWord> terms;

  bool empty() const { return terms.empty(); }
  bool operator==(const FormalSum&) const = default;
};

// Chain-types the letters or throws TypeError (position and the two
// mismatched objects in the message). Zero morphisms are not letters; a
// zero-valued generator alias is rejected here.
Word make_word(const Presentation& p, const std::vector<Letter>& letters);

Word concat(const Presentation& p, const Word& w1, const Word& w2);

FormalSum empty_sum(ObjectId dom, ObjectId cod);
FormalSum sum_of_word(Word w);  // one positive term

// Morphisms embed as one-letter sums; zero morphisms embed as the empty sum.
FormalSum embed_hom(const Presentation& p, HomId h);

// Distributive product: for terms f_i of s1 and g_j of s2 the result lists
// sign(f_i)sign(g_j) f_i g_j with j outermost.
FormalSum product(const Presentation& p, const FormalSum& s1, const FormalSum& s2);
FormalSum add(const FormalSum& s1, const FormalSum& s2);
FormalSum negate(FormalSum s);

// p_left f + p_right s : sum object -> middle object, the morphism theta(S)
// inverts.
FormalSum sigma_of(const Presentation& p, int split);
FormalSum sigma_of(const Presentation& p, const std::string& split_name);

// Total order on words: length, then letter names lexicographically.
int word_compare(const Presentation& p, const Word& a, const Word& b);

// Unique representative modulo summand permutation, cancellation of opposite
// pairs, and the empty-sum unit: terms sorted, equal words with opposite
// signs cancelled. Idempotent.
FormalSum canonical_sum_form(const Presentation& p, const FormalSum& s);

std::string print_word(const Presentation& p, const Word& w);
std::string print_sum(const Presentation& p, const FormalSum& s);

}  // namespace gk
