#pragma once

#include <optional>

#include "gk/presentation.hpp"
#include "gk/rewrite.hpp"
#include "gk/terms.hpp"

namespace gk {

// The representative set: objects that are their own representative.
bool in_representative_set(const Presentation& p, ObjectId o);

// Alternating shape h1 q1 h2 q2 ... h_k: single morphism letters separated
// by synthetic letters, beginning and ending with a morphism letter, every
// synthetic letter's endpoints in the representative set.
bool is_normal_word(const Presentation& p, const Word& w);

// Replaces each synthetic letter by its conjugate over the representative:
//   inv(c)   ->  stab_iso  inv(c')  iso_inv
//   theta(S) ->  iso       theta(S')  sum_leg
// with the identity conjugation when the letter's base object has no
// representative declaration. Morphism letters pass through. Errors when a
// declared representative lacks the needed link.
Word desyntheticize(const Presentation& p, const Word& w);

// Folds every maximal run of morphism letters through the composition
// table; identity letters are inserted at the ends (and between adjacent
// synthetic letters) so the alternating shape is literal. Returns nullopt
// when some run folds to a zero morphism, in which case the containing
// summand is zero.
std::optional<Word> fuse_runs(const Presentation& p, const Word& w);

// desyntheticize + fuse_runs termwise, zero summands dropped, result
// canonical. Every surviving word is a normal word; the result is
// equivalent to the input (see normalize_trace) and idempotent.
FormalSum normalize_sum(const Presentation& p, const FormalSum& s);

// A machine-checkable derivation from canonical s to normalize_sum(s),
// built from the finite rule instances (no search).
ProofTrace normalize_trace(const Presentation& p, const RuleSet& rules,
                           const FormalSum& s);

}  // namespace gk
