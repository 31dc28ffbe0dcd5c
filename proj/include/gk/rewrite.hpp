#pragma once

#include <optional>
#include <string>
#include <vector>

#include "gk/model.hpp"
#include "gk/presentation.hpp"
#include "gk/terms.hpp"

namespace gk {

// One instantiated elementary equivalence. Both sides are canonical sums of
// equal type. Summand permutation, opposite-pair cancellation and the
// zero-summand unit are not rules: every state is kept in canonical form,
// which quotients them away.
struct Rule {
  std::string id;  // stable, e.g. "R5(f,g)", "R9(S1,AB)"
  FormalSum lhs;
  FormalSum rhs;
};

class RuleSet {
 public:
  std::vector<Rule> rules;

  std::optional<int> index_of(const std::string& id) const;
  const Rule& operator[](int i) const { return rules[i]; }
  int size() const { return static_cast<int>(rules.size()); }
};

// The finite rule instances of a presentation:
//   R4 per sum:        p_left i_left + p_right i_right == id(sum)
//   R5 per table entry f;g = h:  <f,g> == <h>  (empty sum when h is zero),
//      plus the identity-law instances <id,h> == <h>, <h,id> == <h>
//   R6 per synthetic letter q:   <id,q> == <q>, <q,id> == <q>
//   R7 per homotopy pair:        <f0> == <f1>
//   R8 per corner c:             <c,inv(c)> == id, <inv(c),c> == id
//   R9 per split-exact S:        sigma theta == id(sum), theta sigma == id(D)
RuleSet instantiate_rules(const Presentation& p);

// A rule occurrence inside a composed expression: the matched summands are
// sign * (y ++ side ++ z) distributed over the side's terms; y and z may be
// absent. A rewrite step replaces them with the distributed other side; an
// expand step inserts (other side) - (matched side), which is a cancelling
// pair introduction fused with one rule application.
struct ContextApplication {
  int rule = -1;
  bool forward = true;  // lhs -> rhs
  int sign = 1;
  std::optional<Word> left;
  std::optional<Word> right;
  bool expand = false;
};

// Applies one step to the canonical form of s; throws if the context is
// ill-typed or the pattern is not a sub-multiset.
FormalSum apply_rule(const Presentation& p, const RuleSet& rules, const FormalSum& s,
                     const ContextApplication& app);

struct ProofStep {
  ContextApplication app;
  std::vector<int> matched;  // indices of the matched summands in `before`
  FormalSum before;          // canonical
  FormalSum after;           // canonical
};

struct ProofTrace {
  FormalSum start;
  FormalSum end;
  std::vector<ProofStep> steps;
};

struct SearchBudget {
  int depth = 6;           // maximum chain length
  int max_states = 100000; // total states across both frontiers
  int max_word_len = 10;   // successors introducing longer words are pruned
  bool expansions = false; // enable expand steps in the search
};

struct SearchStats {
  int explored = 0;
  int frontier_left = 0;
  int frontier_right = 0;
  bool states_exhausted = false;  // stopped on max_states rather than depth
};

// Equivalent carries a checkable trace; Unknown means the bounded search
// found nothing, not that the terms differ.
struct Verdict {
  bool equivalent = false;
  std::optional<ProofTrace> trace;
  SearchStats stats;
};

// Bounded bidirectional breadth-first search over canonical forms.
// Deterministic for fixed inputs and budget.
Verdict decide_equiv(const Presentation& p, const RuleSet& rules, const FormalSum& s1,
                     const FormalSum& s2, const SearchBudget& budget);

// All single-step successors of the canonical form of s, in the
// deterministic order the search uses. Exposed for randomized soundness
// walks.
std::vector<ProofStep> enumerate_steps(const Presentation& p, const RuleSet& rules,
                                       const FormalSum& s, const SearchBudget& budget);

struct CheckResult {
  bool ok = false;
  int failed_step = -1;  // -1: start/end mismatch
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Independent verifier: every step's rule must exist for p, its application
// must be well-typed, and recomputing the step must reproduce the recorded
// after-state, chaining canonical start to canonical end.
CheckResult check_trace(const Presentation& p, const ProofTrace& trace);

// True iff every step preserves the exact matrix value of the state. A
// false result on a trace that passes check_trace indicates an engine bug.
bool soundness_check_trace(const Presentation& p, const MatrixModel& m,
                           const ProofTrace& trace);

std::string trace_to_json(const Presentation& p, const ProofTrace& trace);
ProofTrace trace_from_json(const Presentation& p, const std::string& json_text);

}  // namespace gk
