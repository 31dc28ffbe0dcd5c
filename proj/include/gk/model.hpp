#pragma once

#include <map>
#include <string>
#include <vector>

#include "gk/matrix.hpp"
#include "gk/presentation.hpp"
#include "gk/terms.hpp"

namespace gk {

// Integer-matrix interpretation of a presentation: an additive target where
// invertibility is decidable (determinant +-1, so inverses stay integral).
// A hom X -> Y gets a dims(Y) x dims(X) matrix; identities and zero homs are
// implied. All evaluation is exact.
struct MatrixModel {
  std::vector<std::size_t> dims;          // per object
  std::map<HomId, IntMatrix> gens;        // declared generator homs only

  const IntMatrix& gen(HomId h) const { return gens.at(h); }
};

struct ModelViolation {
  char condition;  // 'a'..'e'
  std::string message;
};

struct ModelReport {
  std::vector<ModelViolation> violations;
  bool ok() const { return violations.empty(); }
  bool has(char condition) const;
  std::string to_string() const;
};

// Reads {"dims": {OBJ: n}, "gens": {HOM: [[row], ...]}} (row-major integer
// entries). Shape mismatches and unknown names throw.
MatrixModel load_model(const Presentation& p, const std::string& json_text);
std::string save_model(const Presentation& p, const MatrixModel& m);

// Checks, with exact arithmetic:
//  (a) every table entry f;g = h satisfies M(g) M(f) = M(h)
//  (b) homotopic pairs have equal matrices
//  (c) corner embeddings are square and unimodular
//  (d) for each split-exact S, M(f)M(pA) + M(s)M(pB) is unimodular
//  (e) for each sum, M(iA)M(pA) + M(iB)M(pB) is the identity
// Wrong shapes or missing matrices are hard errors, not report entries.
ModelReport validate_model(const Presentation& p, const MatrixModel& m);

// Matrix of one hom (generators from the model, identities/zeros implied).
IntMatrix eval_hom(const Presentation& p, const MatrixModel& m, HomId h);

// A word l1 ... ln evaluates to M(ln) ... M(l1); inv(c) to M(c)^-1, theta(S)
// to (M(f)M(pA) + M(s)M(pB))^-1; a sum to the signed sum of its words and
// the empty sum to the zero matrix of its type.
IntMatrix eval(const Presentation& p, const MatrixModel& m, const Word& w);
IntMatrix eval(const Presentation& p, const MatrixModel& m, const FormalSum& s);

IntMatrix sigma_matrix(const Presentation& p, const MatrixModel& m, int split);

}  // namespace gk
