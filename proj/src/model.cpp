#include "gk/model.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace gk {

bool ModelReport::has(char condition) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const ModelViolation& v) { return v.condition == condition; });
}

std::string ModelReport::to_string() const {
  if (ok()) return "ok\n";
  std::ostringstream out;
  for (const ModelViolation& v : violations)
    out << "(" << v.condition << ") " << v.message << "\n";
  return out.str();
}

MatrixModel load_model(const Presentation& p, const std::string& json_text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("model: ") + e.what(), {});
  }
  if (!j.is_object() || !j.contains("dims") || !j.contains("gens"))
    throw ParseError("model: expected an object with 'dims' and 'gens'", {});

  MatrixModel m;
  m.dims.assign(p.objects.size(), 0);
  std::vector<bool> seen(p.objects.size(), false);
  for (auto it = j["dims"].begin(); it != j["dims"].end(); ++it) {
    auto obj = p.find_object(it.key());
    if (!obj) throw ParseError("model: unknown object " + it.key(), {});
    if (!it.value().is_number_integer() || it.value().get<long long>() < 0)
      throw ParseError("model: dims." + it.key() + " must be a nonnegative integer", {});
    m.dims[*obj] = it.value().get<std::size_t>();
    seen[*obj] = true;
  }
  for (ObjectId o = 0; o < static_cast<ObjectId>(p.objects.size()); ++o) {
    if (!seen[o]) throw ParseError("model: missing dims for " + p.object_name(o), {});
    if (p.objects[o].is_zero && m.dims[o] != 0)
      throw Error("model: zero object " + p.object_name(o) + " must have dim 0");
  }

  for (auto it = j["gens"].begin(); it != j["gens"].end(); ++it) {
    auto h = p.find_hom(it.key());
    if (!h) throw ParseError("model: unknown hom " + it.key(), {});
    if (!p.is_generator(*h)) {
      // zero aliases may appear; their matrices are implied, just check shape
      if (!p.is_zero(*h))
        throw ParseError("model: " + it.key() + " is not a generator hom", {});
    }
    const std::size_t rows = m.dims[p.cod(*h)];
    const std::size_t cols = m.dims[p.dom(*h)];
    const auto& rows_json = it.value();
    if (!rows_json.is_array() || rows_json.size() != rows)
      throw Error("model: " + it.key() + " must have " + std::to_string(rows) + " rows");
    IntMatrix mat(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
      if (!rows_json[r].is_array() || rows_json[r].size() != cols)
        throw Error("model: " + it.key() + " row " + std::to_string(r) + " must have " +
                    std::to_string(cols) + " entries");
      for (std::size_t c = 0; c < cols; ++c) {
        if (!rows_json[r][c].is_number_integer())
          throw Error("model: " + it.key() + " entries must be integers");
        mat.at(r, c) = rows_json[r][c].get<std::int64_t>();
      }
    }
    if (p.is_generator(*h)) m.gens[*h] = std::move(mat);
  }

  for (HomId h = 0; h < static_cast<HomId>(p.homs.size()); ++h) {
    if (p.is_generator(h) && !m.gens.count(h))
      throw Error("model: missing matrix for " + p.hom_name(h));
  }
  return m;
}

std::string save_model(const Presentation& p, const MatrixModel& m) {
  nlohmann::ordered_json j;
  for (ObjectId o = 0; o < static_cast<ObjectId>(p.objects.size()); ++o)
    j["dims"][p.object_name(o)] = m.dims[o];
  j["gens"] = nlohmann::ordered_json::object();
  for (const auto& [h, mat] : m.gens) {
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (std::size_t r = 0; r < mat.rows(); ++r) {
      nlohmann::ordered_json row = nlohmann::ordered_json::array();
      for (std::size_t c = 0; c < mat.cols(); ++c) row.push_back(mat.at(r, c));
      rows.push_back(std::move(row));
    }
    j["gens"][p.hom_name(h)] = std::move(rows);
  }
  return j.dump(1) + "\n";
}

IntMatrix eval_hom(const Presentation& p, const MatrixModel& m, HomId h) {
  const std::size_t rows = m.dims[p.cod(h)];
  const std::size_t cols = m.dims[p.dom(h)];
  switch (p.homs[h].kind) {
    case HomKind::zero: return IntMatrix::zero(rows, cols);
    case HomKind::identity: return IntMatrix::identity(rows);
    case HomKind::generator: {
      const IntMatrix& g = m.gen(h);
      if (g.rows() != rows || g.cols() != cols)
        throw Error("model: matrix for " + p.hom_name(h) + " has the wrong shape");
      return g;
    }
  }
  throw Error("bad hom");
}

IntMatrix sigma_matrix(const Presentation& p, const MatrixModel& m, int split) {
  const SplitExactDecl& se = p.splitexacts[split];
  const SumDecl& sd = p.sums[se.sum];
  return eval_hom(p, m, se.f) * eval_hom(p, m, sd.p_left) +
         eval_hom(p, m, se.s) * eval_hom(p, m, sd.p_right);
}

namespace {

IntMatrix eval_letter(const Presentation& p, const MatrixModel& m, Letter l) {
  switch (l.kind) {
    case Letter::Kind::gen:
      return eval_hom(p, m, l.ref);
    case Letter::Kind::corner_inv: {
      auto inv = eval_hom(p, m, p.corners[l.ref].emb).inverse();
      if (!inv) throw Error("model: corner " + p.corners[l.ref].name +
                            " is not invertible over the integers");
      return *inv;
    }
    case Letter::Kind::theta: {
      auto inv = sigma_matrix(p, m, l.ref).inverse();
      if (!inv) throw Error("model: sigma of " + p.splitexacts[l.ref].name +
                            " is not invertible over the integers");
      return *inv;
    }
  }
  throw Error("bad letter");
}

}  // namespace

IntMatrix eval(const Presentation& p, const MatrixModel& m, const Word& w) {
  IntMatrix acc = eval_letter(p, m, w.letters.front());
  for (std::size_t i = 1; i < w.letters.size(); ++i)
    acc = eval_letter(p, m, w.letters[i]) * acc;
  return acc;
}

IntMatrix eval(const Presentation& p, const MatrixModel& m, const FormalSum& s) {
  IntMatrix acc = IntMatrix::zero(m.dims[s.cod], m.dims[s.dom]);
  for (const SignedWord& t : s.terms) acc.add_scaled(eval(p, m, t.word), t.sign);
  return acc;
}

ModelReport validate_model(const Presentation& p, const MatrixModel& m) {
  ModelReport report;
  auto add = [&](char condition, const std::string& message) {
    report.violations.push_back({condition, message});
  };

  // hard shape errors first
  for (const auto& [h, mat] : m.gens) {
    if (mat.rows() != m.dims[p.cod(h)] || mat.cols() != m.dims[p.dom(h)])
      throw Error("model: matrix for " + p.hom_name(h) + " has the wrong shape");
  }
  for (ObjectId o = 0; o < static_cast<ObjectId>(p.objects.size()); ++o) {
    if (p.objects[o].is_zero && m.dims[o] != 0)
      throw Error("model: zero object " + p.object_name(o) + " must have dim 0");
  }

  for (const CompositionEntry& e : p.table) {
    IntMatrix got = eval_hom(p, m, e.g) * eval_hom(p, m, e.f);
    if (got != eval_hom(p, m, e.result))
      add('a', "composition fact " + p.hom_name(e.f) + ";" + p.hom_name(e.g) + " = " +
                   p.hom_name(e.result) + " violated");
  }
  for (const HomotopyDecl& hd : p.homotopies) {
    if (eval_hom(p, m, hd.f0) != eval_hom(p, m, hd.f1))
      add('b', "homotopy fact " + p.hom_name(hd.f0) + " ~ " + p.hom_name(hd.f1) +
                   " violated");
  }
  for (const CornerDecl& cd : p.corners) {
    IntMatrix c = eval_hom(p, m, cd.emb);
    if (!c.is_square() || !c.is_unimodular())
      add('c', "corner " + cd.name + " is not invertible over the integers");
  }
  for (int i = 0; i < static_cast<int>(p.splitexacts.size()); ++i) {
    if (!sigma_matrix(p, m, i).is_unimodular())
      add('d', "sigma of " + p.splitexacts[i].name +
                   " is not invertible over the integers");
  }
  for (const SumDecl& sd : p.sums) {
    IntMatrix got = eval_hom(p, m, sd.i_left) * eval_hom(p, m, sd.p_left) +
                    eval_hom(p, m, sd.i_right) * eval_hom(p, m, sd.p_right);
    if (!got.is_identity())
      add('e', "biproduct identity violated for sum " + p.object_name(sd.sum_object));
  }
  return report;
}

}  // namespace gk
