#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include "gk/model.hpp"
#include "gk/parser.hpp"
#include "gk/terms.hpp"

namespace gk::test {

inline std::string fixture_path(const std::string& name) {
  return std::string(GK_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(fixture_path(name), std::ios::binary);
  if (!in) throw Error("missing fixture " + name);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Presentation load_presentation(const std::string& name) {
  return parse_presentation(read_fixture(name));
}

inline MatrixModel load_model_fixture(const Presentation& p, const std::string& name) {
  return load_model(p, read_fixture(name));
}

using Rng = std::mt19937_64;

// Random unimodular matrix: a product of elementary row operations on the
// identity, entries kept small.
inline IntMatrix random_unimodular(std::size_t n, Rng& rng, int ops = 6) {
  IntMatrix m = IntMatrix::identity(n);
  if (n == 0) return m;
  std::uniform_int_distribution<std::size_t> row(0, n - 1);
  std::uniform_int_distribution<int> kind(0, 2);
  std::uniform_int_distribution<int> coeff(-1, 1);
  for (int k = 0; k < ops; ++k) {
    std::size_t i = row(rng), j = row(rng);
    switch (kind(rng)) {
      case 0:
        if (i != j) {
          int c = coeff(rng);
          for (std::size_t col = 0; col < n; ++col) m.at(i, col) += c * m.at(j, col);
        }
        break;
      case 1:
        if (i != j)
          for (std::size_t col = 0; col < n; ++col) std::swap(m.at(i, col), m.at(j, col));
        break;
      default:
        for (std::size_t col = 0; col < n; ++col) m.at(i, col) = -m.at(i, col);
        break;
    }
  }
  return m;
}

// Valid models of the split-exact fixtures P1/P3, built from the canonical
// block interpretation (D = A (+) B) and conjugated by random unimodular
// basis changes per object. Any table derived from the block interpretation
// stays exact under conjugation, so validate_model accepts by construction.
inline MatrixModel random_split_model(const Presentation& p, std::size_t da,
                                      std::size_t db, Rng& rng) {
  const std::size_t dd = da + db;
  auto block_col = [&](std::size_t rows, std::size_t at, std::size_t n) {
    // rows x n matrix with an identity block starting at row `at`
    IntMatrix m(rows, n);
    for (std::size_t i = 0; i < n; ++i) m.at(at + i, i) = 1;
    return m;
  };
  auto block_row = [&](std::size_t cols, std::size_t at, std::size_t n) {
    IntMatrix m(n, cols);
    for (std::size_t i = 0; i < n; ++i) m.at(i, at + i) = 1;
    return m;
  };

  std::map<std::string, IntMatrix> base;
  base["f"] = block_col(dd, 0, da);
  base["g"] = block_row(dd, da, db);
  base["s"] = block_col(dd, da, db);
  base["iA"] = block_col(dd, 0, da);
  base["pA"] = block_row(dd, 0, da);
  base["iB"] = block_col(dd, da, db);
  base["pB"] = block_row(dd, da, db);
  base["h0"] = IntMatrix::zero(db, da);
  base["h1"] = IntMatrix::zero(db, da);
  auto mul = [&](const std::string& a, const std::string& b) {
    return base[b] * base[a];  // diagrammatic a;b
  };
  base["gs"] = mul("g", "s");
  base["giB"] = mul("g", "iB");
  base["pAf"] = mul("pA", "f");
  base["pBs"] = mul("pB", "s");
  base["eA"] = mul("pA", "iA");
  base["eB"] = mul("pB", "iB");
  if (p.find_object("D'")) {
    base["u"] = IntMatrix::identity(dd);
    base["u'"] = IntMatrix::identity(dd);
    base["f'"] = base["f"];
    base["g'"] = base["g"];
    base["s'"] = base["s"];
    base["m"] = base["gs"];
    base["n"] = base["gs"];
    base["e'"] = base["gs"];
    base["k'"] = base["giB"];
    base["a'"] = base["pAf"];
    base["b'"] = base["pBs"];
  }

  MatrixModel m;
  m.dims.assign(p.objects.size(), 0);
  m.dims[p.object_id("A")] = da;
  m.dims[p.object_id("B")] = db;
  m.dims[p.object_id("D")] = dd;
  m.dims[p.object_id("AB")] = dd;
  if (auto dp = p.find_object("D'")) m.dims[*dp] = dd;

  std::map<ObjectId, IntMatrix> basis, basis_inv;
  for (ObjectId o = 0; o < static_cast<ObjectId>(p.objects.size()); ++o) {
    basis[o] = random_unimodular(m.dims[o], rng);
    basis_inv[o] = *basis[o].inverse();
  }
  for (HomId h = 0; h < static_cast<HomId>(p.homs.size()); ++h) {
    if (!p.is_generator(h)) continue;
    auto it = base.find(p.hom_name(h));
    if (it == base.end()) {
      // homotopy-flavored closure homs are zero in every model
      m.gens[h] = IntMatrix::zero(m.dims[p.cod(h)], m.dims[p.dom(h)]);
    } else {
      m.gens[h] = basis[p.cod(h)] * it->second * basis_inv[p.dom(h)];
    }
  }
  return m;
}

// Valid models of P2 (a single corner embedding): any unimodular image.
inline MatrixModel random_corner_model(const Presentation& p, std::size_t n, Rng& rng) {
  MatrixModel m;
  m.dims.assign(p.objects.size(), n);
  for (HomId h = 0; h < static_cast<HomId>(p.homs.size()); ++h)
    if (p.is_generator(h)) m.gens[h] = random_unimodular(n, rng);
  return m;
}

// Random composable word starting anywhere: a walk over the letter graph.
inline std::vector<Letter> letter_pool(const Presentation& p) {
  std::vector<Letter> pool;
  for (HomId h = 0; h < static_cast<HomId>(p.homs.size()); ++h)
    if (p.is_generator(h) || p.is_identity(h)) pool.push_back(Letter::gen(h));
  for (int c = 0; c < static_cast<int>(p.corners.size()); ++c)
    pool.push_back(Letter::corner_inv(c));
  for (int s = 0; s < static_cast<int>(p.splitexacts.size()); ++s)
    pool.push_back(Letter::theta(s));
  return pool;
}

inline std::optional<Word> random_word(const Presentation& p, Rng& rng, int max_len) {
  std::vector<Letter> pool = letter_pool(p);
  std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
  std::uniform_int_distribution<int> len_dist(1, max_len);
  const int want = len_dist(rng);
  std::vector<Letter> letters;
  for (int tries = 0; tries < 64 && static_cast<int>(letters.size()) < want; ++tries) {
    Letter l = pool[pick(rng)];
    if (letters.empty() || letter_dom(p, l) == letter_cod(p, letters.back())) {
      letters.push_back(l);
      tries = 0;
    }
  }
  if (letters.empty()) return std::nullopt;
  return make_word(p, letters);
}

// Random typed sum: one seed word plus up to `extra` parallel words found by
// rejection sampling.
inline FormalSum random_sum(const Presentation& p, Rng& rng, int max_len, int extra) {
  std::optional<Word> seed;
  while (!seed) seed = random_word(p, rng, max_len);
  FormalSum s = sum_of_word(*seed);
  std::uniform_int_distribution<int> sign(0, 1);
  for (int k = 0; k < extra; ++k) {
    for (int tries = 0; tries < 32; ++tries) {
      auto w = random_word(p, rng, max_len);
      if (w && w->dom == s.dom && w->cod == s.cod) {
        s.terms.push_back({sign(rng) ? 1 : -1, *w});
        break;
      }
    }
  }
  return s;
}

}  // namespace gk::test
