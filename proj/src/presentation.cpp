#include "gk/presentation.hpp"

#include <algorithm>
#include <sstream>

namespace gk {

bool ValidationReport::has(const std::string& condition) const {
  return std::any_of(violations.begin(), violations.end(),
                     [&](const Violation& v) { return v.condition == condition; });
}

std::string ValidationReport::to_string() const {
  if (ok()) return "ok\n";
  std::ostringstream out;
  for (const Violation& v : violations) out << v.condition << ": " << v.message << "\n";
  return out.str();
}

ObjectId Presentation::object_id(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) throw Error("unknown object: " + name);
  return it->second;
}

HomId Presentation::hom_id(const std::string& name) const {
  auto it = hom_index_.find(name);
  if (it == hom_index_.end()) throw Error("unknown hom: " + name);
  return it->second;
}

std::optional<ObjectId> Presentation::find_object(const std::string& name) const {
  auto it = object_index_.find(name);
  if (it == object_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<HomId> Presentation::find_hom(const std::string& name) const {
  auto it = hom_index_.find(name);
  if (it == hom_index_.end()) return std::nullopt;
  return it->second;
}

HomId Presentation::identity_hom(ObjectId o) const { return identity_index_[o]; }

HomId Presentation::zero_hom(ObjectId a, ObjectId b) const {
  return zero_index_.at({a, b});
}

std::optional<HomId> Presentation::table_entry(HomId f, HomId g) const {
  auto it = table_index_.find({f, g});
  if (it == table_index_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> Presentation::find_sum_by_object(ObjectId sum_object) const {
  for (int i = 0; i < static_cast<int>(sums.size()); ++i)
    if (sums[i].sum_object == sum_object) return i;
  return std::nullopt;
}

std::optional<int> Presentation::find_splitexact(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(splitexacts.size()); ++i)
    if (splitexacts[i].name == name) return i;
  return std::nullopt;
}

std::optional<int> Presentation::find_corner(const std::string& name) const {
  for (int i = 0; i < static_cast<int>(corners.size()); ++i)
    if (corners[i].name == name) return i;
  return std::nullopt;
}

ObjectId Presentation::rep_of(ObjectId o) const {
  const RepresentativeDecl* r = rep_decl(o);
  return r ? r->rep : o;
}

const RepresentativeDecl* Presentation::rep_decl(ObjectId o) const {
  auto it = rep_index_.find(o);
  return it == rep_index_.end() ? nullptr : &representatives[it->second];
}

void Presentation::materialize_implicit_homs() {
  const int n = static_cast<int>(objects.size());
  // zero homs for every ordered pair
  zero_index_.clear();
  for (ObjectId a = 0; a < n; ++a) {
    for (ObjectId b = 0; b < n; ++b) {
      std::string name = "0(" + objects[a].name + "," + objects[b].name + ")";
      HomId id = static_cast<HomId>(homs.size());
      homs.push_back({name, HomKind::zero, a, b, {}});
      zero_index_[{a, b}] = id;
      hom_index_[name] = id;
    }
  }
  // identities; a zero-flagged object's identity is its zero endomorphism
  identity_index_.assign(n, -1);
  for (ObjectId a = 0; a < n; ++a) {
    if (objects[a].is_zero) {
      identity_index_[a] = zero_index_[{a, a}];
      hom_index_["id(" + objects[a].name + ")"] = identity_index_[a];
      continue;
    }
    std::string name = "id(" + objects[a].name + ")";
    HomId id = static_cast<HomId>(homs.size());
    homs.push_back({name, HomKind::identity, a, a, {}});
    identity_index_[a] = id;
    hom_index_[name] = id;
  }
  table_index_.clear();
  for (const CompositionEntry& e : table) table_index_[{e.f, e.g}] = e.result;
  rep_index_.clear();
  for (int i = 0; i < static_cast<int>(representatives.size()); ++i)
    rep_index_[representatives[i].object] = i;
}

bool operator==(const Presentation& x, const Presentation& y) {
  auto obj_eq = [](const ObjectDecl& a, const ObjectDecl& b) {
    return a.name == b.name && a.stabilization_of == b.stabilization_of &&
           a.is_zero == b.is_zero;
  };
  auto hom_eq = [](const HomDecl& a, const HomDecl& b) {
    return a.name == b.name && a.kind == b.kind && a.dom == b.dom && a.cod == b.cod;
  };
  if (x.objects.size() != y.objects.size() || x.homs.size() != y.homs.size())
    return false;
  for (std::size_t i = 0; i < x.objects.size(); ++i)
    if (!obj_eq(x.objects[i], y.objects[i])) return false;
  for (std::size_t i = 0; i < x.homs.size(); ++i)
    if (!hom_eq(x.homs[i], y.homs[i])) return false;
  auto triple = [](const CompositionEntry& e) { return std::tuple(e.f, e.g, e.result); };
  if (x.table.size() != y.table.size()) return false;
  for (std::size_t i = 0; i < x.table.size(); ++i)
    if (triple(x.table[i]) != triple(y.table[i])) return false;
  auto sum_eq = [](const SumDecl& a, const SumDecl& b) {
    return a.sum_object == b.sum_object && a.left == b.left && a.right == b.right &&
           a.i_left == b.i_left && a.i_right == b.i_right && a.p_left == b.p_left &&
           a.p_right == b.p_right;
  };
  if (x.sums.size() != y.sums.size()) return false;
  for (std::size_t i = 0; i < x.sums.size(); ++i)
    if (!sum_eq(x.sums[i], y.sums[i])) return false;
  auto corner_eq = [](const CornerDecl& a, const CornerDecl& b) {
    return a.name == b.name && a.emb == b.emb;
  };
  if (x.corners.size() != y.corners.size()) return false;
  for (std::size_t i = 0; i < x.corners.size(); ++i)
    if (!corner_eq(x.corners[i], y.corners[i])) return false;
  auto hmt_eq = [](const HomotopyDecl& a, const HomotopyDecl& b) {
    return a.f0 == b.f0 && a.f1 == b.f1;
  };
  if (x.homotopies.size() != y.homotopies.size()) return false;
  for (std::size_t i = 0; i < x.homotopies.size(); ++i)
    if (!hmt_eq(x.homotopies[i], y.homotopies[i])) return false;
  auto se_eq = [](const SplitExactDecl& a, const SplitExactDecl& b) {
    return a.name == b.name && a.a == b.a && a.d == b.d && a.b == b.b && a.f == b.f &&
           a.g == b.g && a.s == b.s && a.sum == b.sum;
  };
  if (x.splitexacts.size() != y.splitexacts.size()) return false;
  for (std::size_t i = 0; i < x.splitexacts.size(); ++i)
    if (!se_eq(x.splitexacts[i], y.splitexacts[i])) return false;
  auto rep_eq = [](const RepresentativeDecl& a, const RepresentativeDecl& b) {
    auto cl = [](const CornerLink& u, const CornerLink& v) {
      return u.corner == v.corner && u.corner_rep == v.corner_rep &&
             u.stab_iso == v.stab_iso;
    };
    auto sl = [](const SplitLink& u, const SplitLink& v) {
      return u.split == v.split && u.split_rep == v.split_rep && u.sum_leg == v.sum_leg;
    };
    if (!(a.object == b.object && a.rep == b.rep && a.iso == b.iso &&
          a.iso_inv == b.iso_inv))
      return false;
    if (a.corner_links.size() != b.corner_links.size() ||
        a.split_links.size() != b.split_links.size())
      return false;
    for (std::size_t i = 0; i < a.corner_links.size(); ++i)
      if (!cl(a.corner_links[i], b.corner_links[i])) return false;
    for (std::size_t i = 0; i < a.split_links.size(); ++i)
      if (!sl(a.split_links[i], b.split_links[i])) return false;
    return true;
  };
  if (x.representatives.size() != y.representatives.size()) return false;
  for (std::size_t i = 0; i < x.representatives.size(); ++i)
    if (!rep_eq(x.representatives[i], y.representatives[i])) return false;
  return x.group_tag == y.group_tag && x.zero_aliases == y.zero_aliases;
}

HomId compose_lookup(const Presentation& p, HomId f, HomId g) {
  if (p.cod(f) != p.dom(g)) {
    throw TypeError("non-composable pair " + p.hom_name(f) + " ; " + p.hom_name(g) +
                    ": cod " + p.object_name(p.cod(f)) + " != dom " +
                    p.object_name(p.dom(g)));
  }
  if (p.is_zero(f) || p.is_zero(g)) return p.zero_hom(p.dom(f), p.cod(g));
  if (p.is_identity(f)) return g;
  if (p.is_identity(g)) return f;
  if (auto r = p.table_entry(f, g)) return *r;
  throw Error("missing composition entry " + p.hom_name(f) + " ; " + p.hom_name(g));
}

namespace {

std::string hom_ref(const Presentation& p, HomId h) { return p.hom_name(h); }

}  // namespace

ValidationReport validate_presentation(const Presentation& p) {
  ValidationReport report;
  auto add = [&](const std::string& condition, const std::string& message) {
    report.violations.push_back({condition, message});
  };

  // generator homs, excluding zero aliases
  std::vector<HomId> gens;
  for (HomId h = 0; h < static_cast<HomId>(p.homs.size()); ++h)
    if (p.is_generator(h)) gens.push_back(h);

  // totality over composable generator pairs
  std::map<std::pair<HomId, HomId>, HomId> entry;
  for (const CompositionEntry& e : p.table) {
    if (entry.count({e.f, e.g}))
      add("duplicate-composition", hom_ref(p, e.f) + " ; " + hom_ref(p, e.g));
    entry[{e.f, e.g}] = e.result;
  }
  for (HomId f : gens) {
    for (HomId g : gens) {
      if (p.cod(f) != p.dom(g)) continue;
      if (!entry.count({f, g}))
        add("missing-composition",
            "no entry for " + hom_ref(p, f) + " ; " + hom_ref(p, g));
    }
  }

  auto lookup = [&](HomId f, HomId g) -> std::optional<HomId> {
    if (p.cod(f) != p.dom(g)) return std::nullopt;
    if (p.is_zero(f) || p.is_zero(g)) return p.zero_hom(p.dom(f), p.cod(g));
    if (p.is_identity(f)) return g;
    if (p.is_identity(g)) return f;
    auto it = entry.find({f, g});
    if (it == entry.end()) return std::nullopt;
    return it->second;
  };

  // associativity over all composable generator triples
  for (HomId f : gens) {
    for (HomId g : gens) {
      if (p.cod(f) != p.dom(g)) continue;
      auto fg = lookup(f, g);
      if (!fg) continue;
      for (HomId h : gens) {
        if (p.cod(g) != p.dom(h)) continue;
        auto gh = lookup(g, h);
        if (!gh) continue;
        auto left = lookup(*fg, h);
        auto right = lookup(f, *gh);
        if (!left || !right) continue;  // reported as missing already
        if (*left != *right) {
          add("associativity", "(" + hom_ref(p, f) + ";" + hom_ref(p, g) + ");" +
                                   hom_ref(p, h) + " = " + hom_ref(p, *left) +
                                   " but " + hom_ref(p, f) + ";(" + hom_ref(p, g) +
                                   ";" + hom_ref(p, h) + ") = " + hom_ref(p, *right));
        }
      }
    }
  }

  auto expect = [&](const std::string& condition, HomId f, HomId g, HomId want,
                    const std::string& where) {
    auto got = lookup(f, g);
    if (!got || *got != want) {
      add(condition, hom_ref(p, f) + ";" + hom_ref(p, g) + " = " +
                         (got ? hom_ref(p, *got) : std::string("<missing>")) +
                         ", expected " + hom_ref(p, want) + " for " + where);
    }
  };

  // biproduct facts
  for (const SumDecl& sd : p.sums) {
    const std::string where = "sum " + p.object_name(sd.sum_object);
    if (p.dom(sd.i_left) != sd.left || p.cod(sd.i_left) != sd.sum_object ||
        p.dom(sd.i_right) != sd.right || p.cod(sd.i_right) != sd.sum_object ||
        p.dom(sd.p_left) != sd.sum_object || p.cod(sd.p_left) != sd.left ||
        p.dom(sd.p_right) != sd.sum_object || p.cod(sd.p_right) != sd.right) {
      add("sum-typing", where + ": injection/projection typing is wrong");
      continue;
    }
    expect("sum-fact", sd.i_left, sd.p_left, p.identity_hom(sd.left), where);
    expect("sum-fact", sd.i_right, sd.p_right, p.identity_hom(sd.right), where);
    expect("sum-fact", sd.i_left, sd.p_right, p.zero_hom(sd.left, sd.right), where);
    expect("sum-fact", sd.i_right, sd.p_left, p.zero_hom(sd.right, sd.left), where);
  }

  // split-exact facts: s;g = id(B), f;g = 0(A,B)
  for (const SplitExactDecl& se : p.splitexacts) {
    const std::string where = "splitexact " + se.name;
    if (p.dom(se.f) != se.a || p.cod(se.f) != se.d || p.dom(se.g) != se.d ||
        p.cod(se.g) != se.b || p.dom(se.s) != se.b || p.cod(se.s) != se.d) {
      add("splitexact-typing", where + ": f/g/s typing is wrong");
      continue;
    }
    const SumDecl& sd = p.sums[se.sum];
    if (sd.left != se.a || sd.right != se.b)
      add("splitexact-typing", where + ": declared sum is not A (+) B");
    expect("splitexact-fact", se.s, se.g, p.identity_hom(se.b),
           "s;g = id(" + p.object_name(se.b) + ") in " + where);
    expect("splitexact-fact", se.f, se.g, p.zero_hom(se.a, se.b),
           "f;g = 0 in " + where);
  }

  // corner embeddings target the declared stabilization of their domain
  for (const CornerDecl& cd : p.corners) {
    const ObjectDecl& target = p.objects[p.cod(cd.emb)];
    if (!target.stabilization_of || *target.stabilization_of != p.dom(cd.emb)) {
      add("corner-target", "corner " + cd.name + ": codomain " + target.name +
                               " is not the stabilization of " +
                               p.object_name(p.dom(cd.emb)));
    }
  }

  for (const HomotopyDecl& hd : p.homotopies) {
    if (p.dom(hd.f0) != p.dom(hd.f1) || p.cod(hd.f0) != p.cod(hd.f1))
      add("homotopy-typing", hom_ref(p, hd.f0) + " ~ " + hom_ref(p, hd.f1) +
                                 " are not parallel");
  }

  // representative declarations
  for (const RepresentativeDecl& rd : p.representatives) {
    const std::string where = "rep " + p.object_name(rd.rep) + " for " +
                              p.object_name(rd.object);
    if (p.dom(rd.iso) != rd.object || p.cod(rd.iso) != rd.rep ||
        p.dom(rd.iso_inv) != rd.rep || p.cod(rd.iso_inv) != rd.object) {
      add("rep-typing", where + ": iso typing is wrong");
      continue;
    }
    expect("rep-iso", rd.iso, rd.iso_inv, p.identity_hom(rd.object), where);
    expect("rep-iso", rd.iso_inv, rd.iso, p.identity_hom(rd.rep), where);
    if (p.rep_of(rd.rep) != rd.rep)
      add("rep-endpoint", where + ": representative has a representative of its own");

    // every corner out of the repped object must be linked
    for (int ci = 0; ci < static_cast<int>(p.corners.size()); ++ci) {
      if (p.dom(p.corners[ci].emb) != rd.object) continue;
      bool linked = std::any_of(rd.corner_links.begin(), rd.corner_links.end(),
                                [&](const CornerLink& l) { return l.corner == ci; });
      if (!linked)
        add("rep-link-missing",
            where + ": corner " + p.corners[ci].name + " has no link");
    }
    for (const CornerLink& l : rd.corner_links) {
      HomId c = p.corners[l.corner].emb;
      HomId cp = p.corners[l.corner_rep].emb;
      const std::string lw = where + ", corner " + p.corners[l.corner].name;
      if (p.dom(cp) != rd.rep) {
        add("rep-link-typing", lw + ": linked corner is not out of the representative");
        continue;
      }
      if (p.dom(l.stab_iso) != p.cod(c) || p.cod(l.stab_iso) != p.cod(cp)) {
        add("rep-link-typing", lw + ": stabilization iso typing is wrong");
        continue;
      }
      // pi ; c' == c ; (pi (x) id)
      auto lhs = lookup(rd.iso, cp);
      auto rhs = lookup(c, l.stab_iso);
      if (!lhs || !rhs || *lhs != *rhs)
        add("rep-square", lw + ": pi;c' != c;stab_iso");
      if (p.rep_of(p.cod(cp)) != p.cod(cp))
        add("rep-endpoint", lw + ": " + p.object_name(p.cod(cp)) +
                                " is not a representative object");
    }

    // every split-exact sequence with middle object == repped object
    for (int si = 0; si < static_cast<int>(p.splitexacts.size()); ++si) {
      if (p.splitexacts[si].d != rd.object) continue;
      bool linked = std::any_of(rd.split_links.begin(), rd.split_links.end(),
                                [&](const SplitLink& l) { return l.split == si; });
      if (!linked)
        add("rep-link-missing",
            where + ": splitexact " + p.splitexacts[si].name + " has no link");
    }
    for (const SplitLink& l : rd.split_links) {
      const SplitExactDecl& se = p.splitexacts[l.split];
      const SplitExactDecl& sp = p.splitexacts[l.split_rep];
      const std::string lw = where + ", splitexact " + se.name;
      if (sp.d != rd.rep) {
        add("rep-link-typing", lw + ": linked sequence is not on the representative");
        continue;
      }
      if (sp.a != p.rep_of(se.a) || sp.b != p.rep_of(se.b)) {
        add("rep-link-typing", lw + ": linked sequence ends are not the representatives");
        continue;
      }
      const SumDecl& sum = p.sums[se.sum];
      const SumDecl& sum_rep = p.sums[sp.sum];
      if (p.dom(l.sum_leg) != sum_rep.sum_object || p.cod(l.sum_leg) != sum.sum_object) {
        add("rep-link-typing", lw + ": sum leg typing is wrong");
        continue;
      }
      auto iso_of = [&](ObjectId o) {
        const RepresentativeDecl* r = p.rep_decl(o);
        return r ? r->iso : p.identity_hom(o);
      };
      // pi_A ; f' == f ; pi_D and pi_B ; s' == s ; pi_D
      auto q1l = lookup(iso_of(se.a), sp.f), q1r = lookup(se.f, rd.iso);
      if (!q1l || !q1r || *q1l != *q1r) add("rep-square", lw + ": pi_A;f' != f;pi_D");
      auto q2l = lookup(iso_of(se.b), sp.s), q2r = lookup(se.s, rd.iso);
      if (!q2l || !q2r || *q2l != *q2r) add("rep-square", lw + ": pi_B;s' != s;pi_D");
      // sum leg: (w;p_left);pi_A == p_left' and (w;p_right);pi_B == p_right'
      auto wl = lookup(l.sum_leg, sum.p_left);
      auto wl2 = wl ? lookup(*wl, iso_of(se.a)) : std::optional<HomId>{};
      if (!wl2 || *wl2 != sum_rep.p_left) add("rep-square", lw + ": sum leg left square");
      auto wr = lookup(l.sum_leg, sum.p_right);
      auto wr2 = wr ? lookup(*wr, iso_of(se.b)) : std::optional<HomId>{};
      if (!wr2 || *wr2 != sum_rep.p_right)
        add("rep-square", lw + ": sum leg right square");
      if (p.rep_of(sp.d) != sp.d)
        add("rep-endpoint", lw + ": " + p.object_name(sp.d) +
                                " is not a representative object");
      if (p.rep_of(sum_rep.sum_object) != sum_rep.sum_object)
        add("rep-endpoint", lw + ": " + p.object_name(sum_rep.sum_object) +
                                " is not a representative object");
    }
  }

  return report;
}

std::string print_presentation(const Presentation& p) {
  std::ostringstream out;
  if (p.group_tag) out << "group " << *p.group_tag << "\n";
  for (const ObjectDecl& o : p.objects) {
    out << "object " << o.name;
    if (o.is_zero) out << " zero";
    out << "\n";
  }
  for (const HomDecl& h : p.homs) {
    if (h.kind != HomKind::generator) continue;
    out << "hom " << h.name << " : " << p.object_name(h.dom) << " -> "
        << p.object_name(h.cod) << "\n";
  }
  // zero-alias generators keep their declaration line
  for (const auto& [name, id] : p.zero_aliases) {
    out << "hom " << name << " : " << p.object_name(p.dom(id)) << " -> "
        << p.object_name(p.cod(id)) << "\n";
  }
  for (const CornerDecl& cd : p.corners) {
    out << "stab " << p.object_name(p.cod(cd.emb)) << " of "
        << p.object_name(p.dom(cd.emb)) << " via " << cd.name << "\n";
  }
  for (const CompositionEntry& e : p.table) {
    const std::string rhs = p.is_zero(e.result) ? "0" : p.hom_name(e.result);
    out << "compose " << p.hom_name(e.f) << " ; " << p.hom_name(e.g) << " = " << rhs
        << "\n";
  }
  for (const SumDecl& sd : p.sums) {
    out << "sum " << p.object_name(sd.sum_object) << " = " << p.object_name(sd.left)
        << " (+) " << p.object_name(sd.right) << " inj " << p.hom_name(sd.i_left) << " "
        << p.hom_name(sd.i_right) << " proj " << p.hom_name(sd.p_left) << " "
        << p.hom_name(sd.p_right) << "\n";
  }
  for (const HomotopyDecl& hd : p.homotopies) {
    out << "homotopic " << p.hom_name(hd.f0) << " ~ " << p.hom_name(hd.f1) << "\n";
  }
  for (const SplitExactDecl& se : p.splitexacts) {
    out << "splitexact " << se.name << " : " << p.hom_name(se.f) << " "
        << p.hom_name(se.g) << " " << p.hom_name(se.s) << " sum "
        << p.object_name(p.sums[se.sum].sum_object) << "\n";
  }
  for (const RepresentativeDecl& rd : p.representatives) {
    out << "rep " << p.object_name(rd.rep) << " for " << p.object_name(rd.object)
        << " via " << p.hom_name(rd.iso) << " invvia " << p.hom_name(rd.iso_inv);
    for (const CornerLink& l : rd.corner_links) {
      out << " link corner " << p.corners[l.corner].name << " to "
          << p.corners[l.corner_rep].name << " via " << p.hom_name(l.stab_iso);
    }
    for (const SplitLink& l : rd.split_links) {
      out << " link split " << p.splitexacts[l.split].name << " to "
          << p.splitexacts[l.split_rep].name << " sumvia " << p.hom_name(l.sum_leg);
    }
    out << "\n";
  }
  return out.str();
}

}  // namespace gk
