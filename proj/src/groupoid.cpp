// SPDX-License-Identifier: Apache-2.0
#include "finstack/groupoid.hpp"

#include <algorithm>
#include <numeric>

namespace finstack {

namespace {

bool shape_ok(const Groupoid& g, Report& rep) {
  bool ok = true;
  auto expect = [&](bool cond, const char* msg) {
    if (!cond) { rep.fail(msg); ok = false; }
  };
  expect(g.src.dom == g.arrows && g.src.cod == g.objects, "src is not a map arrows -> objects");
  expect(g.tgt.dom == g.arrows && g.tgt.cod == g.objects, "tgt is not a map arrows -> objects");
  expect(g.unit.dom == g.objects && g.unit.cod == g.arrows, "unit is not a map objects -> arrows");
  expect(g.inv.dom == g.arrows && g.inv.cod == g.arrows, "inv is not a map arrows -> arrows");
  expect(static_cast<int>(g.mul.size()) == g.n_arrows() * g.n_arrows(),
         "mul table has wrong size");
  return ok;
}

}  // namespace

Report validate_groupoid(const Groupoid& g) {
  Report rep;
  if (!shape_ok(g, rep)) return rep;
  const int na = g.n_arrows();
  const int no = g.n_objects();

  for (int m = 0; m < no; ++m) {
    if (g.src.map[g.unit.map[m]] != m)
      rep.fail("src(unit(" + g.objects.name(m) + ")) != " + g.objects.name(m));
    if (g.tgt.map[g.unit.map[m]] != m)
      rep.fail("tgt(unit(" + g.objects.name(m) + ")) != " + g.objects.name(m));
  }

  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      int p = g.mul_at(a, b);
      if (g.composable(a, b)) {
        if (p < 0) {
          rep.fail("mul undefined on composable pair (" + g.arrows.name(a) + "," +
                   g.arrows.name(b) + ")");
          continue;
        }
        if (g.src.map[p] != g.src.map[a])
          rep.fail("src(mul) mismatch at (" + g.arrows.name(a) + "," + g.arrows.name(b) + ")");
        if (g.tgt.map[p] != g.tgt.map[b])
          rep.fail("tgt(mul) mismatch at (" + g.arrows.name(a) + "," + g.arrows.name(b) + ")");
      } else if (p >= 0) {
        rep.fail("mul defined on non-composable pair (" + g.arrows.name(a) + "," +
                 g.arrows.name(b) + ")");
      }
    }
  if (!rep.ok()) return rep;  // later axioms assume a well-formed table

  for (int a = 0; a < na; ++a) {
    int el = g.unit.map[g.src.map[a]];
    int er = g.unit.map[g.tgt.map[a]];
    if (g.mul_at(el, a) != a)
      rep.fail("unit(src(" + g.arrows.name(a) + ")) is not a left identity");
    if (g.mul_at(a, er) != a)
      rep.fail("unit(tgt(" + g.arrows.name(a) + ")) is not a right identity");
  }

  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (!g.composable(a, b)) continue;
      for (int c = 0; c < na; ++c) {
        if (!g.composable(b, c)) continue;
        if (g.mul_at(g.mul_at(a, b), c) != g.mul_at(a, g.mul_at(b, c))) {
          rep.fail("mul not associative at (" + g.arrows.name(a) + "," + g.arrows.name(b) +
                   "," + g.arrows.name(c) + ")");
        }
      }
    }

  for (int a = 0; a < na; ++a) {
    int ia = g.inv.map[a];
    if (g.inv.map[ia] != a) rep.fail("inv not an involution at " + g.arrows.name(a));
    if (g.src.map[ia] != g.tgt.map[a])
      rep.fail("src(inv(" + g.arrows.name(a) + ")) != tgt(" + g.arrows.name(a) + ")");
    if (!g.composable(a, ia) || g.mul_at(a, ia) != g.unit.map[g.src.map[a]])
      rep.fail("mul(a, inv(a)) != unit(src(a)) at " + g.arrows.name(a));
    if (!g.composable(ia, a) || g.mul_at(ia, a) != g.unit.map[g.tgt.map[a]])
      rep.fail("mul(inv(a), a) != unit(tgt(a)) at " + g.arrows.name(a));
  }

  if (!is_lifting_surjection(g.src)) rep.fail("src is not a lifting surjection");
  if (!is_lifting_surjection(g.tgt)) rep.fail("tgt is not a lifting surjection");
  if (!is_continuous(g.unit)) rep.fail("unit is not continuous");
  if (!is_continuous(g.inv)) rep.fail("inv is not continuous");

  // Monotonicity of mul on the fibered product of composable pairs.
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (!g.composable(a, b)) continue;
      for (int a2 = 0; a2 < na; ++a2) {
        if (!g.arrows.leq(a, a2)) continue;
        for (int b2 = 0; b2 < na; ++b2) {
          if (!g.arrows.leq(b, b2) || !g.composable(a2, b2)) continue;
          if (!g.arrows.leq(g.mul_at(a, b), g.mul_at(a2, b2))) {
            rep.fail("mul not monotone: (" + g.arrows.name(a) + "," + g.arrows.name(b) +
                     ") <= (" + g.arrows.name(a2) + "," + g.arrows.name(b2) + ")");
          }
        }
      }
    }
  return rep;
}

Report validate_subgroupoid(const Subgroupoid& sub) {
  Report rep;
  const Groupoid& g = sub.parent;
  if (!(sub.R.space == g.arrows)) rep.fail("R is not a subset of the arrow space");
  if (!(sub.L.space == g.objects)) rep.fail("L is not a subset of the object space");
  if (!rep.ok()) return rep;
  for (int m : sub.L.indices())
    if (!sub.R.contains(g.unit.map[m]))
      rep.fail("unit(" + g.objects.name(m) + ") not in R");
  for (int a : sub.R.indices()) {
    if (!sub.L.contains(g.src.map[a])) rep.fail("src(" + g.arrows.name(a) + ") not in L");
    if (!sub.L.contains(g.tgt.map[a])) rep.fail("tgt(" + g.arrows.name(a) + ") not in L");
    if (!sub.R.contains(g.inv.map[a])) rep.fail("inv(" + g.arrows.name(a) + ") not in R");
  }
  for (int a : sub.R.indices())
    for (int b : sub.R.indices())
      if (g.composable(a, b) && g.mul_at(a, b) >= 0 && !sub.R.contains(g.mul_at(a, b)))
        rep.fail("R not closed under mul at (" + g.arrows.name(a) + "," +
                 g.arrows.name(b) + ")");
  return rep;
}

std::vector<int> orbits(const Groupoid& g) {
  const int no = g.n_objects();
  std::vector<int> parent(no);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int a = 0; a < g.n_arrows(); ++a) {
    int u = find(g.src.map[a]), v = find(g.tgt.map[a]);
    if (u != v) parent[u] = v;
  }
  std::vector<int> id(no, -1);
  int next = 0;
  for (int m = 0; m < no; ++m) {
    int r = find(m);
    if (id[r] < 0) id[r] = next++;
    id[m] = id[r];
  }
  return id;
}

std::vector<std::vector<std::string>> orbit_classes(const Groupoid& g) {
  auto id = orbits(g);
  int k = id.empty() ? 0 : *std::max_element(id.begin(), id.end()) + 1;
  std::vector<std::vector<std::string>> out(k);
  for (int m = 0; m < g.n_objects(); ++m) out[id[m]].push_back(g.objects.name(m));
  return out;
}

Subset restrict_src(const Groupoid& g, const Subset& I) {
  Subset out = Subset::empty(g.arrows);
  for (int a = 0; a < g.n_arrows(); ++a)
    if (I.contains(g.src.map[a])) out.mask[a] = 1;
  return out;
}

Subset restrict_tgt(const Groupoid& g, const Subset& J) {
  Subset out = Subset::empty(g.arrows);
  for (int a = 0; a < g.n_arrows(); ++a)
    if (J.contains(g.tgt.map[a])) out.mask[a] = 1;
  return out;
}

Subset restrict_both(const Groupoid& g, const Subset& I, const Subset& J) {
  Subset out = restrict_src(g, I);
  for (int a = 0; a < g.n_arrows(); ++a)
    if (!J.contains(g.tgt.map[a])) out.mask[a] = 0;
  return out;
}

bool is_stable(const Groupoid& g, const Subset& s) {
  for (int a = 0; a < g.n_arrows(); ++a)
    if (s.contains(g.src.map[a]) != s.contains(g.tgt.map[a])) return false;
  return true;
}

StableSubset make_stable(const Groupoid& g, const Subset& s) {
  if (!is_stable(g, s))
    throw error(errc::not_stable, "subset is not a union of orbits");
  return StableSubset{g, s};
}

StableSubset stable_closure(const StableSubset& s) {
  if (!is_stable(s.parent, s.S))
    throw error(errc::not_stable, "stable_closure: input subset is not stable");
  Subset c = closure(s.S);
  if (!is_stable(s.parent, c))
    throw error(errc::internal_lemma_failure,
                "closure of a stable subset is not stable");
  return StableSubset{s.parent, c};
}

Subgroupoid make_subgroupoid(const Groupoid& g, const Subset& R, const Subset& L) {
  Subgroupoid sub{g, R, L};
  Report rep = validate_subgroupoid(sub);
  if (!rep.ok()) throw error(errc::validation_error, rep.str());
  return sub;
}

bool is_closed_subgroupoid(const Subgroupoid& sub) {
  const Groupoid& g = sub.parent;
  Subset gll = restrict_both(g, sub.L, sub.L);
  // closure of R within the subspace on Gamma_L^L
  for (int a : gll.indices()) {
    if (sub.R.contains(a)) continue;
    for (int b : sub.R.indices())
      if (g.arrows.leq(a, b)) return false;
  }
  return true;
}

bool is_transversal(const Groupoid& g, const StableSubset& s, const Subset& l) {
  Subset gamma_l = restrict_src(g, l);
  for (int m = 0; m < g.n_objects(); ++m) {
    if (!l.contains(m) || !s.S.contains(m)) continue;
    int em = g.unit.map[m];
    // targets of arrows above unit(m) inside Gamma_L
    std::vector<char> reach(g.n_objects(), 0);
    for (int a : gamma_l.indices())
      if (g.arrows.leq(em, a)) reach[g.tgt.map[a]] = 1;
    for (int y = 0; y < g.n_objects(); ++y)
      if (g.objects.leq(m, y) && s.S.contains(y) && !reach[y]) return false;
  }
  return true;
}

namespace {

// orbit id -> whether the whole orbit sits inside the subset
std::vector<char> orbits_inside(const Groupoid& g, const Subset& s,
                                const std::vector<int>& orbit_id) {
  int k = orbit_id.empty() ? 0 : *std::max_element(orbit_id.begin(), orbit_id.end()) + 1;
  std::vector<char> inside(k, 1);
  for (int m = 0; m < g.n_objects(); ++m)
    if (!s.contains(m)) inside[orbit_id[m]] = 0;
  return inside;
}

bool meets_all_orbits_in(const Groupoid& g, const Subset& l, const Subset& s) {
  auto orbit_id = orbits(g);
  auto inside = orbits_inside(g, s, orbit_id);
  std::vector<char> met(inside.size(), 0);
  for (int m : l.indices()) met[orbit_id[m]] = 1;
  for (size_t o = 0; o < inside.size(); ++o)
    if (inside[o] && !met[o]) return false;
  return true;
}

}  // namespace

bool is_in_S(const Subgroupoid& sub, const StableSubset& s) {
  Subset ls = sub.L;
  for (int i = 0; i < ls.space.size(); ++i)
    if (!s.S.contains(i)) ls.mask[i] = 0;
  if (!is_dense_in(ls, sub.L)) return false;
  if (!is_transversal(sub.parent, s, sub.L)) return false;
  return meets_all_orbits_in(sub.parent, sub.L, s.S);
}

bool is_full_in_S(const Subgroupoid& sub, const StableSubset& s) {
  const Groupoid& g = sub.parent;
  for (int a = 0; a < g.n_arrows(); ++a) {
    int u = g.src.map[a], v = g.tgt.map[a];
    if (sub.L.contains(u) && s.S.contains(u) && sub.L.contains(v) && s.S.contains(v) &&
        !sub.R.contains(a))
      return false;
  }
  return true;
}

bool is_surjective_in_closure(const Subgroupoid& sub, const StableSubset& s) {
  return meets_all_orbits_in(sub.parent, sub.L, closure(s.S));
}

bool is_proper_subgroupoid(const Subgroupoid&, const StableSubset&) {
  return true;  // every finite space is compact
}

Groupoid pair_groupoid(const FinSpace& z) {
  ProductSpace p = product(z, z);
  Groupoid g;
  g.arrows = p.space;
  g.objects = z;
  g.src = p.proj1;
  g.tgt = p.proj2;
  g.unit = CMap{z, g.arrows, std::vector<int>(z.size())};
  for (int m = 0; m < z.size(); ++m) g.unit.map[m] = p.pair_index(m, m);
  g.inv = CMap{g.arrows, g.arrows, std::vector<int>(g.arrows.size())};
  for (int a = 0; a < g.arrows.size(); ++a)
    g.inv.map[a] = p.pair_index(p.pairs[a].second, p.pairs[a].first);
  g.mul.assign(g.n_arrows() * g.n_arrows(), -1);
  for (int a = 0; a < g.n_arrows(); ++a)
    for (int b = 0; b < g.n_arrows(); ++b)
      if (p.pairs[a].second == p.pairs[b].first)
        g.set_mul(a, b, p.pair_index(p.pairs[a].first, p.pairs[b].second));
  return g;
}

Groupoid unit_groupoid(const FinSpace& m) {
  std::vector<std::string> names;
  names.reserve(m.size());
  for (int i = 0; i < m.size(); ++i) names.push_back("id_" + m.name(i));
  std::vector<char> rel(m.size() * m.size());
  for (int i = 0; i < m.size(); ++i)
    for (int j = 0; j < m.size(); ++j) rel[i * m.size() + j] = m.leq(i, j);
  Groupoid g;
  g.arrows = FinSpace::from_matrix(names, rel);
  g.objects = m;
  std::vector<int> arrow_of(m.size());
  for (int i = 0; i < m.size(); ++i) arrow_of[i] = g.arrows.index("id_" + m.name(i));
  std::vector<int> object_of(m.size());
  for (int i = 0; i < m.size(); ++i) object_of[arrow_of[i]] = i;
  g.src = CMap{g.arrows, m, object_of};
  g.tgt = g.src;
  g.unit = CMap{m, g.arrows, arrow_of};
  g.inv = CMap::identity(g.arrows);
  g.mul.assign(m.size() * m.size(), -1);
  for (int a = 0; a < m.size(); ++a) g.set_mul(a, a, a);
  return g;
}

Groupoid direct_product_groupoid(const Groupoid& g, const FinSpace& z) {
  ProductSpace zz = product(z, z);
  ProductSpace arr = product(g.arrows, zz.space);
  ProductSpace obj = product(g.objects, z);
  Groupoid d;
  d.arrows = arr.space;
  d.objects = obj.space;
  const int na = d.arrows.size();
  d.src = CMap{d.arrows, d.objects, std::vector<int>(na)};
  d.tgt = CMap{d.arrows, d.objects, std::vector<int>(na)};
  d.inv = CMap{d.arrows, d.arrows, std::vector<int>(na)};
  for (int a = 0; a < na; ++a) {
    auto [gam, zz_idx] = arr.pairs[a];
    auto [z1, z2] = zz.pairs[zz_idx];
    d.src.map[a] = obj.pair_index(g.src.map[gam], z1);
    d.tgt.map[a] = obj.pair_index(g.tgt.map[gam], z2);
    d.inv.map[a] = arr.pair_index(g.inv.map[gam], zz.pair_index(z2, z1));
  }
  d.unit = CMap{d.objects, d.arrows, std::vector<int>(d.objects.size())};
  for (int o = 0; o < d.objects.size(); ++o) {
    auto [m, zp] = obj.pairs[o];
    d.unit.map[o] = arr.pair_index(g.unit.map[m], zz.pair_index(zp, zp));
  }
  d.mul.assign(na * na, -1);
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      auto [ga, za] = arr.pairs[a];
      auto [gb, zb] = arr.pairs[b];
      auto [a1, a2] = zz.pairs[za];
      auto [b1, b2] = zz.pairs[zb];
      if (g.composable(ga, gb) && a2 == b1)
        d.set_mul(a, b, arr.pair_index(g.mul_at(ga, gb), zz.pair_index(a1, b2)));
    }
  return d;
}

Groupoid subgroupoid_as_groupoid(const Subgroupoid& sub) {
  const Groupoid& g = sub.parent;
  auto [arr, arr_incl] = subspace(sub.R);
  auto [obj, obj_incl] = subspace(sub.L);
  auto arr_local = [&](int ambient) {
    for (int i = 0; i < arr.size(); ++i)
      if (arr_incl.map[i] == ambient) return i;
    return -1;
  };
  auto obj_local = [&](int ambient) {
    for (int i = 0; i < obj.size(); ++i)
      if (obj_incl.map[i] == ambient) return i;
    return -1;
  };
  Groupoid h;
  h.arrows = arr;
  h.objects = obj;
  h.src = CMap{arr, obj, std::vector<int>(arr.size())};
  h.tgt = CMap{arr, obj, std::vector<int>(arr.size())};
  h.inv = CMap{arr, arr, std::vector<int>(arr.size())};
  for (int i = 0; i < arr.size(); ++i) {
    h.src.map[i] = obj_local(g.src.map[arr_incl.map[i]]);
    h.tgt.map[i] = obj_local(g.tgt.map[arr_incl.map[i]]);
    h.inv.map[i] = arr_local(g.inv.map[arr_incl.map[i]]);
  }
  h.unit = CMap{obj, arr, std::vector<int>(obj.size())};
  for (int i = 0; i < obj.size(); ++i)
    h.unit.map[i] = arr_local(g.unit.map[obj_incl.map[i]]);
  h.mul.assign(arr.size() * arr.size(), -1);
  for (int i = 0; i < arr.size(); ++i)
    for (int j = 0; j < arr.size(); ++j) {
      int p = g.mul_at(arr_incl.map[i], arr_incl.map[j]);
      if (p >= 0) {
        int lp = arr_local(p);
        if (lp >= 0) h.set_mul(i, j, lp);
      }
    }
  return h;
}

namespace {

struct IsoSearch {
  const Groupoid& a;
  const Groupoid& b;
  std::vector<int> objmap;      // a object -> b object
  std::vector<int> arrmap;      // a arrow -> b arrow
  std::vector<char> obj_used, arr_used;

  IsoSearch(const Groupoid& a_, const Groupoid& b_)
      : a(a_), b(b_),
        objmap(a_.n_objects(), -1), arrmap(a_.n_arrows(), -1),
        obj_used(b_.n_objects(), 0), arr_used(b_.n_arrows(), 0) {}

  bool arrow_consistent(int x, int y) {
    if (b.src.map[y] != objmap[a.src.map[x]]) return false;
    if (b.tgt.map[y] != objmap[a.tgt.map[x]]) return false;
    for (int x2 = 0; x2 < a.n_arrows(); ++x2) {
      int y2 = arrmap[x2];
      if (y2 < 0) continue;
      if (a.arrows.leq(x, x2) != b.arrows.leq(y, y2)) return false;
      if (a.arrows.leq(x2, x) != b.arrows.leq(y2, y)) return false;
      if (a.inv.map[x] == x2 && b.inv.map[y] != y2) return false;
      if (a.inv.map[x2] == x && b.inv.map[y2] != y) return false;
      // products with both factors mapped must agree when the result is mapped
      int p1 = a.mul_at(x, x2), p2 = a.mul_at(x2, x);
      if (p1 >= 0) {
        int q = b.mul_at(y, y2);
        if (q < 0) return false;
        if (arrmap[p1] >= 0 && arrmap[p1] != q) return false;
      } else if (a.composable(x, x2) != b.composable(y, y2)) {
        return false;
      }
      if (p2 >= 0) {
        int q = b.mul_at(y2, y);
        if (q < 0) return false;
        if (arrmap[p2] >= 0 && arrmap[p2] != q) return false;
      }
    }
    if (a.inv.map[x] == x && b.inv.map[y] != y) return false;
    int sq = a.mul_at(x, x);
    if (sq == x && b.mul_at(y, y) != y) return false;
    return true;
  }

  bool assign_arrows(int x) {
    while (x < a.n_arrows() && arrmap[x] >= 0) ++x;
    if (x == a.n_arrows()) return final_check();
    for (int y = 0; y < b.n_arrows(); ++y) {
      if (arr_used[y] || !arrow_consistent(x, y)) continue;
      arrmap[x] = y;
      arr_used[y] = 1;
      if (assign_arrows(x + 1)) return true;
      arrmap[x] = -1;
      arr_used[y] = 0;
    }
    return false;
  }

  bool final_check() {
    for (int x = 0; x < a.n_arrows(); ++x) {
      if (b.inv.map[arrmap[x]] != arrmap[a.inv.map[x]]) return false;
      for (int x2 = 0; x2 < a.n_arrows(); ++x2) {
        int p = a.mul_at(x, x2);
        int q = b.mul_at(arrmap[x], arrmap[x2]);
        if ((p < 0) != (q < 0)) return false;
        if (p >= 0 && arrmap[p] != q) return false;
      }
    }
    return true;
  }

  bool assign_objects(int m) {
    if (m == a.n_objects()) {
      // units are forced by the object map
      std::vector<int> assigned;
      bool ok = true;
      for (int i = 0; i < a.n_objects() && ok; ++i) {
        int x = a.unit.map[i], y = b.unit.map[objmap[i]];
        if (arrmap[x] == y) continue;
        if (arrmap[x] >= 0 || arr_used[y] || !arrow_consistent(x, y)) {
          ok = false;
          break;
        }
        arrmap[x] = y;
        arr_used[y] = 1;
        assigned.push_back(x);
      }
      bool found = ok && assign_arrows(0);
      if (!found) {
        for (int x : assigned) {
          arr_used[arrmap[x]] = 0;
          arrmap[x] = -1;
        }
      }
      return found;
    }
    for (int w = 0; w < b.n_objects(); ++w) {
      if (obj_used[w]) continue;
      bool ok = true;
      for (int m2 = 0; m2 < a.n_objects() && ok; ++m2) {
        if (objmap[m2] < 0) continue;
        if (a.objects.leq(m, m2) != b.objects.leq(w, objmap[m2])) ok = false;
        if (a.objects.leq(m2, m) != b.objects.leq(objmap[m2], w)) ok = false;
      }
      if (!ok) continue;
      objmap[m] = w;
      obj_used[w] = 1;
      if (assign_objects(m + 1)) return true;
      objmap[m] = -1;
      obj_used[w] = 0;
    }
    return false;
  }
};

}  // namespace

bool groupoid_isomorphic(const Groupoid& a, const Groupoid& b) {
  if (a.n_arrows() != b.n_arrows() || a.n_objects() != b.n_objects()) return false;
  IsoSearch search(a, b);
  return search.assign_objects(0);
}

}  // namespace finstack
