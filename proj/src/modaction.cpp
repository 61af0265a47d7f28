// SPDX-License-Identifier: Apache-2.0
#include "finstack/modaction.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace finstack {

Report validate_module(const RightModule& m) {
  Report rep;
  const Groupoid& g = m.groupoid;
  if (!(m.phi.dom == m.Z) || !(m.phi.cod == g.objects)) {
    rep.fail("phi is not a map Z -> objects");
    return rep;
  }
  if (static_cast<int>(m.act.size()) != m.Z.size() * g.n_arrows()) {
    rep.fail("action table has wrong size");
    return rep;
  }
  if (!is_continuous(m.phi)) rep.fail("phi is not continuous");
  const int nz = m.Z.size(), na = g.n_arrows();
  for (int z = 0; z < nz; ++z)
    for (int a = 0; a < na; ++a) {
      int w = m.act_at(z, a);
      if (m.defined(z, a)) {
        if (w < 0) {
          rep.fail("action undefined at (" + m.Z.name(z) + "," + g.arrows.name(a) + ")");
          continue;
        }
        if (m.phi.map[w] != g.tgt.map[a])
          rep.fail("phi(z.g) != tgt(g) at (" + m.Z.name(z) + "," + g.arrows.name(a) + ")");
      } else if (w >= 0) {
        rep.fail("action defined off the moment fiber at (" + m.Z.name(z) + "," +
                 g.arrows.name(a) + ")");
      }
    }
  if (!rep.ok()) return rep;
  for (int z = 0; z < nz; ++z) {
    int u = g.unit.map[m.phi.map[z]];
    if (m.act_at(z, u) != z) rep.fail("z.unit(phi(z)) != z at " + m.Z.name(z));
  }
  for (int z = 0; z < nz; ++z)
    for (int a = 0; a < na; ++a) {
      if (!m.defined(z, a)) continue;
      for (int b = 0; b < na; ++b) {
        if (!g.composable(a, b)) continue;
        if (m.act_at(m.act_at(z, a), b) != m.act_at(z, g.mul_at(a, b)))
          rep.fail("(z.g).h != z.(gh) at (" + m.Z.name(z) + "," + g.arrows.name(a) + "," +
                   g.arrows.name(b) + ")");
      }
    }
  // continuity of the action on the fibered product
  for (int z = 0; z < nz; ++z)
    for (int a = 0; a < na; ++a) {
      if (!m.defined(z, a)) continue;
      for (int z2 = 0; z2 < nz; ++z2) {
        if (!m.Z.leq(z, z2)) continue;
        for (int a2 = 0; a2 < na; ++a2) {
          if (!g.arrows.leq(a, a2) || !m.defined(z2, a2)) continue;
          if (!m.Z.leq(m.act_at(z, a), m.act_at(z2, a2)))
            rep.fail("action not monotone: (" + m.Z.name(z) + "," + g.arrows.name(a) +
                     ") <= (" + m.Z.name(z2) + "," + g.arrows.name(a2) + ")");
        }
      }
    }
  return rep;
}

Report validate_module(const LeftModule& m) {
  Report rep;
  const Groupoid& g = m.groupoid;
  if (!(m.phi.dom == m.Z) || !(m.phi.cod == g.objects)) {
    rep.fail("phi is not a map Z -> objects");
    return rep;
  }
  if (static_cast<int>(m.act.size()) != m.Z.size() * g.n_arrows()) {
    rep.fail("action table has wrong size");
    return rep;
  }
  if (!is_continuous(m.phi)) rep.fail("phi is not continuous");
  const int nz = m.Z.size(), na = g.n_arrows();
  for (int a = 0; a < na; ++a)
    for (int z = 0; z < nz; ++z) {
      int w = m.act_at(a, z);
      if (m.defined(a, z)) {
        if (w < 0) {
          rep.fail("action undefined at (" + g.arrows.name(a) + "," + m.Z.name(z) + ")");
          continue;
        }
        if (m.phi.map[w] != g.src.map[a])
          rep.fail("phi(g.z) != src(g) at (" + g.arrows.name(a) + "," + m.Z.name(z) + ")");
      } else if (w >= 0) {
        rep.fail("action defined off the moment fiber at (" + g.arrows.name(a) + "," +
                 m.Z.name(z) + ")");
      }
    }
  if (!rep.ok()) return rep;
  for (int z = 0; z < nz; ++z) {
    int u = g.unit.map[m.phi.map[z]];
    if (m.act_at(u, z) != z) rep.fail("unit(phi(z)).z != z at " + m.Z.name(z));
  }
  for (int a = 0; a < na; ++a)
    for (int b = 0; b < na; ++b) {
      if (!g.composable(a, b)) continue;
      for (int z = 0; z < nz; ++z) {
        if (!m.defined(b, z)) continue;
        if (m.act_at(a, m.act_at(b, z)) != m.act_at(g.mul_at(a, b), z))
          rep.fail("g.(h.z) != (gh).z at (" + g.arrows.name(a) + "," + g.arrows.name(b) +
                   "," + m.Z.name(z) + ")");
      }
    }
  for (int a = 0; a < na; ++a)
    for (int z = 0; z < nz; ++z) {
      if (!m.defined(a, z)) continue;
      for (int a2 = 0; a2 < na; ++a2) {
        if (!g.arrows.leq(a, a2)) continue;
        for (int z2 = 0; z2 < nz; ++z2) {
          if (!m.Z.leq(z, z2) || !m.defined(a2, z2)) continue;
          if (!m.Z.leq(m.act_at(a, z), m.act_at(a2, z2)))
            rep.fail("action not monotone: (" + g.arrows.name(a) + "," + m.Z.name(z) +
                     ") <= (" + g.arrows.name(a2) + "," + m.Z.name(z2) + ")");
        }
      }
    }
  return rep;
}

Report validate_morphism(const ModuleMorphism& h) {
  Report rep;
  if (!(h.from.groupoid == h.to.groupoid)) {
    rep.fail("morphism endpoints live over different groupoids");
    return rep;
  }
  if (!(h.f.dom == h.from.Z) || !(h.f.cod == h.to.Z)) {
    rep.fail("underlying map has wrong domain or codomain");
    return rep;
  }
  if (!is_continuous(h.f)) rep.fail("underlying map is not continuous");
  for (int z = 0; z < h.from.Z.size(); ++z)
    if (h.to.phi.map[h.f.map[z]] != h.from.phi.map[z])
      rep.fail("phi2(f(z)) != phi1(z) at " + h.from.Z.name(z));
  const Groupoid& g = h.from.groupoid;
  for (int z = 0; z < h.from.Z.size(); ++z)
    for (int a = 0; a < g.n_arrows(); ++a) {
      if (!h.from.defined(z, a)) continue;
      if (h.f.map[h.from.act_at(z, a)] != h.to.act_at(h.f.map[z], a))
        rep.fail("f(z.g) != f(z).g at (" + h.from.Z.name(z) + "," + g.arrows.name(a) + ")");
    }
  return rep;
}

RightModule trivial_module(const Groupoid& g, const Subset& s) {
  if (!is_stable(g, s)) throw error(errc::not_stable, "trivial_module needs a stable subset");
  auto [z, incl] = subspace(s);
  RightModule m{g, z, incl, {}};
  m.act.assign(z.size() * g.n_arrows(), -1);
  for (int p = 0; p < z.size(); ++p)
    for (int a = 0; a < g.n_arrows(); ++a)
      if (m.defined(p, a)) {
        int target = g.tgt.map[a];  // in S by stability
        m.set_act(p, a, z.index(g.objects.name(target)));
      }
  return m;
}

RightModule base_module(const Groupoid& g) {
  RightModule m{g, g.objects, CMap::identity(g.objects), {}};
  m.act.assign(g.n_objects() * g.n_arrows(), -1);
  for (int p = 0; p < g.n_objects(); ++p)
    for (int a = 0; a < g.n_arrows(); ++a)
      if (m.defined(p, a)) m.set_act(p, a, g.tgt.map[a]);
  return m;
}

RightModule arrows_as_right_module(const Groupoid& g) {
  RightModule m{g, g.arrows, g.tgt, {}};
  m.act.assign(g.n_arrows() * g.n_arrows(), -1);
  for (int x = 0; x < g.n_arrows(); ++x)
    for (int a = 0; a < g.n_arrows(); ++a)
      if (m.defined(x, a)) m.set_act(x, a, g.mul_at(x, a));
  return m;
}

namespace {

// Backtracking over fiber-respecting bijections.  `found` is called on each
// complete isomorphism; returning true stops the search.
template <typename Found>
bool search_module_iso(const RightModule& m1, const RightModule& m2, Found&& found) {
  if (!(m1.groupoid == m2.groupoid)) return false;
  const int n = m1.Z.size();
  if (n != m2.Z.size()) return false;
  // fiber cardinalities must match
  for (int o = 0; o < m1.groupoid.n_objects(); ++o) {
    int c1 = 0, c2 = 0;
    for (int z = 0; z < n; ++z) c1 += (m1.phi.map[z] == o);
    for (int z = 0; z < n; ++z) c2 += (m2.phi.map[z] == o);
    if (c1 != c2) return false;
  }
  std::vector<int> f(n, -1);
  std::vector<char> used(n, 0);
  const Groupoid& g = m1.groupoid;

  auto consistent = [&](int z, int w) {
    if (m2.phi.map[w] != m1.phi.map[z]) return false;
    for (int z2 = 0; z2 < n; ++z2) {
      if (f[z2] < 0) continue;
      if (m1.Z.leq(z, z2) != m2.Z.leq(w, f[z2])) return false;
      if (m1.Z.leq(z2, z) != m2.Z.leq(f[z2], w)) return false;
    }
    for (int a = 0; a < g.n_arrows(); ++a) {
      if (!m1.defined(z, a)) continue;
      int img = m1.act_at(z, a);
      if (f[img] >= 0 && f[img] != m2.act_at(w, a)) return false;
      // acting on an already-mapped point must agree when it lands on z
      for (int z2 = 0; z2 < n; ++z2) {
        if (f[z2] < 0 || !m1.defined(z2, a)) continue;
        if (m1.act_at(z2, a) == z && m2.act_at(f[z2], a) != w) return false;
      }
    }
    return true;
  };

  std::function<bool(int)> rec = [&](int z) -> bool {
    if (z == n) {
      ModuleMorphism h{m1, m2, CMap{m1.Z, m2.Z, f}};
      if (!validate_morphism(h).ok()) return false;
      CMap finv{m2.Z, m1.Z, std::vector<int>(n)};
      for (int i = 0; i < n; ++i) finv.map[f[i]] = i;
      if (!is_continuous(finv)) return false;
      return found(h);
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || !consistent(z, w)) continue;
      f[z] = w;
      used[w] = 1;
      if (rec(z + 1)) return true;
      f[z] = -1;
      used[w] = 0;
    }
    return false;
  };
  return rec(0);
}

}  // namespace

std::optional<ModuleMorphism> find_module_isomorphism(const RightModule& m1,
                                                      const RightModule& m2) {
  std::optional<ModuleMorphism> out;
  search_module_iso(m1, m2, [&](const ModuleMorphism& h) {
    out = h;
    return true;
  });
  return out;
}

int count_module_isomorphisms(const RightModule& m1, const RightModule& m2) {
  int count = 0;
  search_module_iso(m1, m2, [&](const ModuleMorphism&) {
    ++count;
    return false;
  });
  return count;
}

Quotient quotient_by_left_action(const LeftModule& x) {
  Report rep = validate_module(x);
  if (!rep.ok()) throw error(errc::validation_error, rep.str());
  const int n = x.Z.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int p) {
    while (parent[p] != p) p = parent[p] = parent[parent[p]];
    return p;
  };
  for (int a = 0; a < x.groupoid.n_arrows(); ++a)
    for (int z = 0; z < n; ++z)
      if (x.defined(a, z)) {
        int u = find(z), v = find(x.act_at(a, z));
        if (u != v) parent[u] = v;
      }
  std::vector<int> cls(n, -1);
  int next = 0;
  for (int z = 0; z < n; ++z) {
    int r = find(z);
    if (cls[r] < 0) cls[r] = next++;
    cls[z] = cls[r];
  }
  return quotient_by_classes(x.Z, cls);
}

std::vector<int> right_action_orbits(const RightModule& m) {
  const int n = m.Z.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int p) {
    while (parent[p] != p) p = parent[p] = parent[parent[p]];
    return p;
  };
  for (int z = 0; z < n; ++z)
    for (int a = 0; a < m.groupoid.n_arrows(); ++a)
      if (m.defined(z, a)) {
        int u = find(z), v = find(m.act_at(z, a));
        if (u != v) parent[u] = v;
      }
  std::vector<int> cls(n, -1);
  int next = 0;
  for (int z = 0; z < n; ++z) {
    int r = find(z);
    if (cls[r] < 0) cls[r] = next++;
    cls[z] = cls[r];
  }
  return cls;
}

}  // namespace finstack
