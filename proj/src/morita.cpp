// SPDX-License-Identifier: Apache-2.0
#include "finstack/morita.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace finstack {

Report validate_bimodule(const Bimodule& b) {
  Report rep;
  if (!(b.p.dom == b.X) || !(b.p.cod == b.left.objects)) {
    rep.fail("p is not a map X -> left objects");
    return rep;
  }
  if (!(b.pPrime.dom == b.X) || !(b.pPrime.cod == b.right.objects)) {
    rep.fail("p' is not a map X -> right objects");
    return rep;
  }
  if (!is_lifting_surjection(b.p)) rep.fail("p is not a lifting surjection");
  if (!is_lifting_surjection(b.pPrime)) rep.fail("p' is not a lifting surjection");
  rep.merge(validate_module(b.left_view()), "left module: ");
  rep.merge(validate_module(b.right_view()), "right module: ");
  if (!rep.ok()) return rep;

  const int nx = b.X.size();
  for (int x = 0; x < nx; ++x)
    for (int g = 0; g < b.right.n_arrows(); ++g)
      if (b.ract_defined(x, g) && b.p.map[b.ract_at(x, g)] != b.p.map[x])
        rep.fail("right action moves the p-fiber at (" + b.X.name(x) + "," +
                 b.right.arrows.name(g) + ")");
  for (int g = 0; g < b.left.n_arrows(); ++g)
    for (int x = 0; x < nx; ++x)
      if (b.lact_defined(g, x) && b.pPrime.map[b.lact_at(g, x)] != b.pPrime.map[x])
        rep.fail("left action moves the p'-fiber at (" + b.left.arrows.name(g) + "," +
                 b.X.name(x) + ")");
  for (int g = 0; g < b.left.n_arrows(); ++g)
    for (int x = 0; x < nx; ++x) {
      if (!b.lact_defined(g, x)) continue;
      for (int h = 0; h < b.right.n_arrows(); ++h) {
        if (!b.ract_defined(x, h)) continue;
        if (b.ract_at(b.lact_at(g, x), h) != b.lact_at(g, b.ract_at(x, h)))
          rep.fail("actions do not commute at (" + b.left.arrows.name(g) + "," +
                   b.X.name(x) + "," + b.right.arrows.name(h) + ")");
      }
    }
  return rep;
}

Report validate_morita(const Bimodule& b) {
  Report rep = validate_bimodule(b);
  if (!rep.ok()) return rep;
  const int nx = b.X.size();
  for (int g = 0; g < b.left.n_arrows(); ++g)
    for (int x = 0; x < nx; ++x)
      if (b.lact_defined(g, x) && b.lact_at(g, x) == x &&
          b.left.unit.map[b.left.tgt.map[g]] != g)
        rep.fail("left action not free at (" + b.left.arrows.name(g) + "," + b.X.name(x) + ")");
  for (int x = 0; x < nx; ++x)
    for (int g = 0; g < b.right.n_arrows(); ++g)
      if (b.ract_defined(x, g) && b.ract_at(x, g) == x &&
          b.right.unit.map[b.right.src.map[g]] != g)
        rep.fail("right action not free at (" + b.X.name(x) + "," + b.right.arrows.name(g) + ")");
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < nx; ++y) {
      if (b.pPrime.map[x] != b.pPrime.map[y]) continue;
      bool hit = false;
      for (int g = 0; g < b.left.n_arrows() && !hit; ++g)
        if (b.lact_defined(g, x) && b.lact_at(g, x) == y) hit = true;
      if (!hit)
        rep.fail("left action not transitive on the p'-fiber of " +
                 b.right.objects.name(b.pPrime.map[x]));
    }
  for (int x = 0; x < nx; ++x)
    for (int y = 0; y < nx; ++y) {
      if (b.p.map[x] != b.p.map[y]) continue;
      bool hit = false;
      for (int g = 0; g < b.right.n_arrows() && !hit; ++g)
        if (b.ract_defined(x, g) && b.ract_at(x, g) == y) hit = true;
      if (!hit)
        rep.fail("right action not transitive on the p-fiber of " +
                 b.left.objects.name(b.p.map[x]));
    }
  return rep;
}

MoritaEquivalence make_morita(Bimodule b) {
  Report rep = validate_morita(b);
  if (!rep.ok()) throw error(errc::validation_error, rep.str());
  return MoritaEquivalence{std::move(b)};
}

MoritaEquivalence identity_morita(const Groupoid& g) {
  Bimodule b;
  b.left = g;
  b.right = g;
  b.X = g.arrows;
  b.p = g.tgt;
  b.pPrime = g.src;
  const int na = g.n_arrows();
  b.lact.assign(na * na, -1);
  b.ract.assign(na * na, -1);
  for (int a = 0; a < na; ++a)
    for (int x = 0; x < na; ++x) {
      if (b.lact_defined(a, x)) b.set_lact(a, x, g.mul_at(x, g.inv.map[a]));
      if (b.ract_defined(x, a)) b.set_ract(x, a, g.mul_at(g.inv.map[a], x));
    }
  return make_morita(std::move(b));
}

MoritaEquivalence inverse_morita(const MoritaEquivalence& x) {
  const Bimodule& b = x.bimodule;
  Bimodule r;
  r.left = b.right;
  r.right = b.left;
  r.X = b.X;
  r.p = b.pPrime;
  r.pPrime = b.p;
  r.lact.assign(r.left.n_arrows() * r.X.size(), -1);
  r.ract.assign(r.X.size() * r.right.n_arrows(), -1);
  for (int g = 0; g < r.left.n_arrows(); ++g)
    for (int p = 0; p < r.X.size(); ++p)
      if (r.lact_defined(g, p)) r.set_lact(g, p, b.ract_at(p, b.right.inv.map[g]));
  for (int p = 0; p < r.X.size(); ++p)
    for (int g = 0; g < r.right.n_arrows(); ++g)
      if (r.ract_defined(p, g)) r.set_ract(p, g, b.lact_at(b.left.inv.map[g], p));
  return make_morita(std::move(r));
}

namespace {

std::vector<int> classes_from_unionfind(std::vector<int>& parent) {
  auto find = [&](int p) {
    while (parent[p] != p) p = parent[p] = parent[parent[p]];
    return p;
  };
  std::vector<int> cls(parent.size(), -1);
  int next = 0;
  for (size_t i = 0; i < parent.size(); ++i) {
    int r = find(static_cast<int>(i));
    if (cls[r] < 0) cls[r] = next++;
    cls[i] = cls[r];
  }
  return cls;
}

// Evaluates `value` on every member of each class and checks constancy.
int class_value(const Quotient& q, int cls, const std::function<int(int)>& value,
                const char* what) {
  int out = -2;
  for (size_t i = 0; i < q.class_of.size(); ++i) {
    if (q.class_of[i] != cls) continue;
    int v = value(static_cast<int>(i));
    if (out == -2) out = v;
    else if (out != v)
      throw error(errc::validation_error, std::string(what) + " not constant on a class");
  }
  return out;
}

}  // namespace

MoritaEquivalence compose_morita(const MoritaEquivalence& xm, const MoritaEquivalence& ym) {
  return compose_morita_full(xm, ym).result;
}

ComposedMorita compose_morita_full(const MoritaEquivalence& xm, const MoritaEquivalence& ym) {
  const Bimodule& x = xm.bimodule;
  const Bimodule& y = ym.bimodule;
  if (!(x.right == y.left))
    throw error(errc::middle_mismatch, "middle groupoids differ");
  const Groupoid& mid = x.right;

  FiberedProduct fp = fibered_product(x.pPrime, y.p);
  const int np = fp.space.size();
  std::vector<int> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int p) {
    while (parent[p] != p) p = parent[p] = parent[parent[p]];
    return p;
  };
  // antidiagonal middle action g.(a,b) = (a.g^-1, g.b); asserted free
  for (int i = 0; i < np; ++i) {
    auto [a, b] = fp.pairs[i];
    for (int g = 0; g < mid.n_arrows(); ++g) {
      if (mid.tgt.map[g] != x.pPrime.map[a]) continue;
      int a2 = x.ract_at(a, mid.inv.map[g]);
      int b2 = y.lact_at(g, b);
      int j = fp.pair_index(a2, b2);
      if (j == i && mid.unit.map[mid.src.map[g]] != g)
        throw error(errc::validation_error, "middle action is not free");
      int u = find(i), v = find(j);
      if (u != v) parent[u] = v;
    }
  }
  Quotient q = quotient_by_classes(fp.space, classes_from_unionfind(parent));

  Bimodule out;
  out.left = x.left;
  out.right = y.right;
  out.X = q.space;
  const int nc = q.space.size();
  out.p = CMap{q.space, x.left.objects, std::vector<int>(nc)};
  out.pPrime = CMap{q.space, y.right.objects, std::vector<int>(nc)};
  for (int c = 0; c < nc; ++c) {
    out.p.map[c] = class_value(q, c, [&](int i) { return x.p.map[fp.pairs[i].first]; },
                               "composite p");
    out.pPrime.map[c] = class_value(
        q, c, [&](int i) { return y.pPrime.map[fp.pairs[i].second]; }, "composite p'");
  }
  out.lact.assign(out.left.n_arrows() * nc, -1);
  out.ract.assign(nc * out.right.n_arrows(), -1);
  for (int g = 0; g < out.left.n_arrows(); ++g)
    for (int c = 0; c < nc; ++c) {
      if (!out.lact_defined(g, c)) continue;
      int v = class_value(q, c,
                          [&](int i) {
                            auto [a, b] = fp.pairs[i];
                            return q.class_of[fp.pair_index(x.lact_at(g, a), b)];
                          },
                          "composite left action");
      out.set_lact(g, c, v);
    }
  for (int c = 0; c < nc; ++c)
    for (int g = 0; g < out.right.n_arrows(); ++g) {
      if (!out.ract_defined(c, g)) continue;
      int v = class_value(q, c,
                          [&](int i) {
                            auto [a, b] = fp.pairs[i];
                            return q.class_of[fp.pair_index(a, y.ract_at(b, g))];
                          },
                          "composite right action");
      out.set_ract(c, g, v);
    }
  return ComposedMorita{make_morita(std::move(out)), std::move(fp), std::move(q)};
}

RightModule transport_module(const MoritaEquivalence& xm, const RightModule& m) {
  const Bimodule& x = xm.bimodule;
  if (!(m.groupoid == x.left))
    throw error(errc::groupoid_mismatch, "module is not over the left groupoid");

  FiberedProduct fp = fibered_product(m.phi, x.p);
  const int np = fp.space.size();
  std::vector<int> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int p) {
    while (parent[p] != p) p = parent[p] = parent[parent[p]];
    return p;
  };
  const Groupoid& g = x.left;
  for (int i = 0; i < np; ++i) {
    auto [z, xx] = fp.pairs[i];
    for (int a = 0; a < g.n_arrows(); ++a) {
      if (g.tgt.map[a] != x.p.map[xx]) continue;
      int z2 = m.act_at(z, g.inv.map[a]);
      int x2 = x.lact_at(a, xx);
      int j = fp.pair_index(z2, x2);
      int u = find(i), v = find(j);
      if (u != v) parent[u] = v;
    }
  }
  Quotient q = quotient_by_classes(fp.space, classes_from_unionfind(parent));

  RightModule out;
  out.groupoid = x.right;
  out.Z = q.space;
  const int nc = q.space.size();
  out.phi = CMap{q.space, x.right.objects, std::vector<int>(nc)};
  for (int c = 0; c < nc; ++c)
    out.phi.map[c] = class_value(
        q, c, [&](int i) { return x.pPrime.map[fp.pairs[i].second]; }, "transported phi");
  out.act.assign(nc * x.right.n_arrows(), -1);
  for (int c = 0; c < nc; ++c)
    for (int a = 0; a < x.right.n_arrows(); ++a) {
      if (!out.defined(c, a)) continue;
      int v = class_value(q, c,
                          [&](int i) {
                            auto [z, xx] = fp.pairs[i];
                            return q.class_of[fp.pair_index(z, x.ract_at(xx, a))];
                          },
                          "transported action");
      out.set_act(c, a, v);
    }
  Report rep = validate_module(out);
  if (!rep.ok())
    throw error(errc::validation_error, "transported module invalid:\n" + rep.str());
  return out;
}

Subset transport_subset(const MoritaEquivalence& x, const Subset& s) {
  return image(x.bimodule.pPrime, preimage(x.bimodule.p, s));
}

bool check_closure_commutes(const MoritaEquivalence& x, const StableSubset& s) {
  Subset lhs = transport_subset(x, closure(s.S));
  Subset rhs = closure(transport_subset(x, s.S));
  return lhs == rhs;
}

bool bimodule_isomorphic(const Bimodule& a, const Bimodule& b, const Subset* ya,
                         const Subset* yb) {
  if (!(a.left == b.left) || !(a.right == b.right)) return false;
  const int n = a.X.size();
  if (n != b.X.size()) return false;
  std::vector<int> f(n, -1);
  std::vector<char> used(n, 0);

  auto consistent = [&](int x, int y) {
    if (b.p.map[y] != a.p.map[x] || b.pPrime.map[y] != a.pPrime.map[x]) return false;
    if (ya && yb && ya->contains(x) != yb->contains(y)) return false;
    for (int x2 = 0; x2 < n; ++x2) {
      if (f[x2] < 0) continue;
      if (a.X.leq(x, x2) != b.X.leq(y, f[x2])) return false;
      if (a.X.leq(x2, x) != b.X.leq(f[x2], y)) return false;
    }
    return true;
  };
  std::function<bool(int)> rec = [&](int x) -> bool {
    if (x == n) {
      for (int i = 0; i < n; ++i) {
        for (int g = 0; g < a.left.n_arrows(); ++g)
          if (a.lact_defined(g, i) && f[a.lact_at(g, i)] != b.lact_at(g, f[i])) return false;
        for (int g = 0; g < a.right.n_arrows(); ++g)
          if (a.ract_defined(i, g) && f[a.ract_at(i, g)] != b.ract_at(f[i], g)) return false;
      }
      return true;
    }
    for (int y = 0; y < n; ++y) {
      if (used[y] || !consistent(x, y)) continue;
      f[x] = y;
      used[y] = 1;
      if (rec(x + 1)) return true;
      f[x] = -1;
      used[y] = 0;
    }
    return false;
  };
  return rec(0);
}

}  // namespace finstack
