// SPDX-License-Identifier: Apache-2.0
#include "finstack/resolution.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

namespace finstack {

Report validate_resolution(const Resolution& res) {
  Report rep;
  if (!(res.target.parent == res.module.groupoid)) {
    rep.fail("target lives over a different groupoid");
    return rep;
  }
  rep.merge(validate_module(res.module), "module: ");
  if (!is_stable(res.target.parent, res.target.S)) rep.fail("target subset is not stable");
  if (!rep.ok()) return rep;

  const CMap& phi = res.module.phi;
  Subset pre = preimage(phi, res.target.S);
  if (!is_dense(pre)) {
    Subset cl = closure(pre);
    for (int z = 0; z < res.module.Z.size(); ++z)
      if (!cl.contains(z))
        rep.fail("density fails: " + res.module.Z.name(z) +
                 " is not reached from phi^-1(S)");
  }
  // phi restricted to phi^-1(S) must be a homeomorphism onto the subspace S
  auto [zsub, zincl] = subspace(pre);
  auto [ssub, sincl] = subspace(res.target.S);
  CMap restricted{zsub, ssub, std::vector<int>(zsub.size())};
  bool landed = true;
  for (int i = 0; i < zsub.size(); ++i) {
    int m = phi.map[zincl.map[i]];
    int j = ssub.index(res.target.S.space.name(m));
    if (j < 0) { landed = false; break; }
    restricted.map[i] = j;
  }
  if (!landed) {
    rep.fail("phi does not map phi^-1(S) into S");
  } else if (zsub.size() != ssub.size()) {
    rep.fail("phi^-1(S) and S have different cardinality");
  } else if (!is_homeomorphism(restricted)) {
    rep.fail("phi restricted to phi^-1(S) is not a homeomorphism onto S");
  } else {
    std::vector<char> hit(ssub.size(), 0);
    for (int v : restricted.map) hit[v] = 1;
    for (char h : hit)
      if (!h) { rep.fail("phi restricted to phi^-1(S) is not onto S"); break; }
  }
  Subset im = image(phi, Subset::full(res.module.Z));
  Subset cls = closure(res.target.S);
  for (int m : im.indices())
    if (!cls.contains(m))
      rep.fail("phi(Z) leaves closure(S) at " + res.target.S.space.name(m));
  return rep;
}

bool is_surjective_resolution(const Resolution& res) {
  return image(res.module.phi, Subset::full(res.module.Z)) == closure(res.target.S);
}

bool is_proper_resolution(const Resolution&) { return true; }

Report validate_lcompatibility(const LCompatibility& comp) {
  Report rep;
  const Resolution& res = comp.resolution;
  const RightModule& m = res.module;
  if (!(comp.L.space == m.groupoid.objects)) rep.fail("L is not a subset of the objects");
  if (!(comp.Ltilde.space == m.Z)) rep.fail("Ltilde is not a subset of the carrier");
  if (!rep.ok()) return rep;

  if (!(image(m.phi, comp.Ltilde) == comp.L)) rep.fail("phi(Ltilde) != L");
  auto [lt, lt_incl] = subspace(comp.Ltilde);
  auto [ls, ls_incl] = subspace(comp.L);
  if (lt.size() != ls.size()) {
    rep.fail("Ltilde and L have different cardinality");
    return rep;
  }
  CMap restricted{lt, ls, std::vector<int>(lt.size())};
  for (int i = 0; i < lt.size(); ++i) {
    int obj = m.phi.map[lt_incl.map[i]];
    int j = ls.index(comp.L.space.name(obj));
    if (j < 0) { rep.fail("phi leaves L on Ltilde"); return rep; }
    restricted.map[i] = j;
  }
  if (!is_homeomorphism(restricted))
    rep.fail("phi restricted to Ltilde is not a homeomorphism onto L");

  // Order-lifting transversality: specializations above a point of Ltilde
  // are reached by acting on Ltilde points above it with arrows above the
  // unit of its image.
  const Groupoid& g = m.groupoid;
  for (int zt : comp.Ltilde.indices()) {
    int em = g.unit.map[m.phi.map[zt]];
    for (int z = 0; z < m.Z.size(); ++z) {
      if (!m.Z.leq(zt, z)) continue;
      bool reached = false;
      for (int zt2 : comp.Ltilde.indices()) {
        if (!m.Z.leq(zt, zt2)) continue;
        for (int a = 0; a < g.n_arrows() && !reached; ++a)
          if (g.arrows.leq(em, a) && m.defined(zt2, a) && m.act_at(zt2, a) == z)
            reached = true;
        if (reached) break;
      }
      if (!reached) {
        rep.fail("transversality fails: " + m.Z.name(z) + " above " + m.Z.name(zt) +
                 " is not action-reachable from Ltilde");
      }
    }
  }

  // Ltilde meets every action orbit contained in phi^-1(S)
  Subset pre = preimage(m.phi, res.target.S);
  auto orbit_id = right_action_orbits(m);
  int k = orbit_id.empty() ? 0 : *std::max_element(orbit_id.begin(), orbit_id.end()) + 1;
  std::vector<char> inside(k, 1), met(k, 0);
  for (int z = 0; z < m.Z.size(); ++z)
    if (!pre.contains(z)) inside[orbit_id[z]] = 0;
  for (int z : comp.Ltilde.indices()) met[orbit_id[z]] = 1;
  for (int o = 0; o < k; ++o)
    if (inside[o] && !met[o]) rep.fail("Ltilde misses an action orbit inside phi^-1(S)");
  return rep;
}

ZofR build_Z_of_R(const Groupoid& g, const StableSubset& s, const Subgroupoid& sub) {
  {
    Report rep = validate_subgroupoid(sub);
    if (!rep.ok()) throw error(errc::validation_error, rep.str());
  }
  if (!(sub.parent == g) || !(s.parent == g))
    throw error(errc::groupoid_mismatch, "subgroupoid or stable set over a different groupoid");
  if (!is_closed_subgroupoid(sub))
    throw error(errc::not_closed, "R is not closed in Gamma_L^L");
  if (!is_in_S(sub, s))
    throw error(errc::not_in_s, "subgroupoid is not in S");
  if (!is_full_in_S(sub, s))
    throw error(errc::not_full, "subgroupoid is not full in S");

  Subset gamma_l_set = restrict_src(g, sub.L);
  auto [gamma_l, incl] = subspace(gamma_l_set);
  const int n = gamma_l.size();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int p) {
    while (parent[p] != p) p = parent[p] = parent[parent[p]];
    return p;
  };
  std::vector<int> local_of(g.n_arrows(), -1);
  for (int i = 0; i < n; ++i) local_of[incl.map[i]] = i;
  for (int r : sub.R.indices())
    for (int i = 0; i < n; ++i) {
      int a = incl.map[i];
      if (g.tgt.map[r] != g.src.map[a]) continue;
      int j = local_of[g.mul_at(r, a)];
      int u = find(i), v = find(j);
      if (u != v) parent[u] = v;
    }
  std::vector<int> cls(n, -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    int r = find(i);
    if (cls[r] < 0) cls[r] = next++;
    cls[i] = cls[r];
  }
  Quotient q = quotient_by_classes(gamma_l, cls);

  RightModule mod;
  mod.groupoid = g;
  mod.Z = q.space;
  const int nz = q.space.size();
  mod.phi = CMap{q.space, g.objects, std::vector<int>(nz, -2)};
  for (int i = 0; i < n; ++i) {
    int c = q.class_of[i];
    int t = g.tgt.map[incl.map[i]];
    if (mod.phi.map[c] == -2) mod.phi.map[c] = t;
    else if (mod.phi.map[c] != t)
      throw error(errc::validation_error, "phi not constant on an R-class");
  }
  mod.act.assign(nz * g.n_arrows(), -1);
  for (int i = 0; i < n; ++i) {
    int c = q.class_of[i];
    int a0 = incl.map[i];
    for (int b = 0; b < g.n_arrows(); ++b) {
      if (!g.composable(a0, b)) continue;
      int target = local_of[g.mul_at(a0, b)];  // stays in Gamma_L: src is preserved
      int v = q.class_of[target];
      int cur = mod.act_at(c, b);
      if (cur < 0) mod.set_act(c, b, v);
      else if (cur != v)
        throw error(errc::validation_error, "right action not constant on an R-class");
    }
  }

  ZofR out;
  out.resolution = Resolution{std::move(mod), s};
  out.gammaL = gamma_l;
  out.gammaL_incl = incl;
  out.quot = q;
  out.canonical_Ltilde = Subset::empty(out.resolution.module.Z);
  for (int m : sub.L.indices())
    out.canonical_Ltilde.add(q.class_of[local_of[g.unit.map[m]]]);
  return out;
}

LCompatibility canonical_compatibility(const ZofR& z, const Subgroupoid& sub) {
  LCompatibility comp{z.resolution, sub.L, z.canonical_Ltilde};
  Report rep = validate_lcompatibility(comp);
  if (!rep.ok())
    throw error(errc::validation_error, "canonical compatibility invalid:\n" + rep.str());
  return comp;
}

std::optional<LCompatibility> is_L_compatible(const Resolution& res, const Subset& l) {
  // density precondition: L cap S dense in L
  Subset ls = l;
  for (int i = 0; i < ls.space.size(); ++i)
    if (!res.target.S.contains(i)) ls.mask[i] = 0;
  if (!is_dense_in(ls, l)) return std::nullopt;

  auto l_pts = l.indices();
  std::vector<std::vector<int>> fibers(l_pts.size());
  for (size_t k = 0; k < l_pts.size(); ++k) {
    for (int z = 0; z < res.module.Z.size(); ++z)
      if (res.module.phi.map[z] == l_pts[k]) fibers[k].push_back(z);
    if (fibers[k].empty()) return std::nullopt;
  }
  std::vector<int> pick(l_pts.size(), 0);
  std::optional<LCompatibility> found;
  std::function<bool(size_t)> rec = [&](size_t k) -> bool {
    if (k == l_pts.size()) {
      Subset lt = Subset::empty(res.module.Z);
      for (size_t i = 0; i < l_pts.size(); ++i) lt.add(fibers[i][pick[i]]);
      LCompatibility comp{res, l, lt};
      if (validate_lcompatibility(comp).ok()) {
        found = comp;
        return true;
      }
      return false;
    }
    for (size_t c = 0; c < fibers[k].size(); ++c) {
      pick[k] = static_cast<int>(c);
      if (rec(k + 1)) return true;
    }
    return false;
  };
  rec(0);
  return found;
}

Subgroupoid recover_subgroupoid(const LCompatibility& comp) {
  const RightModule& m = comp.resolution.module;
  const Groupoid& g = m.groupoid;
  // psi: L -> Ltilde inverts phi on Ltilde
  std::vector<int> psi(g.n_objects(), -1);
  for (int z : comp.Ltilde.indices()) psi[m.phi.map[z]] = z;
  Subset r = Subset::empty(g.arrows);
  for (int a = 0; a < g.n_arrows(); ++a) {
    int src = g.src.map[a];
    if (!comp.L.contains(src)) continue;
    int zt = psi[src];
    if (zt < 0 || !m.defined(zt, a)) continue;
    if (comp.Ltilde.contains(m.act_at(zt, a))) r.add(a);
  }
  return Subgroupoid{g, r, comp.L};
}

Subset orbit_of_Ltilde(const LCompatibility& comp) {
  const RightModule& m = comp.resolution.module;
  auto orbit_id = right_action_orbits(m);
  std::vector<char> in_orbit(m.Z.size(), 0);
  for (int z : comp.Ltilde.indices()) in_orbit[orbit_id[z]] = 1;
  Subset out = Subset::empty(m.Z);
  for (int z = 0; z < m.Z.size(); ++z)
    if (in_orbit[orbit_id[z]]) out.add(z);
  return out;
}

bool resolutions_coincide_check(const LCompatibility& comp) {
  if (orbit_of_Ltilde(comp).count() != comp.resolution.module.Z.size()) return false;
  Subgroupoid sub = recover_subgroupoid(comp);
  ZofR z = build_Z_of_R(comp.resolution.module.groupoid, comp.resolution.target, sub);
  return find_module_isomorphism(comp.resolution.module, z.resolution.module).has_value();
}

MoritaEquivalence product_morita(const Groupoid& g, const FinSpace& z) {
  if (z.size() == 0)
    throw error(errc::validation_error, "product_morita needs a nonempty second factor");
  Groupoid hat = direct_product_groupoid(g, z);
  ProductSpace xs = product(g.arrows, z);
  ProductSpace obj = product(g.objects, z);
  ProductSpace zz = product(z, z);
  ProductSpace hat_arr = product(g.arrows, zz.space);

  Bimodule b;
  b.left = g;
  b.right = hat;
  b.X = xs.space;
  const int nx = xs.space.size();
  b.p = CMap{xs.space, g.objects, std::vector<int>(nx)};
  b.pPrime = CMap{xs.space, hat.objects, std::vector<int>(nx)};
  for (int i = 0; i < nx; ++i) {
    auto [gam, zp] = xs.pairs[i];
    b.p.map[i] = g.src.map[gam];
    b.pPrime.map[i] = obj.pair_index(g.tgt.map[gam], zp);
  }
  b.lact.assign(g.n_arrows() * nx, -1);
  for (int a = 0; a < g.n_arrows(); ++a)
    for (int i = 0; i < nx; ++i) {
      if (!b.lact_defined(a, i)) continue;
      auto [gam, zp] = xs.pairs[i];
      b.set_lact(a, i, xs.pair_index(g.mul_at(a, gam), zp));
    }
  b.ract.assign(nx * hat.n_arrows(), -1);
  for (int i = 0; i < nx; ++i)
    for (int h = 0; h < hat.n_arrows(); ++h) {
      if (!b.ract_defined(i, h)) continue;
      auto [gam, zp] = xs.pairs[i];
      auto [gam2, zz_idx] = hat_arr.pairs[h];
      auto [z1, z2] = zz.pairs[zz_idx];
      (void)zp;
      (void)z1;  // definedness already forces tgt(gam) = src(gam2) and zp = z1
      b.set_ract(i, h, xs.pair_index(g.mul_at(gam, gam2), z2));
    }
  return make_morita(std::move(b));
}

HatConstruction hat_construction(const Groupoid& g, const Resolution& res) {
  if (!(res.module.groupoid == g))
    throw error(errc::groupoid_mismatch, "resolution is not over the given groupoid");
  const FinSpace& z = res.module.Z;
  HatConstruction out;
  out.hat_groupoid = direct_product_groupoid(g, z);
  const Groupoid& hat = out.hat_groupoid;

  ProductSpace obj = product(g.objects, z);
  ProductSpace zz = product(z, z);
  ProductSpace hat_arr = product(g.arrows, zz.space);

  out.equivalence = product_morita(g, z);

  Subset s_hat = transport_subset(out.equivalence, res.target.S);

  // (Z x Z, phi x id) with the component action
  RightModule hat_mod;
  hat_mod.groupoid = hat;
  hat_mod.Z = zz.space;
  const int nzz = zz.space.size();
  hat_mod.phi = CMap{zz.space, hat.objects, std::vector<int>(nzz)};
  for (int i = 0; i < nzz; ++i) {
    auto [za, zb] = zz.pairs[i];
    hat_mod.phi.map[i] = obj.pair_index(res.module.phi.map[za], zb);
  }
  hat_mod.act.assign(nzz * hat.n_arrows(), -1);
  for (int i = 0; i < nzz; ++i)
    for (int h = 0; h < hat.n_arrows(); ++h) {
      if (!hat_mod.defined(i, h)) continue;
      auto [za, zb] = zz.pairs[i];
      auto [gam, zz_idx] = hat_arr.pairs[h];
      auto [z1, z2] = zz.pairs[zz_idx];
      (void)zb;
      (void)z1;
      hat_mod.act.at(i * hat.n_arrows() + h) =
          zz.pair_index(res.module.act_at(za, gam), z2);
    }
  out.hat_resolution = Resolution{std::move(hat_mod), make_stable(hat, s_hat)};

  out.L = Subset::empty(hat.objects);
  for (int zp = 0; zp < z.size(); ++zp)
    out.L.add(obj.pair_index(res.module.phi.map[zp], zp));
  Subset diag = Subset::empty(zz.space);
  for (int zp = 0; zp < z.size(); ++zp) diag.add(zz.pair_index(zp, zp));

  out.comp = LCompatibility{out.hat_resolution, out.L, diag};
  Report rep = validate_lcompatibility(out.comp);
  if (!rep.ok())
    throw error(errc::validation_error, "hat compatibility invalid:\n" + rep.str());
  return out;
}

Resolution transport_resolution(const MoritaEquivalence& x, const Resolution& res) {
  if (!(res.module.groupoid == x.bimodule.left))
    throw error(errc::groupoid_mismatch, "resolution is not over the left groupoid");
  RightModule moved = transport_module(x, res.module);
  Subset s2 = transport_subset(x, res.target.S);
  Resolution out{std::move(moved), make_stable(x.bimodule.right, s2)};
  Report rep = validate_resolution(out);
  if (!rep.ok())
    throw error(errc::not_a_resolution, "transported resolution invalid:\n" + rep.str());
  return out;
}

}  // namespace finstack
