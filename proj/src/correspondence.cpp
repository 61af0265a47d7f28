// SPDX-License-Identifier: Apache-2.0
#include "finstack/correspondence.hpp"

#include <algorithm>

namespace finstack {

Report validate_subgroupoid_morita(const SubgroupoidMorita& sm) {
  Report rep;
  const Bimodule& b = sm.X.bimodule;
  if (!(sm.subLeft.parent == b.left)) rep.fail("left subgroupoid over a different groupoid");
  if (!(sm.subRight.parent == b.right)) rep.fail("right subgroupoid over a different groupoid");
  if (!(sm.Y.space == b.X)) rep.fail("Y is not a subset of the carrier");
  if (!rep.ok()) return rep;
  rep.merge(validate_subgroupoid(sm.subLeft), "left subgroupoid: ");
  rep.merge(validate_subgroupoid(sm.subRight), "right subgroupoid: ");
  if (!rep.ok()) return rep;

  for (int y : sm.Y.indices()) {
    if (!sm.subLeft.L.contains(b.p.map[y]))
      rep.fail("p(" + b.X.name(y) + ") is not in L");
    if (!sm.subRight.L.contains(b.pPrime.map[y]))
      rep.fail("p'(" + b.X.name(y) + ") is not in L'");
  }
  if (!rep.ok()) return rep;

  // action stability of Y under R and R'
  for (int y : sm.Y.indices()) {
    for (int r : sm.subLeft.R.indices())
      if (b.lact_defined(r, y) && !sm.Y.contains(b.lact_at(r, y)))
        rep.fail("Y is not stable under the left R-action at (" +
                 b.left.arrows.name(r) + "," + b.X.name(y) + ")");
    for (int r : sm.subRight.R.indices())
      if (b.ract_defined(y, r) && !sm.Y.contains(b.ract_at(y, r)))
        rep.fail("Y is not stable under the right R'-action at (" + b.X.name(y) + "," +
                 b.right.arrows.name(r) + ")");
  }
  if (!rep.ok()) return rep;

  // restricted moment maps are lifting surjections onto the subspaces L, L'
  auto [ysub, yincl] = subspace(sm.Y);
  auto [lsub, lincl] = subspace(sm.subLeft.L);
  auto [lsub2, lincl2] = subspace(sm.subRight.L);
  CMap py{ysub, lsub, std::vector<int>(ysub.size())};
  CMap ppy{ysub, lsub2, std::vector<int>(ysub.size())};
  for (int i = 0; i < ysub.size(); ++i) {
    py.map[i] = lsub.index(b.left.objects.name(b.p.map[yincl.map[i]]));
    ppy.map[i] = lsub2.index(b.right.objects.name(b.pPrime.map[yincl.map[i]]));
  }
  if (!is_lifting_surjection(py))
    rep.fail("p restricted to Y is not a lifting surjection onto L");
  if (!is_lifting_surjection(ppy))
    rep.fail("p' restricted to Y is not a lifting surjection onto L'");

  // fiber transitivity of the restricted actions
  for (int y1 : sm.Y.indices())
    for (int y2 : sm.Y.indices()) {
      if (b.pPrime.map[y1] == b.pPrime.map[y2]) {
        bool hit = false;
        for (int r : sm.subLeft.R.indices())
          if (b.lact_defined(r, y1) && b.lact_at(r, y1) == y2) { hit = true; break; }
        if (!hit)
          rep.fail("restricted R-action not transitive on the p'-fiber through " +
                   b.X.name(y1));
      }
      if (b.p.map[y1] == b.p.map[y2]) {
        bool hit = false;
        for (int r : sm.subRight.R.indices())
          if (b.ract_defined(y1, r) && b.ract_at(y1, r) == y2) { hit = true; break; }
        if (!hit)
          rep.fail("restricted R'-action not transitive on the p-fiber through " +
                   b.X.name(y1));
      }
    }
  return rep;
}

SubgroupoidMorita compose_subgroupoid_morita(const SubgroupoidMorita& a,
                                             const SubgroupoidMorita& b) {
  if (!(a.subRight == b.subLeft))
    throw error(errc::middle_mismatch, "middle subgroupoids differ");
  ComposedMorita comp = compose_morita_full(a.X, b.X);
  Subset y = Subset::empty(comp.result.bimodule.X);
  for (int i = 0; i < static_cast<int>(comp.fp.pairs.size()); ++i) {
    auto [u, v] = comp.fp.pairs[i];
    if (a.Y.contains(u) && b.Y.contains(v)) y.add(comp.quot.class_of[i]);
  }
  SubgroupoidMorita out{comp.result, a.subLeft, b.subRight, y};
  Report rep = validate_subgroupoid_morita(out);
  if (!rep.ok())
    throw error(errc::validation_error, "composite subgroupoid equivalence invalid:\n" + rep.str());
  return out;
}

bool subgroupoid_morita_isomorphic(const SubgroupoidMorita& a, const SubgroupoidMorita& b) {
  if (!(a.subLeft == b.subLeft) || !(a.subRight == b.subRight)) return false;
  return bimodule_isomorphic(a.X.bimodule, b.X.bimodule, &a.Y, &b.Y);
}

namespace {

void check_hypotheses(const Groupoid& g, const StableSubset& s, const Subgroupoid& sub,
                      const char* side) {
  Report rep = validate_subgroupoid(sub);
  if (!rep.ok())
    throw error(errc::hypothesis_failure, std::string(side) + ": not a subgroupoid: " + rep.str());
  if (!(sub.parent == g))
    throw error(errc::hypothesis_failure, std::string(side) + ": subgroupoid over a different groupoid");
  if (!is_closed_subgroupoid(sub))
    throw error(errc::hypothesis_failure, std::string(side) + ": is_closed_subgroupoid fails");
  if (!is_in_S(sub, s))
    throw error(errc::hypothesis_failure, std::string(side) + ": is_in_S fails");
  if (!is_full_in_S(sub, s))
    throw error(errc::hypothesis_failure, std::string(side) + ": is_full_in_S fails");
}

}  // namespace

std::optional<SubgroupoidMorita> build_Y(const MoritaEquivalence& x, const StableSubset& s,
                                         const Subgroupoid& subLeft,
                                         const Subgroupoid& subRight) {
  const Bimodule& b = x.bimodule;
  check_hypotheses(b.left, s, subLeft, "left");
  StableSubset s2{b.right, transport_subset(x, s.S)};
  if (!is_stable(b.right, s2.S))
    throw error(errc::hypothesis_failure, "transported subset is not stable");
  check_hypotheses(b.right, s2, subRight, "right");

  Subset xll = preimage(b.p, subLeft.L);
  for (int i = 0; i < b.X.size(); ++i)
    if (!subRight.L.contains(b.pPrime.map[i])) xll.mask[i] = 0;
  Subset xss = xll;
  for (int i : xll.indices())
    if (!s.S.contains(b.p.map[i]) || !s2.S.contains(b.pPrime.map[i])) xss.mask[i] = 0;

  // closure of the S-part inside the subspace on X_L^{L'}
  Subset y = Subset::empty(b.X);
  for (int i : xll.indices())
    for (int j : xss.indices())
      if (b.X.leq(i, j)) { y.add(i); break; }

  SubgroupoidMorita sm{x, subLeft, subRight, y};
  if (!validate_subgroupoid_morita(sm).ok()) return std::nullopt;
  return sm;
}

FundPropResult fund_prop_check(const MoritaEquivalence& x, const StableSubset& s,
                               const Subgroupoid& subLeft, const Subgroupoid& subRight) {
  FundPropResult out{};
  const Bimodule& b = x.bimodule;
  StableSubset s2{b.right, transport_subset(x, s.S)};

  ZofR zl = build_Z_of_R(b.left, s, subLeft);
  ZofR zr = build_Z_of_R(b.right, s2, subRight);
  Resolution moved = transport_resolution(x, zl.resolution);
  auto iso = find_module_isomorphism(moved.module, zr.resolution.module);
  out.verdict_i = iso.has_value();
  if (iso) {
    for (int z = 0; z < iso->f.dom.size(); ++z)
      out.evidence.iso.emplace_back(iso->f.dom.name(z), iso->f.cod.name(iso->f.map[z]));
  } else {
    out.evidence.notes.push_back("no isomorphism between the transported resolution and Z(R')");
  }

  auto sm = build_Y(x, s, subLeft, subRight);
  out.verdict_ii = sm.has_value();
  if (sm) {
    out.evidence.y_members = sm->Y.names();
  } else {
    // rebuild the candidate to report its first failing clause
    Subset xll = preimage(b.p, subLeft.L);
    for (int i = 0; i < b.X.size(); ++i)
      if (!subRight.L.contains(b.pPrime.map[i])) xll.mask[i] = 0;
    Subset xss = xll;
    for (int i : xll.indices())
      if (!s.S.contains(b.p.map[i]) || !s2.S.contains(b.pPrime.map[i])) xss.mask[i] = 0;
    Subset y = Subset::empty(b.X);
    for (int i : xll.indices())
      for (int j : xss.indices())
        if (b.X.leq(i, j)) { y.add(i); break; }
    Report rep = validate_subgroupoid_morita(SubgroupoidMorita{x, subLeft, subRight, y});
    out.evidence.notes.push_back("no Y: " + (rep.ok() ? std::string("unknown")
                                                      : rep.violations.front()));
  }
  out.agree = (out.verdict_i == out.verdict_ii);
  return out;
}

Report invariance_check(const SubgroupoidMorita& sm, const StableSubset& s) {
  Report rep;
  const Bimodule& b = sm.X.bimodule;
  StableSubset s2{b.right, transport_subset(sm.X, s.S)};
  if (!is_stable(b.right, s2.S)) {
    rep.fail("transported subset is not stable");
    return rep;
  }
  StableSubset sc = stable_closure(s);
  StableSubset sc2 = stable_closure(s2);

  auto compare = [&](const char* what, bool lhs, bool rhs) {
    if (lhs != rhs)
      rep.fail(std::string(what) + " disagrees: left=" + (lhs ? "true" : "false") +
               " right=" + (rhs ? "true" : "false"));
  };
  compare("in closure(S)", is_in_S(sm.subLeft, sc), is_in_S(sm.subRight, sc2));
  compare("surjective in closure(S)", is_surjective_in_closure(sm.subLeft, s),
          is_surjective_in_closure(sm.subRight, s2));
  compare("full in S", is_full_in_S(sm.subLeft, s), is_full_in_S(sm.subRight, s2));
  compare("proper", is_proper_subgroupoid(sm.subLeft, s),
          is_proper_subgroupoid(sm.subRight, s2));
  return rep;
}

RoundtripResult roundtrip_theorem_check(const Groupoid& g, const StableSubset& s,
                                        const Subgroupoid& sub) {
  RoundtripResult out{true, {}};
  ZofR z = build_Z_of_R(g, s, sub);
  HatConstruction hat = hat_construction(g, z.resolution);
  Subgroupoid rhat = recover_subgroupoid(hat.comp);
  ZofR zhat = build_Z_of_R(hat.hat_groupoid, hat.hat_resolution.target, rhat);
  Resolution back = transport_resolution(inverse_morita(hat.equivalence), zhat.resolution);
  auto iso = find_module_isomorphism(back.module, z.resolution.module);
  if (iso) {
    out.evidence.notes.push_back("inverse transport of Z(R-hat) is isomorphic to Z(R)");
  } else {
    out.ok = false;
    out.evidence.notes.push_back("inverse transport of Z(R-hat) is NOT isomorphic to Z(R)");
  }
  auto sm = build_Y(hat.equivalence, s, sub, rhat);
  if (sm) {
    out.evidence.notes.push_back("subgroupoid equivalence across the hat Morita equivalence found");
    out.evidence.y_members = sm->Y.names();
  } else {
    out.ok = false;
    out.evidence.notes.push_back("no subgroupoid equivalence across the hat Morita equivalence");
  }
  return out;
}

}  // namespace finstack
