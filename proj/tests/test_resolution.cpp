// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "finstack/resolution.hpp"
#include "fixtures.hpp"

using namespace finstack;
using namespace finstack::fixtures;

namespace {

// module over a unit groupoid: the only actions are by the unit arrows
RightModule unit_groupoid_module(const Groupoid& un, const FinSpace& z, const CMap& phi) {
  RightModule m{un, z, phi, {}};
  m.act.assign(z.size() * un.n_arrows(), -1);
  for (int p = 0; p < z.size(); ++p)
    for (int a = 0; a < un.n_arrows(); ++a)
      if (m.defined(p, a)) m.set_act(p, a, p);
  return m;
}

// the x-branch: Sierpinski over the node space, s -> x, g -> g
Resolution branch_resolution(const Groupoid& un) {
  FinSpace z = sierp();
  CMap phi = CMap::by_names(z, un.objects, {{"s", "x"}, {"g", "g"}});
  RightModule m = unit_groupoid_module(un, z, phi);
  return Resolution{m, make_stable(un, Subset::of(un.objects, {"g"}))};
}

}  // namespace

TEST_SUITE_BEGIN("resolution");

TEST_CASE("resolution validation examples") {
  Groupoid us = unit_groupoid(sierp());
  RightModule m = unit_groupoid_module(us, sierp(), CMap::identity(sierp()));
  Resolution res{m, make_stable(us, Subset::of(us.objects, {"g"}))};
  CHECK(validate_resolution(res).ok());
  CHECK(is_surjective_resolution(res));
  CHECK(is_proper_resolution(res));

  Groupoid un = unit_groupoid(node());
  Resolution branch = branch_resolution(un);
  CHECK(validate_resolution(branch).ok());
  CHECK_FALSE(is_surjective_resolution(branch));  // y is missed

  // both points of a discrete pair over the generic point: not a resolution
  RightModule bad = unit_groupoid_module(
      us, disc2(), CMap::by_names(disc2(), us.objects, {{"a", "g"}, {"b", "g"}}));
  Resolution broken{bad, make_stable(us, Subset::of(us.objects, {"g"}))};
  CHECK_FALSE(validate_resolution(broken).ok());
}

TEST_CASE("density failures name the unreachable points") {
  Groupoid ud = unit_groupoid(disc2());
  RightModule m = unit_groupoid_module(
      ud, disc2(), CMap::identity(disc2()));
  Resolution res{m, make_stable(ud, Subset::of(ud.objects, {"a"}))};
  Report rep = validate_resolution(res);
  CHECK_FALSE(rep.ok());
  bool names_b = false;
  for (const auto& v : rep.violations)
    if (v.find("density") != std::string::npos && v.find("b") != std::string::npos)
      names_b = true;
  CHECK(names_b);
}

TEST_CASE("Z(R) on the node branch") {
  Groupoid un = unit_groupoid(node());
  StableSubset sg = make_stable(un, Subset::of(un.objects, {"g"}));
  Subgroupoid branch = node_branch(un, "x");
  ZofR z = build_Z_of_R(un, sg, branch);
  CHECK(z.resolution.module.Z.size() == 2);
  CHECK(validate_resolution(z.resolution).ok());
  CHECK_FALSE(is_surjective_resolution(z.resolution));
  CHECK(image(z.resolution.module.phi, Subset::full(z.resolution.module.Z)).names() ==
        std::vector<std::string>{"g", "x"});
  // carrier is order-isomorphic to the Sierpinski space
  Resolution expected = branch_resolution(un);
  CHECK(find_module_isomorphism(z.resolution.module, expected.module).has_value());
}

TEST_CASE("Z(R) on flip with a one-point slice") {
  Groupoid fl = flip();
  StableSubset sm = make_stable(fl, Subset::full(fl.objects));
  Subgroupoid fa{fl, Subset::of(fl.arrows, {"e_a"}), Subset::of(fl.objects, {"a"})};
  ZofR z = build_Z_of_R(fl, sm, fa);
  CHECK(z.resolution.module.Z.size() == 2);
  CHECK(validate_resolution(z.resolution).ok());
  CHECK(is_surjective_resolution(z.resolution));
  CHECK(find_module_isomorphism(z.resolution.module, base_module(fl)).has_value());
}

TEST_CASE("Z(R) with full isotropy collapses to a point") {
  Groupoid z2 = z2pt();
  StableSubset s = make_stable(z2, Subset::full(z2.objects));
  Subgroupoid whole{z2, Subset::full(z2.arrows), Subset::full(z2.objects)};
  ZofR z = build_Z_of_R(z2, s, whole);
  CHECK(z.resolution.module.Z.size() == 1);
  CHECK(validate_resolution(z.resolution).ok());
}

TEST_CASE("Z(R) hypothesis errors name the failed clause") {
  // not closed: drop o_s from the o-part of the isotropy bundle
  Groupoid zs = z2sierp();
  StableSubset szs = make_stable(zs, Subset::of(zs.objects, {"g"}));
  Subgroupoid not_closed{zs, Subset::of(zs.arrows, {"e_s", "e_g", "o_g"}),
                         Subset::full(zs.objects)};
  REQUIRE(validate_subgroupoid(not_closed).ok());
  REQUIRE_FALSE(is_closed_subgroupoid(not_closed));
  try {
    build_Z_of_R(zs, szs, not_closed);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::not_closed);
  }

  // not in S: density of L cap S in L fails on the off branch
  Groupoid un = unit_groupoid(node());
  StableSubset sgn = make_stable(un, Subset::of(un.objects, {"g"}));
  Subgroupoid off_branch{un, Subset::of(un.arrows, {"id_x"}), Subset::of(un.objects, {"x"})};
  try {
    build_Z_of_R(un, sgn, off_branch);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::not_in_s);
  }

  // not full: the trivial subgroup misses the isotropy
  Groupoid z2 = z2pt();
  StableSubset spt = make_stable(z2, Subset::full(z2.objects));
  Subgroupoid not_full{z2, Subset::of(z2.arrows, {"e"}), Subset::full(z2.objects)};
  try {
    build_Z_of_R(z2, spt, not_full);
    CHECK(false);
  } catch (const error& e) {
    CHECK(e.code() == errc::not_full);
  }
}

TEST_CASE("canonical compatibility and recovery round trip") {
  Groupoid un = unit_groupoid(node());
  StableSubset sg = make_stable(un, Subset::of(un.objects, {"g"}));
  Subgroupoid branch = node_branch(un, "x");
  ZofR z = build_Z_of_R(un, sg, branch);
  LCompatibility comp = canonical_compatibility(z, branch);
  CHECK(validate_lcompatibility(comp).ok());
  Subgroupoid back = recover_subgroupoid(comp);
  CHECK(back.R == branch.R);
  CHECK(back.L == branch.L);
}

TEST_CASE("L-compatibility search") {
  Groupoid un = unit_groupoid(node());
  Resolution branch = branch_resolution(un);

  auto own = is_L_compatible(branch, Subset::of(un.objects, {"g", "x"}));
  REQUIRE(own.has_value());
  CHECK(own->Ltilde == Subset::full(branch.module.Z));
  Subgroupoid rec = recover_subgroupoid(*own);
  CHECK(rec.R.names() == std::vector<std::string>{"id_g", "id_x"});

  CHECK_FALSE(is_L_compatible(branch, Subset::of(un.objects, {"g", "y"})).has_value());

  // base module as a resolution of the whole space, L = M
  RightModule base = unit_groupoid_module(un, un.objects, CMap::identity(un.objects));
  Resolution baseres{base, make_stable(un, Subset::full(un.objects))};
  CHECK(validate_resolution(baseres).ok());
  auto full = is_L_compatible(baseres, Subset::full(un.objects));
  REQUIRE(full.has_value());
  CHECK(full->Ltilde == Subset::full(base.Z));
}

TEST_CASE("recovery on the base module gives the whole groupoid") {
  Groupoid fl = flip();
  RightModule base = base_module(fl);
  Resolution res{base, make_stable(fl, Subset::full(fl.objects))};
  REQUIRE(validate_resolution(res).ok());
  auto comp = is_L_compatible(res, Subset::full(fl.objects));
  REQUIRE(comp.has_value());
  Subgroupoid rec = recover_subgroupoid(*comp);
  CHECK(rec.R == Subset::full(fl.arrows));
  CHECK(resolutions_coincide_check(*comp));
}

TEST_CASE("orbit of Ltilde and the coincidence check") {
  Groupoid un = unit_groupoid(node());
  StableSubset sg = make_stable(un, Subset::of(un.objects, {"g"}));
  Subgroupoid branch = node_branch(un, "x");
  ZofR z = build_Z_of_R(un, sg, branch);
  LCompatibility comp = canonical_compatibility(z, branch);
  CHECK(orbit_of_Ltilde(comp).count() == z.resolution.module.Z.size());
  CHECK(resolutions_coincide_check(comp));

  // a compatibility whose Ltilde misses an orbit: one-point L on sierp
  Groupoid us = unit_groupoid(sierp());
  RightModule m = unit_groupoid_module(us, sierp(), CMap::identity(sierp()));
  Resolution res{m, make_stable(us, Subset::of(us.objects, {"g"}))};
  auto partial = is_L_compatible(res, Subset::of(us.objects, {"g"}));
  REQUIRE(partial.has_value());
  Subset orbit = orbit_of_Ltilde(*partial);
  CHECK(orbit.count() == 1);
  CHECK(is_open_set(orbit));
  CHECK_FALSE(resolutions_coincide_check(*partial));
}

TEST_CASE("one-point hat construction") {
  Groupoid pt = pt_groupoid();
  RightModule m = unit_groupoid_module(pt, pointspace(), CMap::identity(pointspace()));
  Resolution res{m, make_stable(pt, Subset::full(pt.objects))};
  HatConstruction hat = hat_construction(pt, res);
  CHECK(hat.hat_groupoid.n_arrows() == 1);
  CHECK(validate_lcompatibility(hat.comp).ok());
  Subgroupoid rhat = recover_subgroupoid(hat.comp);
  ZofR zhat = build_Z_of_R(hat.hat_groupoid, hat.hat_resolution.target, rhat);
  Resolution back = transport_resolution(inverse_morita(hat.equivalence), zhat.resolution);
  CHECK(find_module_isomorphism(back.module, res.module).has_value());
}

TEST_CASE("hat construction on the node branch") {
  Groupoid un = unit_groupoid(node());
  Resolution branch = branch_resolution(un);
  HatConstruction hat = hat_construction(un, branch);
  CHECK(hat.hat_groupoid.n_arrows() == 12);
  CHECK(hat.hat_groupoid.n_objects() == 6);
  CHECK(validate_groupoid(hat.hat_groupoid).ok());
  CHECK(validate_resolution(hat.hat_resolution).ok());
  CHECK(validate_lcompatibility(hat.comp).ok());

  // the transported resolution is the explicitly built one
  Resolution moved = transport_resolution(hat.equivalence, branch);
  CHECK(find_module_isomorphism(moved.module, hat.hat_resolution.module).has_value());

  // corollary: inverse transport of Z(R-hat) gives back the branch
  Subgroupoid rhat = recover_subgroupoid(hat.comp);
  ZofR zhat = build_Z_of_R(hat.hat_groupoid, hat.hat_resolution.target, rhat);
  Resolution back = transport_resolution(inverse_morita(hat.equivalence), zhat.resolution);
  CHECK(find_module_isomorphism(back.module, branch.module).has_value());
}

TEST_CASE("hat construction on the flip base resolution") {
  Groupoid fl = flip();
  RightModule base = base_module(fl);
  Resolution res{base, make_stable(fl, Subset::full(fl.objects))};
  HatConstruction hat = hat_construction(fl, res);
  CHECK(validate_lcompatibility(hat.comp).ok());
  Subgroupoid rhat = recover_subgroupoid(hat.comp);
  ZofR zhat = build_Z_of_R(hat.hat_groupoid, hat.hat_resolution.target, rhat);
  Resolution back = transport_resolution(inverse_morita(hat.equivalence), zhat.resolution);
  CHECK(find_module_isomorphism(back.module, res.module).has_value());
}

TEST_CASE("surjectivity transfers from subgroupoid to resolution") {
  Groupoid un = unit_groupoid(node());
  StableSubset sg = make_stable(un, Subset::of(un.objects, {"g"}));
  Subset l = Subset::full(un.objects);
  Subset r = Subset::full(un.arrows);
  Subgroupoid all{un, r, l};
  REQUIRE(is_surjective_in_closure(all, sg));
  ZofR z = build_Z_of_R(un, sg, all);
  CHECK(is_surjective_resolution(z.resolution));
}

TEST_SUITE_END();
