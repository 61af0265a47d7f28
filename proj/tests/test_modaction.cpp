// SPDX-License-Identifier: Apache-2.0
#include <doctest.h>

#include "fixtures.hpp"

using namespace finstack;
using namespace finstack::fixtures;

TEST_SUITE_BEGIN("modaction");

TEST_CASE("trivial and base modules validate") {
  Groupoid un = unit_groupoid(node());
  RightModule t = trivial_module(un, Subset::of(un.objects, {"g"}));
  CHECK(validate_module(t).ok());
  CHECK(t.Z.size() == 1);

  Groupoid fl = flip();
  RightModule tf = trivial_module(fl, Subset::full(fl.objects));
  CHECK(validate_module(tf).ok());
  CHECK(tf.Z.size() == 2);
  // the swap arrow moves a to b
  CHECK(tf.act_at(tf.Z.index("a"), fl.arrows.index("s_a")) == tf.Z.index("b"));

  CHECK(validate_module(base_module(fl)).ok());
  CHECK(validate_module(base_module(un)).ok());
  CHECK(validate_module(arrows_as_right_module(fl)).ok());

  Groupoid p2 = pair2();
  CHECK_THROWS_AS(trivial_module(p2, Subset::of(p2.objects, {"a"})), error);
}

TEST_CASE("broken action entry is reported") {
  Groupoid fl = flip();
  RightModule m = trivial_module(fl, Subset::full(fl.objects));
  // make a.s_a land on a instead of b
  m.set_act(m.Z.index("a"), fl.arrows.index("s_a"), m.Z.index("a"));
  CHECK_FALSE(validate_module(m).ok());
}

TEST_CASE("module isomorphism search") {
  Groupoid fl = flip();
  RightModule m = trivial_module(fl, Subset::full(fl.objects));
  auto self = find_module_isomorphism(m, m);
  REQUIRE(self.has_value());
  CHECK(self->f.map == CMap::identity(m.Z).map);

  RightModule one = trivial_module(unit_groupoid(node()), Subset::of(node(), {"g"}));
  RightModule base = base_module(unit_groupoid(node()));
  CHECK_FALSE(find_module_isomorphism(one, base).has_value());

  // relabeled copy of the flip module
  RightModule relabeled = m;
  relabeled.Z = FinSpace({"u", "v"}, {});
  relabeled.phi = CMap::by_names(relabeled.Z, fl.objects, {{"u", "a"}, {"v", "b"}});
  relabeled.act.assign(2 * fl.n_arrows(), -1);
  for (int z = 0; z < 2; ++z)
    for (int a = 0; a < fl.n_arrows(); ++a)
      if (relabeled.defined(z, a)) relabeled.set_act(z, a, fl.tgt.map[a] == fl.objects.index("a") ? relabeled.Z.index("u") : relabeled.Z.index("v"));
  CHECK(validate_module(relabeled).ok());
  auto found = find_module_isomorphism(m, relabeled);
  REQUIRE(found.has_value());
  CHECK(validate_morphism(*found).ok());

  // symmetry of the search
  CHECK(find_module_isomorphism(relabeled, m).has_value());
  CHECK(count_module_isomorphisms(m, relabeled) == count_module_isomorphisms(relabeled, m));
}

TEST_CASE("quotient by left actions") {
  Groupoid fl = flip();

  // trivial action of the unit groupoid on its own objects
  Groupoid un = unit_groupoid(node());
  LeftModule triv{un, un.objects, CMap::identity(un.objects), {}};
  triv.act.assign(un.n_arrows() * un.n_objects(), -1);
  for (int a = 0; a < un.n_arrows(); ++a)
    for (int z = 0; z < un.n_objects(); ++z)
      if (triv.defined(a, z)) triv.set_act(a, z, z);
  CHECK(validate_module(triv).ok());
  CHECK(quotient_by_left_action(triv).space.size() == un.n_objects());

  // the groupoid acting on its own arrows by left multiplication
  LeftModule self{fl, fl.arrows, fl.src, {}};
  self.act.assign(fl.n_arrows() * fl.n_arrows(), -1);
  for (int a = 0; a < fl.n_arrows(); ++a)
    for (int x = 0; x < fl.n_arrows(); ++x)
      if (self.defined(a, x)) self.act.at(a * fl.n_arrows() + x) = fl.mul_at(a, x);
  CHECK(validate_module(self).ok());
  auto q = quotient_by_left_action(self);
  CHECK(q.space.size() == fl.n_objects());  // orbits are target fibers

  Groupoid z2 = z2pt();
  LeftModule z2self{z2, z2.arrows, z2.src, {}};
  z2self.act.assign(4, -1);
  for (int a = 0; a < 2; ++a)
    for (int x = 0; x < 2; ++x) z2self.act.at(a * 2 + x) = z2.mul_at(a, x);
  CHECK(validate_module(z2self).ok());
  CHECK(quotient_by_left_action(z2self).space.size() == 1);
}

TEST_CASE("quotient is universal among orbit-constant maps") {
  Groupoid fl = flip();
  LeftModule self{fl, fl.arrows, fl.src, {}};
  self.act.assign(fl.n_arrows() * fl.n_arrows(), -1);
  for (int a = 0; a < fl.n_arrows(); ++a)
    for (int x = 0; x < fl.n_arrows(); ++x)
      if (self.defined(a, x)) self.act.at(a * fl.n_arrows() + x) = fl.mul_at(a, x);
  auto q = quotient_by_left_action(self);

  // enumerate all continuous orbit-constant maps into small spaces and factor
  for (const FinSpace& w : {sierp(), disc2(), pointspace()}) {
    const int k = self.Z.size(), n = w.size();
    std::vector<int> tab(k, 0);
    while (true) {
      CMap h{self.Z, w, tab};
      bool constant = true;
      for (int a = 0; a < fl.n_arrows() && constant; ++a)
        for (int x = 0; x < k; ++x)
          if (self.defined(a, x) && tab[self.act_at(a, x)] != tab[x]) {
            constant = false;
            break;
          }
      if (constant && is_continuous(h)) {
        // well-defined set-theoretic factorization through the classes
        std::vector<int> bar(q.space.size(), -1);
        bool ok = true;
        for (int x = 0; x < k; ++x) {
          int c = q.class_of[x];
          if (bar[c] < 0) bar[c] = tab[x];
          else if (bar[c] != tab[x]) ok = false;
        }
        CHECK(ok);
        CHECK(is_continuous(CMap{q.space, w, bar}));
      }
      int i = 0;
      while (i < k && ++tab[i] == n) tab[i++] = 0;
      if (i == k) break;
    }
  }
}

TEST_SUITE_END();
