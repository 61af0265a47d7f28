// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>

#include "finstack/correspondence.hpp"

namespace finstack::fixtures {

// Sierpinski space: closed point s below generic point g.
inline FinSpace sierp() { return FinSpace({"s", "g"}, {{"s", "g"}}); }

inline FinSpace disc2() { return FinSpace({"a", "b"}, {}); }

inline FinSpace pointspace() { return FinSpace({"pt"}, {}); }

// Two branch points below one generic point.
inline FinSpace node() { return FinSpace({"g", "x", "y"}, {{"x", "g"}, {"y", "g"}}); }

inline void set_mul(Groupoid& g, const std::string& a, const std::string& b,
                    const std::string& c) {
  g.set_mul(g.arrows.index(a), g.arrows.index(b), g.arrows.index(c));
}

// The swap action of the two-element group on two discrete points:
// e_a: a->a, e_b: b->b, s_a: a->b, s_b: b->a.
inline Groupoid flip() {
  FinSpace arrows({"e_a", "e_b", "s_a", "s_b"}, {});
  FinSpace objects = disc2();
  Groupoid g;
  g.arrows = arrows;
  g.objects = objects;
  g.src = CMap::by_names(arrows, objects, {{"e_a", "a"}, {"e_b", "b"}, {"s_a", "a"}, {"s_b", "b"}});
  g.tgt = CMap::by_names(arrows, objects, {{"e_a", "a"}, {"e_b", "b"}, {"s_a", "b"}, {"s_b", "a"}});
  g.unit = CMap::by_names(objects, arrows, {{"a", "e_a"}, {"b", "e_b"}});
  g.inv = CMap::by_names(arrows, arrows, {{"e_a", "e_a"}, {"e_b", "e_b"}, {"s_a", "s_b"}, {"s_b", "s_a"}});
  g.mul.assign(16, -1);
  set_mul(g, "e_a", "e_a", "e_a");
  set_mul(g, "e_b", "e_b", "e_b");
  set_mul(g, "e_a", "s_a", "s_a");
  set_mul(g, "s_a", "e_b", "s_a");
  set_mul(g, "e_b", "s_b", "s_b");
  set_mul(g, "s_b", "e_a", "s_b");
  set_mul(g, "s_a", "s_b", "e_a");
  set_mul(g, "s_b", "s_a", "e_b");
  return g;
}

// The two-element group over a point.
inline Groupoid z2pt() {
  FinSpace arrows({"e", "s"}, {});
  FinSpace objects = pointspace();
  Groupoid g;
  g.arrows = arrows;
  g.objects = objects;
  g.src = CMap::constant(arrows, objects, "pt");
  g.tgt = CMap::constant(arrows, objects, "pt");
  g.unit = CMap::by_names(objects, arrows, {{"pt", "e"}});
  g.inv = CMap::by_names(arrows, arrows, {{"e", "e"}, {"s", "s"}});
  g.mul.assign(4, -1);
  set_mul(g, "e", "e", "e");
  set_mul(g, "e", "s", "s");
  set_mul(g, "s", "e", "s");
  set_mul(g, "s", "s", "e");
  return g;
}

inline Groupoid pt_groupoid() { return unit_groupoid(pointspace()); }

// Z2 isotropy at both points of the Sierpinski space, no arrows between
// them: e_s <= e_g and o_s <= o_g.  The subgroupoid {e_s, e_g, o_g} is
// closed under the operations but not topologically closed.
inline Groupoid z2sierp() {
  FinSpace arrows({"e_s", "e_g", "o_s", "o_g"}, {{"e_s", "e_g"}, {"o_s", "o_g"}});
  FinSpace objects = sierp();
  Groupoid g;
  g.arrows = arrows;
  g.objects = objects;
  g.src = CMap::by_names(arrows, objects,
                         {{"e_s", "s"}, {"e_g", "g"}, {"o_s", "s"}, {"o_g", "g"}});
  g.tgt = g.src;
  g.unit = CMap::by_names(objects, arrows, {{"s", "e_s"}, {"g", "e_g"}});
  g.inv = CMap::identity(arrows);
  g.mul.assign(16, -1);
  for (const char* m : {"s", "g"}) {
    std::string e = std::string("e_") + m, o = std::string("o_") + m;
    set_mul(g, e, e, e);
    set_mul(g, e, o, o);
    set_mul(g, o, e, o);
    set_mul(g, o, o, e);
  }
  return g;
}

inline Groupoid pair2() { return pair_groupoid(disc2()); }

// Equivalence between flip() and the one-point unit groupoid, on the carrier
// of arrows into a: xa stands for e_a, xb for s_b.
inline MoritaEquivalence flip_pt_morita() {
  Groupoid fl = flip();
  Groupoid pt = pt_groupoid();
  Bimodule b;
  b.left = fl;
  b.right = pt;
  b.X = FinSpace({"xa", "xb"}, {});
  b.p = CMap::by_names(b.X, fl.objects, {{"xa", "a"}, {"xb", "b"}});
  b.pPrime = CMap::constant(b.X, pt.objects, "pt");
  b.lact.assign(fl.n_arrows() * 2, -1);
  b.ract.assign(2 * pt.n_arrows(), -1);
  auto L = [&](const std::string& g, const std::string& x, const std::string& y) {
    b.set_lact(fl.arrows.index(g), b.X.index(x), b.X.index(y));
  };
  L("e_a", "xa", "xa");
  L("e_b", "xb", "xb");
  L("s_a", "xb", "xa");  // s_a . s_b = e_a
  L("s_b", "xa", "xb");  // s_b . e_a = s_b
  for (int x = 0; x < 2; ++x) b.set_ract(x, pt.unit.map[0], x);
  return make_morita(std::move(b));
}

// Unit groupoid over node() with the branch subgroupoid on {g, x} (or {g, y}).
inline Subgroupoid node_branch(const Groupoid& unit_node, const std::string& branch) {
  Subset l = Subset::of(unit_node.objects, {"g", branch});
  Subset r = Subset::empty(unit_node.arrows);
  for (int m : l.indices()) r.add(unit_node.unit.map[m]);
  return Subgroupoid{unit_node, r, l};
}

}  // namespace finstack::fixtures
