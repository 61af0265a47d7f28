// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "finstack/finspace.hpp"

namespace finstack {

/// A groupoid internal to finite Alexandrov spaces.  Arrows compose
/// diagrammatically: `mul(g, h)` is defined when tgt(g) = src(h), with
/// src(gh) = src(g) and tgt(gh) = tgt(h).
///
/// The multiplication is stored as an explicit table so that deliberately
/// broken fixtures can be represented; `validate_groupoid` recomputes every
/// axiom, including the topological ones (src and tgt must be lifting
/// surjections, unit and inv continuous, mul monotone on composable pairs).
struct Groupoid {
  FinSpace arrows;
  FinSpace objects;
  CMap src;   // arrows -> objects
  CMap tgt;   // arrows -> objects
  CMap unit;  // objects -> arrows
  CMap inv;   // arrows -> arrows
  std::vector<int> mul;  // arrows*arrows dense table, -1 where undefined

  int mul_at(int g, int h) const { return mul[g * arrows.size() + h]; }
  void set_mul(int g, int h, int v) { mul[g * arrows.size() + h] = v; }
  bool composable(int g, int h) const { return tgt.map[g] == src.map[h]; }

  int n_arrows() const { return arrows.size(); }
  int n_objects() const { return objects.size(); }

  bool operator==(const Groupoid&) const = default;
};

struct Subgroupoid {
  Groupoid parent;
  Subset R;  // of parent.arrows
  Subset L;  // of parent.objects

  bool operator==(const Subgroupoid&) const = default;
};

struct StableSubset {
  Groupoid parent;
  Subset S;  // of parent.objects

  bool operator==(const StableSubset&) const = default;
};

Report validate_groupoid(const Groupoid& g);

/// Algebraic closure axioms for (R, L): units over L, src/tgt/inv/mul closure.
Report validate_subgroupoid(const Subgroupoid& sub);

/// Partition of objects by connectivity through arrows.
/// Returned as object index -> orbit id (ids are 0..k-1, first-seen order).
std::vector<int> orbits(const Groupoid& g);
std::vector<std::vector<std::string>> orbit_classes(const Groupoid& g);

/// Arrow restrictions by source/target fibers.
Subset restrict_src(const Groupoid& g, const Subset& I);   // arrows with src in I
Subset restrict_tgt(const Groupoid& g, const Subset& J);   // arrows with tgt in J
Subset restrict_both(const Groupoid& g, const Subset& I, const Subset& J);

bool is_stable(const Groupoid& g, const Subset& s);

/// Wraps a stable subset; throws not_stable otherwise.
StableSubset make_stable(const Groupoid& g, const Subset& s);

/// Closure of a stable subset, verified stable.  Throws not_stable on an
/// unstable input and internal_lemma_failure if the closure of a stable set
/// were not stable (unreachable for valid groupoids).
StableSubset stable_closure(const StableSubset& s);

Subgroupoid make_subgroupoid(const Groupoid& g, const Subset& R, const Subset& L);

/// R is closed as a subset of the subspace on Gamma_L^L.
bool is_closed_subgroupoid(const Subgroupoid& sub);

/// Order-lifting transversality: for every m in L∩S, every specialization of
/// m inside S is the target of an arrow above unit(m) in the subspace on
/// Gamma_L.
bool is_transversal(const Groupoid& g, const StableSubset& s, const Subset& l);

/// Conjunction: L∩S dense in L, transversality, and L meets every orbit
/// contained in S.
bool is_in_S(const Subgroupoid& sub, const StableSubset& s);

/// R contains every arrow of the parent with source and target in L∩S.
bool is_full_in_S(const Subgroupoid& sub, const StableSubset& s);

/// L meets every orbit contained in closure(S).
bool is_surjective_in_closure(const Subgroupoid& sub, const StableSubset& s);

/// Finite spaces are compact, so properness always holds; kept so that the
/// proper clauses of the correspondence results stay mechanically checkable.
bool is_proper_subgroupoid(const Subgroupoid& sub, const StableSubset& s);

Groupoid pair_groupoid(const FinSpace& z);
Groupoid unit_groupoid(const FinSpace& m);
Groupoid direct_product_groupoid(const Groupoid& g, const FinSpace& z);

bool groupoid_isomorphic(const Groupoid& a, const Groupoid& b);

/// The subgroupoid materialized as a groupoid on the subspaces (structure
/// maps restricted).  The result need not validate; callers decide.
Groupoid subgroupoid_as_groupoid(const Subgroupoid& sub);

}  // namespace finstack
