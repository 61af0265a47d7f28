// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "finstack/modaction.hpp"

namespace finstack {

/// A left-Gamma right-Gamma' bimodule: carrier X with moment maps p, p' and
/// commuting actions, each preserving the other map's fibers.
struct Bimodule {
  Groupoid left;
  Groupoid right;
  FinSpace X;
  CMap p;        // X -> left.objects
  CMap pPrime;   // X -> right.objects
  std::vector<int> lact;  // left.arrows x X, -1 where undefined
  std::vector<int> ract;  // X x right.arrows, -1 where undefined

  int lact_at(int g, int x) const { return lact[g * X.size() + x]; }
  int ract_at(int x, int g) const { return ract[x * right.n_arrows() + g]; }
  void set_lact(int g, int x, int v) { lact[g * X.size() + x] = v; }
  void set_ract(int x, int g, int v) { ract[x * right.n_arrows() + g] = v; }
  bool lact_defined(int g, int x) const { return left.tgt.map[g] == p.map[x]; }
  bool ract_defined(int x, int g) const { return pPrime.map[x] == right.src.map[g]; }

  LeftModule left_view() const { return LeftModule{left, X, p, lact}; }
  RightModule right_view() const { return RightModule{right, X, pPrime, ract}; }

  bool operator==(const Bimodule&) const = default;
};

/// A bimodule whose actions are free and transitive on the opposite map's
/// fibers.  Properness is automatic over finite spaces.
struct MoritaEquivalence {
  Bimodule bimodule;

  bool operator==(const MoritaEquivalence&) const = default;
};

Report validate_bimodule(const Bimodule& b);

/// Bimodule clauses plus freeness and fiber-transitivity of both actions.
Report validate_morita(const Bimodule& b);
inline Report validate_morita(const MoritaEquivalence& x) { return validate_morita(x.bimodule); }

/// Throws validation_error when the clauses fail.
MoritaEquivalence make_morita(Bimodule b);

/// The identity equivalence of G on its own arrows: p = tgt, p' = src, with
/// both actions induced by multiplication.
MoritaEquivalence identity_morita(const Groupoid& g);

MoritaEquivalence inverse_morita(const MoritaEquivalence& x);

/// Composition across a shared middle groupoid; the carrier is the quotient
/// of the fibered product by the antidiagonal middle action.  Throws
/// middle_mismatch when the middle groupoids differ.
MoritaEquivalence compose_morita(const MoritaEquivalence& x, const MoritaEquivalence& y);

/// Composition together with the fibered product and quotient bookkeeping,
/// for callers that need to locate classes of explicit pairs.
struct ComposedMorita {
  MoritaEquivalence result;
  FiberedProduct fp;  // of x.pPrime and y.p
  Quotient quot;      // fp points -> carrier classes
};
ComposedMorita compose_morita_full(const MoritaEquivalence& x, const MoritaEquivalence& y);

/// Module transport: (Z x_M X) / (z,x) ~ (z.g^-1, g.x) with moment
/// [z,x] -> p'(x) and action [z,x].g' = [z, x.g'].
RightModule transport_module(const MoritaEquivalence& x, const RightModule& m);

/// Stable-subset transport S -> p'(p^-1(S)).
Subset transport_subset(const MoritaEquivalence& x, const Subset& s);

/// Both sides of the closure-exchange identity, compared exactly.
bool check_closure_commutes(const MoritaEquivalence& x, const StableSubset& s);

/// Exhaustive search for a homeomorphism commuting with p, p' and both
/// actions; used to identify isomorphic equivalences.  When the optional
/// subsets are given the isomorphism must map the first onto the second.
bool bimodule_isomorphic(const Bimodule& a, const Bimodule& b,
                         const Subset* ya = nullptr, const Subset* yb = nullptr);
inline bool morita_isomorphic(const MoritaEquivalence& a, const MoritaEquivalence& b) {
  return bimodule_isomorphic(a.bimodule, b.bimodule);
}

}  // namespace finstack
