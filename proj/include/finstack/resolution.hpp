// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "finstack/morita.hpp"

namespace finstack {

/// An equivariant resolution: a right module (Z, phi) over the groupoid of
/// `target`, with phi^-1(S) dense in Z, phi a homeomorphism from phi^-1(S)
/// onto S, and phi(Z) inside closure(S).
struct Resolution {
  RightModule module;
  StableSubset target;

  bool operator==(const Resolution&) const = default;
};

/// Witness that a resolution is L-compatible: Ltilde maps homeomorphically
/// onto L, is transverse to the action in the order-lifting sense, and meets
/// every action orbit contained in phi^-1(S).
struct LCompatibility {
  Resolution resolution;
  Subset L;       // of the base objects
  Subset Ltilde;  // of the module carrier

  bool operator==(const LCompatibility&) const = default;
};

Report validate_resolution(const Resolution& res);
bool is_surjective_resolution(const Resolution& res);
/// Always true: preimages of compact sets are compact over finite spaces.
bool is_proper_resolution(const Resolution& res);

Report validate_lcompatibility(const LCompatibility& comp);

/// Z(R) together with the quotient bookkeeping needed downstream.
struct ZofR {
  Resolution resolution;
  FinSpace gammaL;        // subspace on Gamma_L
  CMap gammaL_incl;       // into the parent arrow space
  Quotient quot;          // Gamma_L -> Z
  Subset canonical_Ltilde;  // classes of unit(L), inside resolution.module.Z
};

/// Quotient of Gamma_L by the left R-action, with phi induced by tgt and the
/// right action by multiplication.  Hypotheses are checked up front:
/// throws not_closed / not_in_s / not_full naming the failed one.
ZofR build_Z_of_R(const Groupoid& g, const StableSubset& s, const Subgroupoid& sub);

/// The L-compatibility carried by Z(R) itself, with Ltilde the image of
/// unit(L).  Throws validation_error if it does not validate.
LCompatibility canonical_compatibility(const ZofR& z, const Subgroupoid& sub);

/// Searches sections of phi over L for one satisfying the compatibility
/// clauses; deterministic order, first hit wins.
std::optional<LCompatibility> is_L_compatible(const Resolution& res, const Subset& l);

/// R = arrows r over L with psi(src(r)).r back in Ltilde.
Subgroupoid recover_subgroupoid(const LCompatibility& comp);

/// Saturation of Ltilde under the action orbits.
Subset orbit_of_Ltilde(const LCompatibility& comp);

/// True when Ltilde meets every action orbit and the resolution is
/// isomorphic to Z(recover_subgroupoid(comp)).
bool resolutions_coincide_check(const LCompatibility& comp);

/// The canonical equivalence between G and G x pair(Z) on the carrier
/// Gamma x Z, for any nonempty Z.  p is src of the first leg, p' = (tgt, id).
MoritaEquivalence product_morita(const Groupoid& g, const FinSpace& z);

struct HatConstruction {
  Groupoid hat_groupoid;          // G x pair groupoid on Z
  MoritaEquivalence equivalence;  // carrier Gamma x Z
  Resolution hat_resolution;      // (Z x Z, phi x id) over the hat groupoid
  Subset L;                       // graph of phi inside the hat objects
  LCompatibility comp;            // Ltilde = diagonal
};

/// The direct-product construction attached to a resolution; every piece is
/// built explicitly and the compatibility is validated.
HatConstruction hat_construction(const Groupoid& g, const Resolution& res);

/// Transport of a resolution along an equivalence; re-validated, throws
/// not_a_resolution on failure.
Resolution transport_resolution(const MoritaEquivalence& x, const Resolution& res);

}  // namespace finstack
