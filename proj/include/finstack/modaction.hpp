// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>

#include "finstack/groupoid.hpp"

namespace finstack {

/// A right module (Z, phi) over a groupoid: z.g is defined exactly when
/// phi(z) = src(g) and lands over tgt(g).  The action is a dense table with
/// -1 where undefined, like a groupoid's mul.
struct RightModule {
  Groupoid groupoid;
  FinSpace Z;
  CMap phi;               // Z -> objects
  std::vector<int> act;   // Z x arrows, -1 where undefined

  int act_at(int z, int g) const { return act[z * groupoid.n_arrows() + g]; }
  void set_act(int z, int g, int v) { act[z * groupoid.n_arrows() + g] = v; }
  bool defined(int z, int g) const { return phi.map[z] == groupoid.src.map[g]; }

  bool operator==(const RightModule&) const = default;
};

/// Mirror image: g.z is defined exactly when tgt(g) = phi(z) and lands over
/// src(g).
struct LeftModule {
  Groupoid groupoid;
  FinSpace Z;
  CMap phi;
  std::vector<int> act;   // arrows x Z, -1 where undefined

  int act_at(int g, int z) const { return act[g * Z.size() + z]; }
  void set_act(int g, int z, int v) { act[g * Z.size() + z] = v; }
  bool defined(int g, int z) const { return groupoid.tgt.map[g] == phi.map[z]; }

  bool operator==(const LeftModule&) const = default;
};

struct ModuleMorphism {
  RightModule from;
  RightModule to;
  CMap f;  // from.Z -> to.Z

  bool operator==(const ModuleMorphism&) const = default;
};

Report validate_module(const RightModule& m);
Report validate_module(const LeftModule& m);
Report validate_morphism(const ModuleMorphism& h);

/// (S, inclusion) with action z.g = tgt(g); throws not_stable.
RightModule trivial_module(const Groupoid& g, const Subset& s);

/// (M, id) with action z.g = tgt(g).
RightModule base_module(const Groupoid& g);

/// The groupoid acting on its own arrows: right multiplication on (arrows, tgt).
RightModule arrows_as_right_module(const Groupoid& g);

/// Exhaustive search for an equivariant homeomorphism with phi2 . f = phi1.
/// Returns the first one found in a deterministic order, or nullopt.
std::optional<ModuleMorphism> find_module_isomorphism(const RightModule& m1,
                                                      const RightModule& m2);

/// Number of distinct isomorphisms, for diagnostics (the finite model does
/// not promise uniqueness).
int count_module_isomorphisms(const RightModule& m1, const RightModule& m2);

/// Quotient of Z by the orbit equivalence of the left action.
Quotient quotient_by_left_action(const LeftModule& x);

/// Orbit partition of a right action (z ~ z.g), as point -> orbit id.
std::vector<int> right_action_orbits(const RightModule& m);

}  // namespace finstack
