// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "finstack/resolution.hpp"

namespace finstack {

/// A Morita equivalence of subgroupoids presented inside an ambient one:
/// Y is a subset of the ambient carrier which, with the restricted moment
/// maps and actions, is an equivalence between R and R'.
struct SubgroupoidMorita {
  MoritaEquivalence X;
  Subgroupoid subLeft;
  Subgroupoid subRight;
  Subset Y;  // of X's carrier

  bool operator==(const SubgroupoidMorita&) const = default;
};

/// Witness data printed alongside verdicts: human-readable notes, the found
/// isomorphism when there is one, and the Y carrier when it validates.
struct Evidence {
  std::vector<std::string> notes;
  std::vector<std::pair<std::string, std::string>> iso;
  std::vector<std::string> y_members;
};

Report validate_subgroupoid_morita(const SubgroupoidMorita& sm);

/// Composition: outer composition of the ambient equivalences, Y'' the set
/// of classes met by Y x Y' pairs.  Throws middle_mismatch.
SubgroupoidMorita compose_subgroupoid_morita(const SubgroupoidMorita& a,
                                             const SubgroupoidMorita& b);

/// Same subgroupoid endpoints and an ambient isomorphism matching the Y's.
bool subgroupoid_morita_isomorphic(const SubgroupoidMorita& a, const SubgroupoidMorita& b);

/// The closure, inside the subspace on p^-1(L) cap p'^-1(L'), of
/// p^-1(L cap S) cap p'^-1(L' cap S'); wrapped and validated.
/// Returns nullopt when the candidate fails validation.
/// Throws hypothesis_failure naming the first failed hypothesis.
std::optional<SubgroupoidMorita> build_Y(const MoritaEquivalence& x, const StableSubset& s,
                                         const Subgroupoid& subLeft,
                                         const Subgroupoid& subRight);

struct FundPropResult {
  bool agree;       // the two verdicts coincide
  bool verdict_i;   // transported Z(R) isomorphic to Z(R')
  bool verdict_ii;  // a subgroupoid equivalence over x exists
  Evidence evidence;
};

/// Evaluates both sides of the resolution/subgroupoid correspondence
/// independently and reports whether they agree.
FundPropResult fund_prop_check(const MoritaEquivalence& x, const StableSubset& s,
                               const Subgroupoid& subLeft, const Subgroupoid& subRight);

/// Evaluates the four predicates (in closure(S), surjective in closure(S),
/// full in S, proper) on both sides of a subgroupoid equivalence and reports
/// every disagreement.
Report invariance_check(const SubgroupoidMorita& sm, const StableSubset& s);

struct RoundtripResult {
  bool ok;
  Evidence evidence;
};

/// The full pipeline: Z(R), hat construction, recovery, inverse transport,
/// isomorphism with the original, and a subgroupoid equivalence across the
/// hat Morita equivalence.
RoundtripResult roundtrip_theorem_check(const Groupoid& g, const StableSubset& s,
                                        const Subgroupoid& sub);

}  // namespace finstack
