// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>

#include "finstack/morita.hpp"

namespace finstack {

struct Bounds {
  int max_objects = 3;
  int max_arrows = 9;
  int max_module_points = 4;
  std::uint64_t seed = 0;
};

/// All preorders on exactly n labeled points, deduplicated up to order
/// isomorphism and relabeled p0..p{n-1}.  n must be between 1 and 5.
std::vector<FinSpace> enum_finspaces(int n);

/// Union of enum_finspaces(1..n).
std::vector<FinSpace> enum_finspaces_upto(int n);

/// Every groupoid within the bounds, up to isomorphism: all orbit patterns,
/// all isotropy groups that fit the arrow budget, and every arrow topology
/// compatible with the structure maps.  Deterministic order.
std::vector<Groupoid> enum_groupoids(const Bounds& b);

/// Cached variant keyed on (max_objects, max_arrows).
const std::vector<Groupoid>& enum_groupoids_cached(const Bounds& b);

/// All subgroupoids: every L, every subset of Gamma_L^L containing unit(L)
/// and closed under inv and mul.
std::vector<Subgroupoid> enum_subgroupoids(const Groupoid& g);

/// Unions of orbit classes, including the empty one.
std::vector<StableSubset> enum_stable_subsets(const Groupoid& g);

/// Subgroupoids passing is_closed_subgroupoid, is_in_S and is_full_in_S.
std::vector<Subgroupoid> enum_full_closed_in_S(const Groupoid& g, const StableSubset& s);

/// Multiplication tables of all groups of order <= 9, used as isotropy.
struct SmallGroup {
  std::string name;
  int order;
  std::vector<int> mul;  // order x order
  std::vector<int> inv;

  int at(int a, int b) const { return mul[a * order + b]; }
};
const std::vector<SmallGroup>& small_groups();

/// Seed-deterministic samples; every returned value passes its validator.
FinSpace random_finspace(const Bounds& b);
Groupoid random_groupoid(const Bounds& b);
MoritaEquivalence random_bimodule(const Bounds& b);

}  // namespace finstack
