// SPDX-License-Identifier: Apache-2.0
#include "finstack/enumerate.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <numeric>
#include <random>

#include "finstack/resolution.hpp"

namespace finstack {

namespace {

void check_bounds(const Bounds& b) {
  if (b.max_objects < 1 || b.max_arrows < 1 || b.max_module_points < 1)
    throw error(errc::bound_exceeded, "bounds must be at least 1");
}

std::string canonical_matrix_key(const std::vector<char>& rel, int n) {
  // minimum over all relabelings of the flattened relation
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::string best;
  do {
    std::string key(n * n, '0');
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (rel[i * n + j]) key[perm[i] * n + perm[j]] = '1';
    if (best.empty() || key < best) best = key;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace

std::vector<FinSpace> enum_finspaces(int n) {
  if (n < 1 || n > 5) throw error(errc::bound_exceeded, "enum_finspaces needs 1 <= n <= 5");
  const int offdiag = n * (n - 1);
  std::vector<std::pair<int, int>> slots;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j) slots.emplace_back(i, j);

  std::vector<FinSpace> out;
  std::vector<std::string> seen;
  std::vector<char> rel(n * n, 0);
  for (std::uint64_t bits = 0; bits < (std::uint64_t(1) << offdiag); ++bits) {
    std::fill(rel.begin(), rel.end(), 0);
    for (int i = 0; i < n; ++i) rel[i * n + i] = 1;
    for (std::size_t s = 0; s < slots.size(); ++s)
      if (bits & (std::uint64_t(1) << s)) rel[slots[s].first * n + slots[s].second] = 1;
    bool transitive = true;
    for (int i = 0; i < n && transitive; ++i)
      for (int j = 0; j < n && transitive; ++j) {
        if (!rel[i * n + j]) continue;
        for (int k = 0; k < n; ++k)
          if (rel[j * n + k] && !rel[i * n + k]) { transitive = false; break; }
      }
    if (!transitive) continue;
    std::string key = canonical_matrix_key(rel, n);
    if (std::find(seen.begin(), seen.end(), key) != seen.end()) continue;
    seen.push_back(key);
    std::vector<char> canon(n * n, 0);
    for (int i = 0; i < n * n; ++i) canon[i] = (key[i] == '1');
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("p" + std::to_string(i));
    out.push_back(FinSpace::from_matrix(names, canon));
  }
  return out;
}

std::vector<FinSpace> enum_finspaces_upto(int n) {
  std::vector<FinSpace> out;
  for (int k = 1; k <= n; ++k) {
    auto part = enum_finspaces(k);
    out.insert(out.end(), part.begin(), part.end());
  }
  return out;
}

namespace {

SmallGroup cyclic(int n) {
  SmallGroup g{"C" + std::to_string(n), n, std::vector<int>(n * n), std::vector<int>(n)};
  for (int a = 0; a < n; ++a) {
    g.inv[a] = (n - a) % n;
    for (int b = 0; b < n; ++b) g.mul[a * n + b] = (a + b) % n;
  }
  return g;
}

SmallGroup direct(const SmallGroup& a, const SmallGroup& b) {
  int n = a.order * b.order;
  SmallGroup g{a.name + "x" + b.name, n, std::vector<int>(n * n), std::vector<int>(n)};
  auto enc = [&](int x, int y) { return x * b.order + y; };
  for (int x1 = 0; x1 < a.order; ++x1)
    for (int y1 = 0; y1 < b.order; ++y1) {
      g.inv[enc(x1, y1)] = enc(a.inv[x1], b.inv[y1]);
      for (int x2 = 0; x2 < a.order; ++x2)
        for (int y2 = 0; y2 < b.order; ++y2)
          g.mul[enc(x1, y1) * n + enc(x2, y2)] = enc(a.at(x1, x2), b.at(y1, y2));
    }
  return g;
}

SmallGroup dihedral(int k) {
  // elements (eps, i) = s^eps r^i with s r s = r^-1
  int n = 2 * k;
  SmallGroup g{"D" + std::to_string(k), n, std::vector<int>(n * n), std::vector<int>(n)};
  auto enc = [&](int e, int i) { return e * k + ((i % k) + k) % k; };
  for (int e1 = 0; e1 < 2; ++e1)
    for (int i1 = 0; i1 < k; ++i1) {
      g.inv[enc(e1, i1)] = e1 ? enc(1, i1) : enc(0, -i1);
      for (int e2 = 0; e2 < 2; ++e2)
        for (int i2 = 0; i2 < k; ++i2)
          g.mul[enc(e1, i1) * n + enc(e2, i2)] =
              enc(e1 ^ e2, e2 ? i2 - i1 : i1 + i2);
    }
  return g;
}

SmallGroup quaternion() {
  // 0..7 = 1, -1, i, -i, j, -j, k, -k encoded as axis*2 + sign
  auto sign = [](int x) { return x & 1; };
  auto axis = [](int x) { return x >> 1; };  // 0=1, 1=i, 2=j, 3=k
  auto enc = [](int ax, int sg) { return ax * 2 + sg; };
  static const int ax_mul[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
  static const int sgn[4][4] = {
      {0, 0, 0, 0},   // 1*1=1,  1*i=i,  1*j=j,  1*k=k
      {0, 1, 0, 1},   // i*1=i,  i*i=-1, i*j=k,  i*k=-j
      {0, 1, 1, 0},   // j*1=j,  j*i=-k, j*j=-1, j*k=i
      {0, 0, 1, 1}};  // k*1=k,  k*i=j,  k*j=-i, k*k=-1
  SmallGroup g{"Q8", 8, std::vector<int>(64), std::vector<int>(8)};
  for (int x = 0; x < 8; ++x) {
    int ax = axis(x), sx = sign(x);
    g.inv[x] = (ax == 0) ? x : enc(ax, sx ^ 1);
    for (int y = 0; y < 8; ++y) {
      int ay = axis(y), sy = sign(y);
      g.mul[x * 8 + y] = enc(ax_mul[ax][ay], sx ^ sy ^ sgn[ax][ay]);
    }
  }
  return g;
}

}  // namespace

const std::vector<SmallGroup>& small_groups() {
  static const std::vector<SmallGroup> groups = [] {
    std::vector<SmallGroup> gs;
    for (int n = 1; n <= 9; ++n) gs.push_back(cyclic(n));
    gs.push_back(direct(cyclic(2), cyclic(2)));
    gs.push_back(dihedral(3));
    gs.push_back(direct(cyclic(4), cyclic(2)));
    gs.push_back(direct(cyclic(2), direct(cyclic(2), cyclic(2))));
    gs.push_back(dihedral(4));
    gs.push_back(quaternion());
    gs.push_back(direct(cyclic(3), cyclic(3)));
    std::stable_sort(gs.begin(), gs.end(),
                     [](const SmallGroup& a, const SmallGroup& b) { return a.order < b.order; });
    return gs;
  }();
  return groups;
}

namespace {

// ---- arrow topology enumeration -------------------------------------------

// The algebraic skeleton of a candidate groupoid before a topology is chosen.
struct AlgebraicGroupoid {
  FinSpace objects;
  std::vector<std::string> arrow_names;
  std::vector<int> src, tgt, inv;
  std::vector<int> unit;                // per object
  std::vector<int> mul;                 // dense, -1 where undefined
  int n() const { return static_cast<int>(arrow_names.size()); }
  int mul_at(int a, int b) const { return mul[a * n() + b]; }
};

using Rel = std::array<std::uint16_t, 16>;  // row bitsets, up to 16 arrows

// Closes under transitivity, inv-monotonicity and mul-monotonicity.
// Returns false if the closure needs a pair outside `allowed`.
bool close_relation(const AlgebraicGroupoid& ag, const Rel& allowed, Rel& rel) {
  const int n = ag.n();
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (!(rel[i] >> j & 1)) continue;
        // transitivity: row_i |= row_j
        std::uint16_t add = rel[j] & ~rel[i];
        if (add) { rel[i] |= add; changed = true; }
        // inv
        if (!(rel[ag.inv[i]] >> ag.inv[j] & 1)) {
          rel[ag.inv[i]] |= std::uint16_t(1) << ag.inv[j];
          changed = true;
        }
      }
    for (int a = 0; a < n; ++a)
      for (int c = 0; c < n; ++c) {
        int e = ag.mul_at(a, c);
        if (e < 0) continue;
        for (int b = 0; b < n; ++b) {
          if (!(rel[a] >> b & 1)) continue;
          for (int d = 0; d < n; ++d) {
            if (!(rel[c] >> d & 1)) continue;
            int f = ag.mul_at(b, d);
            if (f < 0 || (rel[e] >> f & 1)) continue;
            rel[e] |= std::uint16_t(1) << f;
            changed = true;
          }
        }
      }
  }
  for (int i = 0; i < n; ++i)
    if (rel[i] & ~allowed[i]) return false;
  return true;
}

void enum_topologies(const AlgebraicGroupoid& ag, std::vector<Rel>& out) {
  const int n = ag.n();
  Rel allowed{};
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (ag.objects.leq(ag.src[i], ag.src[j]) && ag.objects.leq(ag.tgt[i], ag.tgt[j]))
        allowed[i] |= std::uint16_t(1) << j;
  Rel seed{};
  for (int i = 0; i < n; ++i) seed[i] |= std::uint16_t(1) << i;
  for (int m = 0; m < ag.objects.size(); ++m)
    for (int m2 = 0; m2 < ag.objects.size(); ++m2)
      if (ag.objects.leq(m, m2)) seed[ag.unit[m]] |= std::uint16_t(1) << ag.unit[m2];
  if (!close_relation(ag, allowed, seed)) return;

  std::vector<std::pair<int, int>> candidates;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (i != j && (allowed[i] >> j & 1) && !(seed[i] >> j & 1))
        candidates.emplace_back(i, j);

  // binary branching over candidate pairs with closure after each inclusion
  std::vector<std::pair<Rel, Rel>> stack;  // (current relation, banned pairs)
  stack.push_back({seed, Rel{}});
  while (!stack.empty()) {
    auto [rel, banned] = stack.back();
    stack.pop_back();
    int pick = -1;
    for (size_t c = 0; c < candidates.size(); ++c) {
      auto [i, j] = candidates[c];
      if (!(rel[i] >> j & 1) && !(banned[i] >> j & 1)) { pick = static_cast<int>(c); break; }
    }
    if (pick < 0) {
      out.push_back(rel);
      continue;
    }
    auto [i, j] = candidates[pick];
    // exclude branch first so that sparser topologies come out first
    {
      Rel banned2 = banned;
      banned2[i] |= std::uint16_t(1) << j;
      stack.push_back({rel, banned2});
    }
    {
      Rel rel2 = rel;
      rel2[i] |= std::uint16_t(1) << j;
      if (close_relation(ag, allowed, rel2)) {
        bool clash = false;
        for (int r = 0; r < n && !clash; ++r)
          if (rel2[r] & banned[r]) clash = true;
        if (!clash) stack.push_back({rel2, banned});
      }
    }
  }
}

Groupoid assemble(const AlgebraicGroupoid& ag, const Rel& rel) {
  const int n = ag.n();
  std::vector<char> mat(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) mat[i * n + j] = (rel[i] >> j) & 1;
  Groupoid g;
  g.arrows = FinSpace::from_matrix(ag.arrow_names, mat);
  g.objects = ag.objects;
  std::vector<int> to_new(n);
  for (int i = 0; i < n; ++i) to_new[i] = g.arrows.index(ag.arrow_names[i]);
  g.src = CMap{g.arrows, g.objects, std::vector<int>(n)};
  g.tgt = CMap{g.arrows, g.objects, std::vector<int>(n)};
  g.inv = CMap{g.arrows, g.arrows, std::vector<int>(n)};
  for (int i = 0; i < n; ++i) {
    g.src.map[to_new[i]] = ag.src[i];
    g.tgt.map[to_new[i]] = ag.tgt[i];
    g.inv.map[to_new[i]] = to_new[ag.inv[i]];
  }
  g.unit = CMap{g.objects, g.arrows, std::vector<int>(ag.objects.size())};
  for (int m = 0; m < ag.objects.size(); ++m) g.unit.map[m] = to_new[ag.unit[m]];
  g.mul.assign(n * n, -1);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (ag.mul_at(a, b) >= 0) g.set_mul(to_new[a], to_new[b], to_new[ag.mul_at(a, b)]);
  return g;
}

// set partitions as restricted growth strings
void enum_partitions(int n, std::vector<std::vector<int>>& out) {
  std::vector<int> rgs(n, 0);
  std::function<void(int, int)> rec = [&](int i, int maxv) {
    if (i == n) {
      out.push_back(rgs);
      return;
    }
    for (int v = 0; v <= maxv + 1; ++v) {
      rgs[i] = v;
      rec(i + 1, std::max(maxv, v));
    }
  };
  if (n > 0) rec(0, -1);
}

AlgebraicGroupoid build_algebraic(const FinSpace& m, const std::vector<int>& block_of,
                                  const std::vector<const SmallGroup*>& groups) {
  AlgebraicGroupoid ag;
  ag.objects = m;
  int nblocks = *std::max_element(block_of.begin(), block_of.end()) + 1;
  std::vector<std::vector<int>> blocks(nblocks);
  for (int i = 0; i < m.size(); ++i) blocks[block_of[i]].push_back(i);

  struct Key { int u, v, g; };
  std::vector<Key> keys;
  std::map<std::tuple<int, int, int>, int> index_of;
  for (int bi = 0; bi < nblocks; ++bi) {
    const SmallGroup& grp = *groups[bi];
    for (int u : blocks[bi])
      for (int v : blocks[bi])
        for (int x = 0; x < grp.order; ++x) {
          index_of[{u, v, x}] = static_cast<int>(keys.size());
          keys.push_back({u, v, x});
          ag.arrow_names.push_back("a[" + m.name(u) + ">" + m.name(v) + "#" +
                                   std::to_string(x) + "]");
        }
  }
  const int n = static_cast<int>(keys.size());
  ag.src.resize(n);
  ag.tgt.resize(n);
  ag.inv.resize(n);
  ag.unit.resize(m.size());
  ag.mul.assign(n * n, -1);
  for (int i = 0; i < n; ++i) {
    const SmallGroup& grp = *groups[block_of[keys[i].u]];
    ag.src[i] = keys[i].u;
    ag.tgt[i] = keys[i].v;
    ag.inv[i] = index_of[{keys[i].v, keys[i].u, grp.inv[keys[i].g]}];
  }
  for (int o = 0; o < m.size(); ++o) ag.unit[o] = index_of[{o, o, 0}];
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (keys[i].v != keys[j].u) continue;
      if (block_of[keys[i].u] != block_of[keys[j].u]) continue;
      const SmallGroup& grp = *groups[block_of[keys[i].u]];
      ag.mul[i * n + j] = index_of[{keys[i].u, keys[j].v, grp.at(keys[i].g, keys[j].g)}];
    }
  return ag;
}

std::string groupoid_signature(const Groupoid& g) {
  std::string sig = std::to_string(g.n_objects()) + "|" + std::to_string(g.n_arrows()) + "|";
  for (int i = 0; i < g.n_objects(); ++i)
    for (int j = 0; j < g.n_objects(); ++j) sig += g.objects.leq(i, j) ? '1' : '0';
  std::vector<std::string> profile;
  auto orbit_id = orbits(g);
  for (int m = 0; m < g.n_objects(); ++m) {
    int iso = 0, up = 0;
    for (int a = 0; a < g.n_arrows(); ++a)
      if (g.src.map[a] == m && g.tgt.map[a] == m) ++iso;
    for (int a = 0; a < g.n_arrows(); ++a)
      if (g.arrows.leq(g.unit.map[m], a)) ++up;
    int osz = 0;
    for (int m2 = 0; m2 < g.n_objects(); ++m2) osz += (orbit_id[m2] == orbit_id[m]);
    profile.push_back(std::to_string(iso) + "." + std::to_string(up) + "." +
                      std::to_string(osz));
  }
  std::sort(profile.begin(), profile.end());
  for (auto& p : profile) sig += p + ";";
  int pairs = 0;
  for (int i = 0; i < g.n_arrows(); ++i)
    for (int j = 0; j < g.n_arrows(); ++j) pairs += g.arrows.leq(i, j);
  sig += "#" + std::to_string(pairs);
  return sig;
}

}  // namespace

std::vector<Groupoid> enum_groupoids(const Bounds& b) {
  check_bounds(b);
  if (b.max_arrows > 16)
    throw error(errc::bound_exceeded, "enum_groupoids supports at most 16 arrows");
  std::vector<Groupoid> out;
  std::map<std::string, std::vector<int>> buckets;

  for (const FinSpace& m : enum_finspaces_upto(std::min(b.max_objects, 5))) {
    std::vector<std::vector<int>> partitions;
    enum_partitions(m.size(), partitions);
    for (const auto& block_of : partitions) {
      int nblocks = *std::max_element(block_of.begin(), block_of.end()) + 1;
      std::vector<int> block_size(nblocks, 0);
      for (int v : block_of) ++block_size[v];
      // choose an isotropy group per block within the arrow budget
      std::vector<const SmallGroup*> choice(nblocks, nullptr);
      std::function<void(int, int)> rec = [&](int bi, int used) {
        if (bi == nblocks) {
          AlgebraicGroupoid ag = build_algebraic(m, block_of, choice);
          std::vector<Rel> topologies;
          enum_topologies(ag, topologies);
          for (const Rel& rel : topologies) {
            Groupoid g = assemble(ag, rel);
            if (!validate_groupoid(g).ok()) continue;
            std::string sig = groupoid_signature(g);
            bool dup = false;
            for (int idx : buckets[sig])
              if (groupoid_isomorphic(g, out[idx])) { dup = true; break; }
            if (!dup) {
              buckets[sig].push_back(static_cast<int>(out.size()));
              out.push_back(std::move(g));
            }
          }
          return;
        }
        for (const SmallGroup& grp : small_groups()) {
          int cost = block_size[bi] * block_size[bi] * grp.order;
          if (used + cost > b.max_arrows) continue;
          choice[bi] = &grp;
          rec(bi + 1, used + cost);
        }
      };
      rec(0, 0);
    }
  }
  return out;
}

const std::vector<Groupoid>& enum_groupoids_cached(const Bounds& b) {
  static std::map<std::pair<int, int>, std::vector<Groupoid>> cache;
  auto key = std::make_pair(b.max_objects, b.max_arrows);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, enum_groupoids(b)).first;
  return it->second;
}

std::vector<Subgroupoid> enum_subgroupoids(const Groupoid& g) {
  std::vector<Subgroupoid> out;
  const int no = g.n_objects();
  for (int lbits = 0; lbits < (1 << no); ++lbits) {
    Subset l = Subset::empty(g.objects);
    for (int m = 0; m < no; ++m)
      if (lbits & (1 << m)) l.add(m);
    Subset gll = restrict_both(g, l, l);
    Subset base = Subset::empty(g.arrows);
    for (int m : l.indices()) base.add(g.unit.map[m]);
    std::vector<int> candidates;
    for (int a : gll.indices())
      if (!base.contains(a)) candidates.push_back(a);

    // close a set of arrows under inv and mul
    auto close = [&](Subset r) {
      bool changed = true;
      while (changed) {
        changed = false;
        for (int a : r.indices()) {
          if (!r.contains(g.inv.map[a])) { r.add(g.inv.map[a]); changed = true; }
          for (int c : r.indices()) {
            int p = g.mul_at(a, c);
            if (p >= 0 && !r.contains(p)) { r.add(p); changed = true; }
          }
        }
      }
      return r;
    };

    std::vector<std::pair<Subset, Subset>> stack;  // (current, banned)
    stack.push_back({close(base), Subset::empty(g.arrows)});
    while (!stack.empty()) {
      auto [r, banned] = stack.back();
      stack.pop_back();
      int pick = -1;
      for (int a : candidates)
        if (!r.contains(a) && !banned.contains(a)) { pick = a; break; }
      if (pick < 0) {
        out.push_back(Subgroupoid{g, r, l});
        continue;
      }
      {
        Subset banned2 = banned;
        banned2.add(pick);
        stack.push_back({r, banned2});
      }
      {
        Subset r2 = r;
        r2.add(pick);
        r2 = close(r2);
        bool clash = false;
        for (int a : r2.indices())
          if (banned.contains(a)) { clash = true; break; }
        if (!clash) stack.push_back({r2, banned});
      }
    }
  }
  return out;
}

std::vector<StableSubset> enum_stable_subsets(const Groupoid& g) {
  auto orbit_id = orbits(g);
  int k = orbit_id.empty() ? 0 : *std::max_element(orbit_id.begin(), orbit_id.end()) + 1;
  std::vector<StableSubset> out;
  for (int bits = 0; bits < (1 << k); ++bits) {
    Subset s = Subset::empty(g.objects);
    for (int m = 0; m < g.n_objects(); ++m)
      if (bits & (1 << orbit_id[m])) s.add(m);
    out.push_back(StableSubset{g, s});
  }
  return out;
}

std::vector<Subgroupoid> enum_full_closed_in_S(const Groupoid& g, const StableSubset& s) {
  std::vector<Subgroupoid> out;
  for (auto& sub : enum_subgroupoids(g))
    if (is_closed_subgroupoid(sub) && is_in_S(sub, s) && is_full_in_S(sub, s))
      out.push_back(sub);
  return out;
}

FinSpace random_finspace(const Bounds& b) {
  check_bounds(b);
  std::mt19937_64 rng(b.seed);
  int n = 1 + static_cast<int>(rng() % std::min(b.max_objects, 5));
  auto spaces = enum_finspaces(n);
  return spaces[rng() % spaces.size()];
}

Groupoid random_groupoid(const Bounds& b) {
  check_bounds(b);
  std::mt19937_64 rng(b.seed);
  const auto& gs = enum_groupoids_cached(b);
  return gs[rng() % gs.size()];
}

MoritaEquivalence random_bimodule(const Bounds& b) {
  check_bounds(b);
  std::mt19937_64 rng(b.seed);
  const auto& gs = enum_groupoids_cached(b);
  const Groupoid& g = gs[rng() % gs.size()];
  switch (rng() % 3) {
    case 0:
      return identity_morita(g);
    case 1: {
      int n = 1 + static_cast<int>(rng() % std::min(b.max_module_points, 2));
      auto spaces = enum_finspaces(n);
      return product_morita(g, spaces[rng() % spaces.size()]);
    }
    default: {
      int n = 1 + static_cast<int>(rng() % std::min(b.max_module_points, 2));
      auto spaces = enum_finspaces(n);
      return inverse_morita(product_morita(g, spaces[rng() % spaces.size()]));
    }
  }
}

}  // namespace finstack
