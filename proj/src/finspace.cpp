// SPDX-License-Identifier: Apache-2.0
#include "finstack/finspace.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <sstream>

namespace finstack {

const char* errc_name(errc c) {
  switch (c) {
    case errc::relation_not_equivalence: return "RelationNotEquivalence";
    case errc::not_stable: return "NotStable";
    case errc::internal_lemma_failure: return "InternalLemmaFailure";
    case errc::middle_mismatch: return "MiddleMismatch";
    case errc::groupoid_mismatch: return "GroupoidMismatch";
    case errc::not_a_resolution: return "NotAResolution";
    case errc::not_closed: return "NotClosed";
    case errc::not_in_s: return "NotInS";
    case errc::not_full: return "NotFull";
    case errc::bound_exceeded: return "BoundExceeded";
    case errc::parse_error: return "ParseError";
    case errc::dangling_reference: return "DanglingReference";
    case errc::validation_error: return "ValidationError";
    case errc::hypothesis_failure: return "HypothesisFailure";
  }
  return "Error";
}

void Report::merge(const Report& other, const std::string& prefix) {
  for (const auto& v : other.violations) violations.push_back(prefix + v);
}

std::string Report::str() const {
  std::ostringstream os;
  for (const auto& v : violations) os << v << "\n";
  return os.str();
}

namespace {

std::vector<int> sort_permutation(std::vector<std::string>& pts) {
  std::vector<int> order(pts.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return pts[a] < pts[b]; });
  std::vector<std::string> sorted;
  sorted.reserve(pts.size());
  for (int i : order) sorted.push_back(pts[i]);
  pts = std::move(sorted);
  // order[k] = old index of the k-th sorted point; return old -> new
  std::vector<int> old_to_new(order.size());
  for (size_t k = 0; k < order.size(); ++k) old_to_new[order[k]] = static_cast<int>(k);
  return old_to_new;
}

bool matrix_transitive(const std::vector<char>& rel, int n) {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (!rel[i * n + j]) continue;
      for (int k = 0; k < n; ++k)
        if (rel[j * n + k] && !rel[i * n + k]) return false;
    }
  return true;
}

}  // namespace

FinSpace::FinSpace(std::vector<std::string> points,
                   const std::vector<std::pair<std::string, std::string>>& leq_pairs) {
  {
    auto dup = points;
    std::sort(dup.begin(), dup.end());
    if (std::adjacent_find(dup.begin(), dup.end()) != dup.end())
      throw error(errc::validation_error, "duplicate point name");
  }
  pts_ = std::move(points);
  std::sort(pts_.begin(), pts_.end());
  const int n = size();
  rel_.assign(n * n, 0);
  for (int i = 0; i < n; ++i) rel_[i * n + i] = 1;
  for (const auto& [a, b] : leq_pairs) {
    int i = index(a), j = index(b);
    if (i < 0 || j < 0)
      throw error(errc::validation_error, "leq pair mentions unknown point " +
                                              (i < 0 ? a : b));
    rel_[i * n + j] = 1;
  }
  if (!matrix_transitive(rel_, n))
    throw error(errc::validation_error, "leq relation is not transitive");
}

FinSpace FinSpace::from_matrix(std::vector<std::string> points,
                               const std::vector<char>& rel) {
  FinSpace s;
  s.pts_ = std::move(points);
  auto old_to_new = sort_permutation(s.pts_);
  const int n = s.size();
  s.rel_.assign(n * n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (rel[i * n + j]) s.rel_[old_to_new[i] * n + old_to_new[j]] = 1;
  for (int i = 0; i < n; ++i)
    if (!s.rel_[i * n + i]) throw error(errc::validation_error, "relation not reflexive");
  if (!matrix_transitive(s.rel_, n))
    throw error(errc::validation_error, "relation not transitive");
  return s;
}

int FinSpace::index(const std::string& p) const {
  auto it = std::lower_bound(pts_.begin(), pts_.end(), p);
  if (it == pts_.end() || *it != p) return -1;
  return static_cast<int>(it - pts_.begin());
}

std::vector<int> FinSpace::up_set(int p) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j)
    if (leq(p, j)) out.push_back(j);
  return out;
}

std::vector<int> FinSpace::down_set(int p) const {
  std::vector<int> out;
  for (int j = 0; j < size(); ++j)
    if (leq(j, p)) out.push_back(j);
  return out;
}

std::vector<std::pair<std::string, std::string>> FinSpace::strict_pairs() const {
  std::vector<std::pair<std::string, std::string>> out;
  for (int i = 0; i < size(); ++i)
    for (int j = 0; j < size(); ++j)
      if (i != j && leq(i, j)) out.emplace_back(pts_[i], pts_[j]);
  std::sort(out.begin(), out.end());
  return out;
}

CMap CMap::identity(const FinSpace& s) {
  CMap f{s, s, {}};
  f.map.resize(s.size());
  std::iota(f.map.begin(), f.map.end(), 0);
  return f;
}

CMap CMap::by_names(const FinSpace& dom, const FinSpace& cod,
                    const std::vector<std::pair<std::string, std::string>>& pairs) {
  CMap f{dom, cod, std::vector<int>(dom.size(), -1)};
  for (const auto& [a, b] : pairs) {
    int i = dom.index(a), j = cod.index(b);
    if (i < 0) throw error(errc::validation_error, "map pair: unknown domain point " + a);
    if (j < 0) throw error(errc::validation_error, "map pair: unknown codomain point " + b);
    f.map[i] = j;
  }
  for (int i = 0; i < dom.size(); ++i)
    if (f.map[i] < 0)
      throw error(errc::validation_error, "map undefined on point " + dom.name(i));
  return f;
}

CMap CMap::constant(const FinSpace& dom, const FinSpace& cod, const std::string& to) {
  int j = cod.index(to);
  if (j < 0) throw error(errc::validation_error, "unknown codomain point " + to);
  return CMap{dom, cod, std::vector<int>(dom.size(), j)};
}

CMap compose(const CMap& f, const CMap& g) {
  if (!(f.cod == g.dom)) throw error(errc::validation_error, "compose: cod/dom mismatch");
  CMap h{f.dom, g.cod, std::vector<int>(f.dom.size())};
  for (int i = 0; i < f.dom.size(); ++i) h.map[i] = g.map[f.map[i]];
  return h;
}

Subset Subset::of(const FinSpace& s, const std::vector<std::string>& members) {
  Subset a{s, std::vector<char>(s.size(), 0)};
  for (const auto& m : members) {
    int i = s.index(m);
    if (i < 0) throw error(errc::validation_error, "subset member not in space: " + m);
    a.mask[i] = 1;
  }
  return a;
}

Subset Subset::full(const FinSpace& s) { return Subset{s, std::vector<char>(s.size(), 1)}; }
Subset Subset::empty(const FinSpace& s) { return Subset{s, std::vector<char>(s.size(), 0)}; }

int Subset::count() const {
  int c = 0;
  for (char m : mask) c += (m != 0);
  return c;
}

std::vector<int> Subset::indices() const {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(mask.size()); ++i)
    if (mask[i]) out.push_back(i);
  return out;
}

std::vector<std::string> Subset::names() const {
  std::vector<std::string> out;
  for (int i : indices()) out.push_back(space.name(i));
  return out;
}

bool is_continuous(const CMap& f) {
  const int n = f.dom.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (f.dom.leq(i, j) && !f.cod.leq(f.map[i], f.map[j])) return false;
  return true;
}

Subset closure(const Subset& a) {
  Subset c = Subset::empty(a.space);
  const int n = a.space.size();
  for (int j = 0; j < n; ++j) {
    if (!a.mask[j]) continue;
    for (int i = 0; i < n; ++i)
      if (a.space.leq(i, j)) c.mask[i] = 1;
  }
  return c;
}

bool is_closed_set(const Subset& a) { return closure(a) == a; }

bool is_open_set(const Subset& a) {
  const int n = a.space.size();
  for (int i = 0; i < n; ++i) {
    if (!a.mask[i]) continue;
    for (int j = 0; j < n; ++j)
      if (a.space.leq(i, j) && !a.mask[j]) return false;
  }
  return true;
}

bool is_dense(const Subset& a) { return closure(a).count() == a.space.size(); }

bool is_dense_in(const Subset& a, const Subset& within) {
  // Every point of `within` specializes from some point of A inside `within`.
  for (int i : within.indices()) {
    bool covered = false;
    for (int j : a.indices())
      if (within.contains(j) && a.space.leq(i, j)) { covered = true; break; }
    if (!covered) return false;
  }
  return true;
}

bool is_lifting_surjection(const CMap& f) {
  if (!is_continuous(f)) return false;
  std::vector<char> hit(f.cod.size(), 0);
  for (int v : f.map) hit[v] = 1;
  for (char h : hit)
    if (!h) return false;
  const int n = f.dom.size();
  for (int x = 0; x < n; ++x)
    for (int y = 0; y < f.cod.size(); ++y) {
      if (!f.cod.leq(f.map[x], y)) continue;
      bool lifted = false;
      for (int xp = 0; xp < n; ++xp)
        if (f.dom.leq(x, xp) && f.map[xp] == y) { lifted = true; break; }
      if (!lifted) return false;
    }
  return true;
}

Subset preimage(const CMap& f, const Subset& b) {
  Subset a = Subset::empty(f.dom);
  for (int i = 0; i < f.dom.size(); ++i)
    if (b.contains(f.map[i])) a.mask[i] = 1;
  return a;
}

Subset image(const CMap& f, const Subset& a) {
  Subset b = Subset::empty(f.cod);
  for (int i : a.indices()) b.mask[f.map[i]] = 1;
  return b;
}

std::string pair_name(const std::string& a, const std::string& b) {
  return "(" + a + "," + b + ")";
}

namespace {

// Shared by fibered products and plain products: builds the space on the
// given index pairs with componentwise order.
struct PairSpace {
  FinSpace space;
  CMap proj1, proj2;
  std::vector<std::pair<int, int>> pairs;
};

PairSpace build_pair_space(const FinSpace& a, const FinSpace& b,
                           const std::vector<std::pair<int, int>>& raw_pairs) {
  std::vector<std::string> names;
  names.reserve(raw_pairs.size());
  for (const auto& [i, j] : raw_pairs) names.push_back(pair_name(a.name(i), b.name(j)));
  const int k = static_cast<int>(raw_pairs.size());
  std::vector<char> rel(k * k, 0);
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v)
      rel[u * k + v] = a.leq(raw_pairs[u].first, raw_pairs[v].first) &&
                       b.leq(raw_pairs[u].second, raw_pairs[v].second);
  PairSpace out;
  out.space = FinSpace::from_matrix(names, rel);
  out.pairs.resize(k);
  out.proj1 = CMap{out.space, a, std::vector<int>(k)};
  out.proj2 = CMap{out.space, b, std::vector<int>(k)};
  for (int u = 0; u < k; ++u) {
    int idx = out.space.index(pair_name(a.name(raw_pairs[u].first), b.name(raw_pairs[u].second)));
    out.pairs[idx] = raw_pairs[u];
    out.proj1.map[idx] = raw_pairs[u].first;
    out.proj2.map[idx] = raw_pairs[u].second;
  }
  return out;
}

int find_pair(const std::vector<std::pair<int, int>>& pairs, int x, int y) {
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i)
    if (pairs[i].first == x && pairs[i].second == y) return i;
  return -1;
}

}  // namespace

int FiberedProduct::pair_index(int x, int y) const { return find_pair(pairs, x, y); }
int ProductSpace::pair_index(int x, int y) const { return find_pair(pairs, x, y); }

FiberedProduct fibered_product(const CMap& f, const CMap& g) {
  if (!(f.cod == g.cod))
    throw error(errc::validation_error, "fibered_product: codomains differ");
  std::vector<std::pair<int, int>> raw;
  for (int x = 0; x < f.dom.size(); ++x)
    for (int y = 0; y < g.dom.size(); ++y)
      if (f.map[x] == g.map[y]) raw.emplace_back(x, y);
  PairSpace ps = build_pair_space(f.dom, g.dom, raw);
  return FiberedProduct{std::move(ps.space), std::move(ps.proj1), std::move(ps.proj2),
                        std::move(ps.pairs)};
}

ProductSpace product(const FinSpace& a, const FinSpace& b) {
  std::vector<std::pair<int, int>> raw;
  for (int x = 0; x < a.size(); ++x)
    for (int y = 0; y < b.size(); ++y) raw.emplace_back(x, y);
  PairSpace ps = build_pair_space(a, b, raw);
  return ProductSpace{std::move(ps.space), std::move(ps.proj1), std::move(ps.proj2),
                      std::move(ps.pairs)};
}

Quotient quotient(const FinSpace& x, const std::vector<char>& rel) {
  const int n = x.size();
  for (int i = 0; i < n; ++i) {
    if (!rel[i * n + i]) throw error(errc::relation_not_equivalence, "missing reflexivity");
    for (int j = 0; j < n; ++j) {
      if (rel[i * n + j] != rel[j * n + i])
        throw error(errc::relation_not_equivalence, "missing symmetry");
      if (!rel[i * n + j]) continue;
      for (int k = 0; k < n; ++k)
        if (rel[j * n + k] && !rel[i * n + k])
          throw error(errc::relation_not_equivalence, "missing transitivity");
    }
  }
  std::vector<int> cls(n, -1);
  int nc = 0;
  for (int i = 0; i < n; ++i) {
    if (cls[i] >= 0) continue;
    for (int j = i; j < n; ++j)
      if (rel[i * n + j]) cls[j] = nc;
    ++nc;
  }
  return quotient_by_classes(x, cls);
}

Quotient quotient_by_classes(const FinSpace& x, const std::vector<int>& class_ids) {
  const int n = x.size();
  int nc = 0;
  for (int c : class_ids) nc = std::max(nc, c + 1);
  std::vector<std::vector<std::string>> members(nc);
  for (int i = 0; i < n; ++i) members[class_ids[i]].push_back(x.name(i));
  std::vector<std::string> names(nc);
  for (int c = 0; c < nc; ++c) {
    std::sort(members[c].begin(), members[c].end());
    std::string nm = "{";
    for (size_t k = 0; k < members[c].size(); ++k) {
      if (k) nm += "|";
      nm += members[c][k];
    }
    nm += "}";
    names[c] = nm;
  }
  std::vector<char> rel(nc * nc, 0);
  for (int c = 0; c < nc; ++c) rel[c * nc + c] = 1;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (x.leq(i, j)) rel[class_ids[i] * nc + class_ids[j]] = 1;
  // transitive closure of the induced relation
  for (int k = 0; k < nc; ++k)
    for (int i = 0; i < nc; ++i) {
      if (!rel[i * nc + k]) continue;
      for (int j = 0; j < nc; ++j)
        if (rel[k * nc + j]) rel[i * nc + j] = 1;
    }
  Quotient q;
  q.space = FinSpace::from_matrix(names, rel);
  q.class_of.resize(n);
  q.proj = CMap{x, q.space, std::vector<int>(n)};
  for (int i = 0; i < n; ++i) {
    int c = q.space.index(names[class_ids[i]]);
    q.class_of[i] = c;
    q.proj.map[i] = c;
  }
  return q;
}

std::pair<FinSpace, CMap> subspace(const Subset& a) {
  auto idx = a.indices();
  const int k = static_cast<int>(idx.size());
  std::vector<std::string> names;
  names.reserve(k);
  for (int i : idx) names.push_back(a.space.name(i));
  std::vector<char> rel(k * k, 0);
  for (int u = 0; u < k; ++u)
    for (int v = 0; v < k; ++v) rel[u * k + v] = a.space.leq(idx[u], idx[v]);
  FinSpace sub = FinSpace::from_matrix(names, rel);
  CMap incl{sub, a.space, std::vector<int>(k)};
  for (int u = 0; u < k; ++u) incl.map[u] = a.space.index(sub.name(u));
  return {sub, incl};
}

bool is_embedding(const CMap& f) {
  if (!is_continuous(f)) return false;
  const int n = f.dom.size();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i != j && f.map[i] == f.map[j]) return false;
      if (f.cod.leq(f.map[i], f.map[j]) && !f.dom.leq(i, j)) return false;
    }
  return true;
}

bool is_homeo_onto_image(const CMap& f) { return is_embedding(f); }

bool is_homeomorphism(const CMap& f) {
  return f.dom.size() == f.cod.size() && is_embedding(f);
}

}  // namespace finstack
