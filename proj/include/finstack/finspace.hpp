// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "finstack/base.hpp"

namespace finstack {

/// A finite Alexandrov space: a finite set of named points with a
/// specialization preorder.  `x <= y` reads "x specializes to y"; open sets
/// are up-sets and the closure of a set is its down-set.
///
/// Points are stored sorted by name, so structurally equal spaces compare
/// equal regardless of construction order.
class FinSpace {
public:
  FinSpace() = default;

  /// Build from points and explicit leq pairs (reflexivity is implied).
  /// Throws validation_error if the pairs are not transitive or mention
  /// unknown points.
  FinSpace(std::vector<std::string> points,
           const std::vector<std::pair<std::string, std::string>>& leq_pairs);

  /// Build from points and a relation matrix given in the order of `points`
  /// as passed (before sorting). The matrix must be reflexive and transitive.
  static FinSpace from_matrix(std::vector<std::string> points,
                              const std::vector<char>& rel);

  int size() const { return static_cast<int>(pts_.size()); }
  const std::string& name(int i) const { return pts_[i]; }
  const std::vector<std::string>& points() const { return pts_; }
  /// Index of a named point, or -1.
  int index(const std::string& p) const;

  bool leq(int a, int b) const { return rel_[a * size() + b] != 0; }

  std::vector<int> up_set(int p) const;
  std::vector<int> down_set(int p) const;

  /// Non-reflexive leq pairs by name, sorted. Used for serialization.
  std::vector<std::pair<std::string, std::string>> strict_pairs() const;

  bool operator==(const FinSpace&) const = default;

private:
  std::vector<std::string> pts_;
  std::vector<char> rel_;  // rel_[i*n+j] != 0  iff  i <= j
};

/// A map between finite spaces, total on points. Continuity (= monotonicity)
/// is checked by `is_continuous`, not by the constructor, so that broken
/// fixtures can be represented for negative tests.
struct CMap {
  FinSpace dom;
  FinSpace cod;
  std::vector<int> map;  // dom point index -> cod point index

  int operator()(int i) const { return map[i]; }

  static CMap identity(const FinSpace& s);
  static CMap by_names(const FinSpace& dom, const FinSpace& cod,
                       const std::vector<std::pair<std::string, std::string>>& pairs);
  static CMap constant(const FinSpace& dom, const FinSpace& cod, const std::string& to);

  bool operator==(const CMap&) const = default;
};

CMap compose(const CMap& f, const CMap& g);  // g after f

/// A subset of a space's points, kept as a membership mask.
struct Subset {
  FinSpace space;
  std::vector<char> mask;

  static Subset of(const FinSpace& s, const std::vector<std::string>& members);
  static Subset full(const FinSpace& s);
  static Subset empty(const FinSpace& s);

  bool contains(int i) const { return mask[i] != 0; }
  void add(int i) { mask[i] = 1; }
  int count() const;
  std::vector<int> indices() const;
  std::vector<std::string> names() const;

  bool operator==(const Subset&) const = default;
};

bool is_continuous(const CMap& f);

/// Smallest closed (down-closed) set containing A.
Subset closure(const Subset& a);

bool is_closed_set(const Subset& a);
bool is_open_set(const Subset& a);

/// True iff closure(A) is the whole space.
bool is_dense(const Subset& a);

/// Density of A within the subspace on `within`.
bool is_dense_in(const Subset& a, const Subset& within);

/// Finite analog of a surjective submersion: f is onto and every
/// specialization above f(x) lifts above x, i.e. f(up(x)) = up(f(x)).
bool is_lifting_surjection(const CMap& f);

Subset preimage(const CMap& f, const Subset& b);
Subset image(const CMap& f, const Subset& a);

struct FiberedProduct {
  FinSpace space;        // pairs (x, y) with f(x) = g(y), componentwise order
  CMap proj1;            // onto f.dom
  CMap proj2;            // onto g.dom
  std::vector<std::pair<int, int>> pairs;  // pair indices, aligned with space points
  int pair_index(int x, int y) const;      // -1 if absent
};

/// Requires f.cod == g.cod.
FiberedProduct fibered_product(const CMap& f, const CMap& g);

struct Quotient {
  FinSpace space;  // classes, order = transitive closure of the induced relation
  CMap proj;
  std::vector<int> class_of;  // original point -> class index
};

/// Quotient by an equivalence relation given as a matrix on X's points.
/// Throws relation_not_equivalence if rel is not an equivalence.
Quotient quotient(const FinSpace& x, const std::vector<char>& rel);

/// Quotient by the partition the classes vector describes (point -> class id).
Quotient quotient_by_classes(const FinSpace& x, const std::vector<int>& class_ids);

/// The subspace on A with the induced order, plus the inclusion map.
std::pair<FinSpace, CMap> subspace(const Subset& a);

/// f injective and order-reflecting; for finite preorders this is the same
/// as being a homeomorphism onto the image subspace.
bool is_embedding(const CMap& f);
bool is_homeo_onto_image(const CMap& f);

/// Bijective embedding whose inverse is continuous, i.e. an order isomorphism.
bool is_homeomorphism(const CMap& f);

/// Direct product with componentwise order; points named "(a,b)".
struct ProductSpace {
  FinSpace space;
  CMap proj1;
  CMap proj2;
  std::vector<std::pair<int, int>> pairs;
  int pair_index(int x, int y) const;
};
ProductSpace product(const FinSpace& a, const FinSpace& b);

std::string pair_name(const std::string& a, const std::string& b);

}  // namespace finstack
