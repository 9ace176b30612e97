#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "hsc/element_set.hpp"
#include "hsc/exact_arith.hpp"

namespace hsc::group {

using arith::Int;

inline constexpr std::size_t kDefaultOrderCap = 360;
inline constexpr std::size_t kMaxDegree = 255;

/// Bijection on {0, ..., degree-1}; images[i] is the image of point i.
class Permutation {
 public:
  Permutation() = default;
  /// Throws DomainError unless `images` is a bijection.
  explicit Permutation(std::vector<std::uint8_t> images);
  static Permutation identity(std::size_t degree);
  /// Product of disjoint or overlapping cycles, e.g. {{0, 1, 2}, {3, 4}}.
  static Permutation from_cycles(std::size_t degree, const std::vector<std::vector<int>>& cycles);

  std::size_t degree() const { return images_.size(); }
  int operator()(int point) const { return images_[static_cast<std::size_t>(point)]; }
  const std::vector<std::uint8_t>& images() const { return images_; }

  /// (a * b)(x) = a(b(x)): b acts first.
  Permutation operator*(const Permutation& b) const;
  Permutation inverse() const;
  bool is_identity() const;

  auto operator<=>(const Permutation&) const = default;

  std::string str() const;  // space-separated images

 private:
  std::vector<std::uint8_t> images_;
};

/// Finite permutation group with elements in canonical (lexicographic image)
/// order; element id = position. The identity is always id 0.
class Group {
 public:
  /// Breadth-first closure of the generators. Throws ResourceError when the
  /// closure exceeds `order_cap`, DomainError on degree mismatches.
  static Group from_generators(std::size_t degree, std::span<const Permutation> gens, std::string name,
                               std::size_t order_cap = kDefaultOrderCap);

  const std::string& name() const { return name_; }
  std::size_t degree() const { return degree_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Permutation>& generators() const { return gens_; }

  const Permutation& element(int id) const { return elements_[static_cast<std::size_t>(id)]; }
  int identity() const { return 0; }
  int mul(int a, int b) const { return table_[static_cast<std::size_t>(a) * elements_.size() + static_cast<std::size_t>(b)]; }
  int inv(int a) const { return inverse_[static_cast<std::size_t>(a)]; }
  /// x * a * x^-1
  int conj(int x, int a) const { return mul(mul(x, a), inv(x)); }
  /// Id of a permutation, or -1 if it is not in the group.
  int find(const Permutation& p) const;
  std::vector<int> generator_ids() const;

  ElementSet all() const;
  ElementSet translate_left(int g, const ElementSet& s) const;  // gS
  ElementSet product(const ElementSet& a, const ElementSet& b) const;  // AB

  /// Closure, identity, inverse and associativity (on generators) checks.
  bool verify_axioms() const;

 private:
  Group() = default;

  std::string name_;
  std::size_t degree_ = 0;
  std::vector<Permutation> gens_;
  std::vector<Permutation> elements_;
  std::vector<int> table_;
  std::vector<int> inverse_;
};

class Subgroup {
 public:
  /// Subgroup generated by the given element ids.
  static Subgroup generated_by(const Group& g, std::span<const int> gens);
  /// Validates closure; throws DomainError for a non-subgroup.
  static Subgroup from_members(const Group& g, const ElementSet& members);
  static Subgroup trivial(const Group& g);
  static Subgroup whole(const Group& g);

  const Group& parent() const { return *parent_; }
  const ElementSet& members() const { return members_; }
  std::vector<int> ids() const { return members_.ids(); }
  std::size_t order() const { return order_; }
  std::size_t index() const { return parent_->order() / order_; }
  bool contains(int id) const { return members_.contains(id); }

  bool operator==(const Subgroup& o) const { return parent_ == o.parent_ && members_ == o.members_; }

 private:
  Subgroup(const Group& g, ElementSet members);

  const Group* parent_ = nullptr;
  ElementSet members_;
  std::size_t order_ = 0;
};

/// Throws UsageError unless every subgroup lives in `g`.
void require_same_parent(const Group& g, std::initializer_list<const Subgroup*> subs);

Subgroup intersection(const Subgroup& u, const Subgroup& v);
Subgroup conjugate(const Subgroup& u, int x);  // x U x^-1
bool is_subgroup(const Group& g, const ElementSet& s);
bool is_normal(const Subgroup& u);

/// All subgroups sorted by (order, member-id sequence); cyclic extension.
std::vector<Subgroup> all_subgroups(const Group& g);

struct Coset {
  int rep;  // least element id in the coset
  ElementSet members;
};

/// Left cosets gU ordered by representative.
std::vector<Coset> left_cosets(const Group& g, const Subgroup& u);
/// Double cosets UxV ordered by representative. Asserts the size divisibility
/// |UxV| divisible by |G| lcm([G:U],[G:V]) / ([G:U][G:V]).
std::vector<Coset> double_cosets(const Group& g, const Subgroup& u, const Subgroup& v);

/// UV = {uv}.
ElementSet product_set(const Group& g, const Subgroup& u, const Subgroup& v);

struct PairStats {
  Int product_size = 0;        // |UV|
  Int intersection_index = 0;  // [G : U n V]
  Int alpha = 0;               // [G : U n V] / lcm([G:U], [G:V])
};

/// Explicit set product, cross-checked against |G|[G:UnV]/([G:U][G:V]).
PairStats product_stats(const Group& g, const Subgroup& u, const Subgroup& v);

/// All subgroups of a group with lazily cached pairwise data. Thread safe.
class SubgroupLattice {
 public:
  explicit SubgroupLattice(const Group& g);

  const Group& group() const { return *group_; }
  std::size_t size() const { return subs_.size(); }
  const Subgroup& operator[](std::size_t i) const { return subs_[i]; }
  const std::vector<Subgroup>& subgroups() const { return subs_; }

  /// Id of a subgroup given by members, or -1.
  int find(const ElementSet& members) const;
  /// Least id in the conjugacy class of subgroup i.
  int conjugacy_rep(std::size_t i) const { return conj_rep_[i]; }
  /// Ids of subgroups with the given index, ascending.
  std::vector<int> with_index(Int index) const;

  /// U_i U_j, cached.
  const ElementSet& product(std::size_t i, std::size_t j) const;
  const PairStats& stats(std::size_t i, std::size_t j) const;
  /// Id of U_i n U_j.
  int meet(std::size_t i, std::size_t j) const;

 private:
  struct PairCache {
    std::once_flag once;
    ElementSet product;
    PairStats stats;
    int meet = -1;
  };
  PairCache& pair(std::size_t i, std::size_t j) const;

  const Group* group_;
  std::vector<Subgroup> subs_;
  std::unordered_map<ElementSet, int, ElementSetHash> lookup_;
  std::vector<int> conj_rep_;
  std::unique_ptr<PairCache[]> cache_;
};

}  // namespace hsc::group
