#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "hsc/group.hpp"

namespace hsc::gharm {

using arith::Int;
using group::ElementSet;
using group::Group;
using group::Subgroup;
using group::SubgroupLattice;

/// Subgroups U_i with translating elements g_i (reps[0] is the identity when
/// produced by the searches below).
struct HarmonicConfig {
  const Group* group = nullptr;
  std::vector<Subgroup> subgroups;
  std::vector<int> reps;

  std::vector<Int> indices() const;
};

/// g_u U and g_v V are disjoint iff g_v^-1 g_u is not in V U.
bool cosets_disjoint(const Group& g, const Subgroup& u, int gu, const Subgroup& v, int gv);
/// Same question answered by intersecting the two cosets element by element.
bool cosets_disjoint_elementwise(const Group& g, const Subgroup& u, int gu, const Subgroup& v, int gv);

/// True iff the cosets g_i U_i are pairwise disjoint. With cross_check both
/// tests run on every pair and a disagreement throws std::logic_error.
/// Throws UsageError when a subgroup belongs to another group.
bool is_harmonic_config(const HarmonicConfig& cfg, bool cross_check = true);

/// Reps with g_1 = identity making this exact subgroup tuple harmonic.
std::optional<std::vector<int>> find_reps(const SubgroupLattice& lat, std::span<const int> subgroup_ids);

/// Complete search over subgroup tuples with the given indices (first
/// position up to conjugacy) and their coset reps. Throws DomainError when an
/// index does not divide |G|.
std::optional<HarmonicConfig> find_harmonic_tuple(const SubgroupLattice& lat, std::span<const Int> indices);
std::optional<HarmonicConfig> find_harmonic_tuple(const Group& g, std::span<const Int> indices);

struct PartitionCert {
  const Group* group = nullptr;
  std::vector<std::pair<int, Subgroup>> cosets;  // (rep, U) for the coset rep*U
  bool is_partition = false;
  std::vector<Int> index_multiset;  // sorted
  bool has_multiplicity = false;
  bool nontrivial = false;  // no coset is G itself
};

PartitionCert verify_coset_partition(const Group& g, std::span<const std::pair<int, Subgroup>> cosets);

/// Exact cover of G by left cosets of subgroups whose index is in
/// `allowed_indices`. Branches on the least uncovered element; with
/// `distinct_indices` no index may repeat.
std::optional<PartitionCert> search_coset_partition(const SubgroupLattice& lat, std::span<const Int> allowed_indices,
                                                    bool distinct_indices);

enum class Stage { Arithmetic, Search };
std::string_view to_string(Stage s);

struct HscVerdict {
  bool holds = true;
  Stage stage = Stage::Arithmetic;
  std::vector<Int> search_indices;
  std::optional<PartitionCert> counterexample;
};

/// Herzog-Schoenheim check for one group. The arithmetic stage clears the
/// group when no index tuple survives the Egyptian-fraction and pattern
/// filters; otherwise an exact-cover search over multiplicity-free coset
/// partitions decides. `force_search` skips the arithmetic stage and searches
/// over every proper subgroup.
HscVerdict hsc_verify(const Group& g, bool force_search = false, std::size_t order_cap = group::kDefaultOrderCap);

/// Partition => configuration: the partition's cosets, translated so that the
/// first rep is the identity.
HarmonicConfig config_from_partition(const PartitionCert& cert);

/// Conjugate of a configuration by x: subgroups x U_i x^-1, reps x g_i x^-1.
HarmonicConfig conjugate_config(const HarmonicConfig& cfg, int x);

/// For every non-decreasing tuple of divisors (>= 2) of |G| with length <= max_len:
/// a G-harmonic tuple must be Z-harmonic.
struct BridgeReport {
  std::string group;
  std::size_t tuples = 0;
  std::size_t searched = 0;  // not Z-harmonic, so G was searched
  std::vector<std::string> violations;
};
BridgeReport theorem_b_bridge(const SubgroupLattice& lat, std::size_t max_len = 4);
std::vector<BridgeReport> theorem_b_bridge_serial(std::span<const std::shared_ptr<const Group>> groups,
                                                  std::size_t max_len = 4);
std::vector<BridgeReport> theorem_b_bridge_catalog(std::span<const std::shared_ptr<const Group>> groups, int jobs,
                                                   std::size_t max_len = 4);

}  // namespace hsc::gharm
