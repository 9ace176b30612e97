#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsc/exact_arith.hpp"

namespace hsc::zharm {

using arith::Int;

/// Residues m_i with the progressions m_i + a_i Z pairwise disjoint.
struct ResidueWitness {
  std::vector<Int> moduli;
  std::vector<Int> residues;

  /// Self-check: 0 <= m_i < a_i and m_i != m_j (mod gcd(a_i, a_j)) for all pairs.
  bool verify() const;
  std::string str() const;  // "0,1,3"
};

enum class Reason { CoprimePair, P2Pigeonhole, P3Pigeonhole, P244Pigeonhole, P5Pigeonhole, Exhausted };
std::string_view to_string(Reason r);

struct ZVerdict {
  bool harmonic = false;
  std::optional<ResidueWitness> witness;  // set iff harmonic
  std::optional<Reason> reason;           // set iff not harmonic
};

/// (m + aZ) and (k + bZ) share no integer, i.e. m != k (mod gcd(a, b)).
bool progressions_disjoint(Int a, Int m, Int b, Int k);

struct ZOptions {
  std::size_t max_length = 8;
  /// Try the coprime-pair and pigeonhole shapes before the residue search.
  bool use_shortcuts = true;
};

/// Sound and complete within max_length. Entries must be >= 2.
/// The witness is the lexicographically least residue vector with m_1 = 0.
ZVerdict is_z_harmonic(std::span<const Int> moduli, const ZOptions& opts = {});

/// Residue search only, no shortcuts.
std::optional<ResidueWitness> find_witness(std::span<const Int> moduli, std::size_t max_length = 8);

enum class SmallTag { Harmonic, CoprimePair, P2Shape, P244Shape, P3Shape };
std::string_view to_string(SmallTag t);

struct SmallVerdict {
  SmallTag tag = SmallTag::Harmonic;
  std::optional<ResidueWitness> witness;
  /// The sub-tuple positions carrying the obstruction (empty when harmonic).
  std::vector<std::size_t> positions;
  bool harmonic() const { return tag == SmallTag::Harmonic; }
};

/// Classification of tuples of length <= 4: harmonic, or one of the four
/// obstruction shapes on a sub-tuple. Throws UsageError above length 4.
SmallVerdict classify_small(std::span<const Int> moduli);

/// Batch classification, results in input order.
std::vector<ZVerdict> classify_batch_serial(std::span<const std::vector<Int>> tuples, const ZOptions& opts = {});
std::vector<ZVerdict> classify_batch(std::span<const std::vector<Int>> tuples, int jobs, const ZOptions& opts = {});

/// Every tuple with entries in [lo, hi] and length in [min_len, max_len],
/// grouped by length, each length in lexicographic order.
std::vector<std::vector<Int>> tuple_grid(Int lo, Int hi, std::size_t min_len, std::size_t max_len);

}  // namespace hsc::zharm
