#pragma once

#include <compare>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "hsc/exact_arith.hpp"

namespace hsc::egypt {

using arith::Int;

/// Strictly increasing list of candidate subgroup indices, each >= 2.
class IndexTuple {
 public:
  explicit IndexTuple(std::vector<Int> entries);

  std::span<const Int> entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  Int operator[](std::size_t i) const { return entries_[i]; }

  auto operator<=>(const IndexTuple&) const = default;

  /// Comma-separated entries, e.g. "4,6,10".
  std::string str() const;

 private:
  std::vector<Int> entries_;
};

enum class GcdClass { Two, Three, Both, None };

GcdClass gcd_class(std::span<const Int> entries);
inline GcdClass gcd_class(const IndexTuple& t) { return gcd_class(t.entries()); }
std::string_view to_string(GcdClass c);

/// The tuple shapes that are never G-harmonic:
///   P2   (2r1, 2r2, 2r3)
///   P3   (3r1, 3r2, 3r3, 3r4)
///   P244 (2r1, 4r2, 4r3, 4r4) with r1 odd
///   P5   (3, 3r2, 6r3, 6r4, 6r5) with r2 odd
/// In every shape the r's are pairwise coprime.
enum class PatternId { P2, P3, P244, P5 };

inline constexpr PatternId kAllPatterns[] = {PatternId::P2, PatternId::P3, PatternId::P244, PatternId::P5};

std::string_view to_string(PatternId p);
/// Throws UsageError for unknown names.
PatternId parse_pattern(std::string_view name);

struct PatternMatch {
  PatternId pattern;
  /// positions[k] is the tuple position playing role k (role 0 is r1).
  std::vector<std::size_t> positions;
  /// r-values in role order. For P5 the literal 3 contributes r1 = 1.
  std::vector<Int> r_values;

  /// Re-substitutes the r-values and re-checks every side condition.
  bool verify(std::span<const Int> entries) const;
  /// Matched entries in role order.
  std::vector<Int> matched(std::span<const Int> entries) const;
};

/// Lexicographically least match by sorted position set. Works on any integer
/// list (repeats allowed), so zharm can use the same shapes.
std::optional<PatternMatch> match_pattern(std::span<const Int> entries, PatternId pattern);
inline std::optional<PatternMatch> match_pattern(const IndexTuple& t, PatternId pattern) {
  return match_pattern(t.entries(), pattern);
}

inline constexpr std::size_t kMaxTupleLength = 64;

/// Strictly increasing tuples of divisors of n, all >= min_index, with
/// reciprocal sum exactly 1 and pairwise gcd > 1, in lexicographic order.
std::vector<IndexTuple> enumerate_candidates(Int n, Int min_index = 3);

/// d_composite(n) < 1: some entry of every candidate must be a prime power.
bool prime_power_forced(Int n);

struct Candidate {
  IndexTuple tuple;
  GcdClass gcd;
  /// First of P2, P3, P244, P5 that matches.
  std::optional<PatternMatch> eliminated_by;
};

struct OrderReport {
  Int order = 0;
  std::size_t raw_candidates = 0;           // before the gcd-2-or-3 filter
  std::vector<Candidate> stage1_candidates;  // after it
  bool has_gcd2 = false;
  bool has_gcd3 = false;
  bool squarefree_pyramidal = false;
  bool survives = false;

  GcdClass gcd_class() const;
  bool stage1_survivor() const { return !stage1_candidates.empty(); }
};

OrderReport order_report(Int n);

/// Reports for every 2 <= N < max_order, ascending.
std::vector<OrderReport> theorem_a_report_serial(Int max_order);
/// OpenMP version; output identical to the serial one for every job count.
std::vector<OrderReport> theorem_a_report(Int max_order, int jobs);

struct StageSummary {
  std::vector<Int> gcd2;
  std::vector<Int> gcd3;
  std::vector<Int> stage1;
  std::vector<Int> survivors;
};
StageSummary summarize(std::span<const OrderReport> reports);

}  // namespace hsc::egypt
