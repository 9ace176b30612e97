#include "hsc/egyptian.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>

#include "hsc/error.hpp"

namespace hsc::egypt {

IndexTuple::IndexTuple(std::vector<Int> entries) : entries_(std::move(entries)) {
  if (entries_.empty()) throw DomainError("index tuple must be nonempty");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (entries_[i] < 2) throw DomainError("index tuple entries must be >= 2");
    if (i > 0 && entries_[i] <= entries_[i - 1]) throw DomainError("index tuple must be strictly increasing");
  }
}

std::string IndexTuple::str() const {
  std::string out;
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(entries_[i]);
  }
  return out;
}

GcdClass gcd_class(std::span<const Int> entries) {
  Int g = 0;
  for (Int e : entries) g = std::gcd(g, e);
  const bool two = g % 2 == 0;
  const bool three = g % 3 == 0;
  if (two && three) return GcdClass::Both;
  if (two) return GcdClass::Two;
  if (three) return GcdClass::Three;
  return GcdClass::None;
}

std::string_view to_string(GcdClass c) {
  switch (c) {
    case GcdClass::Two: return "2";
    case GcdClass::Three: return "3";
    case GcdClass::Both: return "both";
    case GcdClass::None: return "none";
  }
  return "?";
}

std::string_view to_string(PatternId p) {
  switch (p) {
    case PatternId::P2: return "P2";
    case PatternId::P3: return "P3";
    case PatternId::P244: return "P244";
    case PatternId::P5: return "P5";
  }
  return "?";
}

PatternId parse_pattern(std::string_view name) {
  for (PatternId p : kAllPatterns) {
    if (to_string(p) == name) return p;
  }
  throw UsageError("unknown pattern id '" + std::string(name) + "'");
}

namespace {

// One role class of a pattern: `count` entries of the form multiplier * r.
struct RoleClass {
  Int multiplier;
  int count;
  bool r_odd;       // r must be odd
  bool literal_one;  // r must equal 1 (the literal entry 3 of P5)
};

std::vector<RoleClass> roles_of(PatternId p) {
  switch (p) {
    case PatternId::P2: return {{2, 3, false, false}};
    case PatternId::P3: return {{3, 4, false, false}};
    case PatternId::P244: return {{2, 1, true, false}, {4, 3, false, false}};
    case PatternId::P5: return {{3, 1, false, true}, {3, 1, true, false}, {6, 3, false, false}};
  }
  return {};
}

std::optional<Int> role_r(const RoleClass& rc, Int entry) {
  if (entry <= 0 || entry % rc.multiplier != 0) return std::nullopt;
  const Int r = entry / rc.multiplier;
  if (rc.r_odd && r % 2 == 0) return std::nullopt;
  if (rc.literal_one && r != 1) return std::nullopt;
  return r;
}

class Matcher {
 public:
  Matcher(std::span<const Int> entries, PatternId p)
      : entries_(entries), pattern_(p), roles_(roles_of(p)), used_(roles_.size(), 0) {
    for (const auto& rc : roles_) need_ += rc.count;
  }

  std::optional<PatternMatch> run() {
    if (dfs(0)) return build();
    return std::nullopt;
  }

 private:
  bool dfs(std::size_t start) {
    if (static_cast<int>(chosen_.size()) == need_) return true;
    const std::size_t missing = need_ - chosen_.size();
    for (std::size_t p = start; p + missing <= entries_.size(); ++p) {
      for (std::size_t c = 0; c < roles_.size(); ++c) {
        if (used_[c] == roles_[c].count) continue;
        auto r = role_r(roles_[c], entries_[p]);
        if (!r) continue;
        bool coprime = true;
        for (const auto& ch : chosen_) {
          if (std::gcd(ch.r, *r) != 1) {
            coprime = false;
            break;
          }
        }
        if (!coprime) continue;
        ++used_[c];
        chosen_.push_back({p, c, *r});
        if (dfs(p + 1)) return true;
        chosen_.pop_back();
        --used_[c];
      }
    }
    return false;
  }

  PatternMatch build() const {
    auto order = chosen_;
    std::stable_sort(order.begin(), order.end(),
                     [](const Pick& a, const Pick& b) { return a.role_class < b.role_class; });
    PatternMatch m{pattern_, {}, {}};
    for (const auto& pk : order) {
      m.positions.push_back(pk.position);
      m.r_values.push_back(pk.r);
    }
    return m;
  }

  struct Pick {
    std::size_t position;
    std::size_t role_class;
    Int r;
  };

  std::span<const Int> entries_;
  PatternId pattern_;
  std::vector<RoleClass> roles_;
  std::vector<int> used_;
  std::vector<Pick> chosen_;
  int need_ = 0;
};

}  // namespace

std::optional<PatternMatch> match_pattern(std::span<const Int> entries, PatternId pattern) {
  if (entries.empty()) throw DomainError("match_pattern requires a nonempty tuple");
  return Matcher(entries, pattern).run();
}

std::vector<Int> PatternMatch::matched(std::span<const Int> entries) const {
  std::vector<Int> out;
  for (auto p : positions) out.push_back(entries[p]);
  return out;
}

bool PatternMatch::verify(std::span<const Int> entries) const {
  const auto roles = roles_of(pattern);
  std::size_t total = 0;
  for (const auto& rc : roles) total += static_cast<std::size_t>(rc.count);
  if (positions.size() != total || r_values.size() != total) return false;

  std::vector<std::size_t> sorted = positions;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end()) return false;
  if (!sorted.empty() && sorted.back() >= entries.size()) return false;

  std::size_t k = 0;
  for (const auto& rc : roles) {
    for (int i = 0; i < rc.count; ++i, ++k) {
      const Int r = r_values[k];
      if (r < 1) return false;
      if (rc.multiplier * r != entries[positions[k]]) return false;
      if (rc.r_odd && r % 2 == 0) return false;
      if (rc.literal_one && r != 1) return false;
    }
  }
  for (std::size_t i = 0; i < total; ++i) {
    for (std::size_t j = i + 1; j < total; ++j) {
      if (std::gcd(r_values[i], r_values[j]) != 1) return false;
    }
  }
  return true;
}

// --- enumeration --------------------------------------------------------------

namespace {

// Depth-first search with every reciprocal scaled by n: 1/d == (n/d)/n, so
// the target is an integer sum of weights equal to n.
class CandidateSearch {
 public:
  CandidateSearch(Int n, std::vector<Int> divs) : n_(n), divs_(std::move(divs)) {
    weight_.resize(divs_.size());
    suffix_.assign(divs_.size() + 1, 0);
    for (std::size_t i = 0; i < divs_.size(); ++i) weight_[i] = n_ / divs_[i];
    for (std::size_t i = divs_.size(); i-- > 0;) suffix_[i] = suffix_[i + 1] + weight_[i];
  }

  std::vector<IndexTuple> run() {
    dfs(0, n_);
    return std::move(out_);
  }

 private:
  void dfs(std::size_t start, Int remaining) {
    if (remaining == 0) {
      std::vector<Int> t;
      t.reserve(chosen_.size());
      for (auto i : chosen_) t.push_back(divs_[i]);
      out_.emplace_back(std::move(t));
      return;
    }
    for (std::size_t j = start; j < divs_.size(); ++j) {
      if (suffix_[j] < remaining) return;
      if (weight_[j] > remaining) continue;
      bool ok = true;
      for (auto c : chosen_) {
        if (std::gcd(divs_[c], divs_[j]) == 1) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      if (chosen_.size() == kMaxTupleLength) {
        throw ResourceError("candidate tuple for order " + std::to_string(n_) + " exceeds length cap " +
                            std::to_string(kMaxTupleLength));
      }
      chosen_.push_back(j);
      dfs(j + 1, remaining - weight_[j]);
      chosen_.pop_back();
    }
  }

  Int n_;
  std::vector<Int> divs_;
  std::vector<Int> weight_;
  std::vector<Int> suffix_;
  std::vector<std::size_t> chosen_;
  std::vector<IndexTuple> out_;
};

}  // namespace

std::vector<IndexTuple> enumerate_candidates(Int n, Int min_index) {
  if (n < 2 || n > 1'000'000) throw DomainError("enumerate_candidates requires 2 <= N <= 10^6");
  if (min_index < 2) throw DomainError("enumerate_candidates requires min_index >= 2");
  std::vector<Int> divs;
  for (Int d : arith::divisors(n)) {
    if (d >= min_index) divs.push_back(d);
  }
  return CandidateSearch(n, std::move(divs)).run();
}

bool prime_power_forced(Int n) {
  if (n < 2 || n > 1'000'000) throw DomainError("prime_power_forced requires 2 <= N <= 10^6");
  return arith::d_composite(n) < arith::Rational(1);
}

GcdClass OrderReport::gcd_class() const {
  if (has_gcd2 && has_gcd3) return GcdClass::Both;
  if (has_gcd2) return GcdClass::Two;
  if (has_gcd3) return GcdClass::Three;
  return GcdClass::None;
}

OrderReport order_report(Int n) {
  OrderReport rep;
  rep.order = n;
  rep.squarefree_pyramidal = arith::factorize(n).squarefree();
  auto all = enumerate_candidates(n);
  rep.raw_candidates = all.size();
  for (auto& t : all) {
    const GcdClass g = gcd_class(t);
    if (g == GcdClass::None) continue;
    if (g == GcdClass::Two || g == GcdClass::Both) rep.has_gcd2 = true;
    if (g == GcdClass::Three || g == GcdClass::Both) rep.has_gcd3 = true;
    Candidate c{std::move(t), g, std::nullopt};
    for (PatternId p : kAllPatterns) {
      if (auto m = match_pattern(c.tuple, p)) {
        c.eliminated_by = std::move(m);
        break;
      }
    }
    if (!c.eliminated_by) rep.survives = true;
    rep.stage1_candidates.push_back(std::move(c));
  }
  return rep;
}

namespace {
void check_max_order(Int max_order) {
  if (max_order < 3 || max_order > 10'000) throw DomainError("theorem-A report requires 3 <= max_order <= 10^4");
}
}  // namespace

std::vector<OrderReport> theorem_a_report_serial(Int max_order) {
  check_max_order(max_order);
  std::vector<OrderReport> out;
  out.reserve(static_cast<std::size_t>(max_order - 2));
  for (Int n = 2; n < max_order; ++n) out.push_back(order_report(n));
  return out;
}

std::vector<OrderReport> theorem_a_report(Int max_order, int jobs) {
  check_max_order(max_order);
  if (jobs <= 1) return theorem_a_report_serial(max_order);
  const Int count = max_order - 2;
  std::vector<OrderReport> out(static_cast<std::size_t>(count));
  // Exceptions must not escape an OpenMP region; collect the first one.
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8) num_threads(jobs)
  for (Int i = 0; i < count; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = order_report(i + 2);
    } catch (...) {
#pragma omp critical(hsc_theorem_a_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

StageSummary summarize(std::span<const OrderReport> reports) {
  StageSummary s;
  for (const auto& r : reports) {
    if (r.has_gcd2) s.gcd2.push_back(r.order);
    if (r.has_gcd3) s.gcd3.push_back(r.order);
    if (r.stage1_survivor()) s.stage1.push_back(r.order);
    if (r.survives) s.survivors.push_back(r.order);
  }
  return s;
}

}  // namespace hsc::egypt
