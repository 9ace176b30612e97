#include "hsc/zharm.hpp"

#include <omp.h>

#include <algorithm>
#include <numeric>

#include "hsc/egyptian.hpp"
#include "hsc/error.hpp"

namespace hsc::zharm {

namespace {

Int mod(Int x, Int m) {
  Int r = x % m;
  return r < 0 ? r + m : r;
}

void check_entries(std::span<const Int> moduli, std::size_t max_length) {
  if (moduli.empty()) throw DomainError("Z-harmonic check requires a nonempty tuple");
  if (moduli.size() > max_length) {
    throw ResourceError("tuple length " + std::to_string(moduli.size()) + " exceeds cap " +
                        std::to_string(max_length));
  }
  for (Int a : moduli) {
    if (a < 2) throw DomainError("Z-harmonic entries must be >= 2, got " + std::to_string(a));
  }
}

// Positional backtracking with forward checking. Residue i only matters modulo
// reduced_[i] = lcm_j gcd(a_i, a_j), and the least valid value always lies
// below it, so scanning [0, reduced_[i]) in order keeps the result lex-least.
class WitnessSearch {
 public:
  explicit WitnessSearch(std::span<const Int> a) : a_(a.begin(), a.end()), n_(a.size()) {
    g_.assign(n_ * n_, 1);
    reduced_.assign(n_, 1);
    for (std::size_t i = 0; i < n_; ++i) {
      for (std::size_t j = 0; j < n_; ++j) {
        if (i == j) continue;
        g_[i * n_ + j] = std::gcd(a_[i], a_[j]);
        reduced_[i] = std::lcm(reduced_[i], g_[i * n_ + j]);
      }
    }
    forbidden_.resize(n_);
    for (std::size_t i = 0; i < n_; ++i) forbidden_[i].assign(static_cast<std::size_t>(reduced_[i]), 0);
    m_.assign(n_, 0);
  }

  std::optional<ResidueWitness> run() {
    if (!assign(0)) return std::nullopt;
    return ResidueWitness{a_, m_};
  }

 private:
  bool assign(std::size_t i) {
    if (i == n_) return true;
    // m_1 = 0 by translation invariance.
    const Int limit = (i == 0) ? 1 : reduced_[i];
    for (Int v = 0; v < limit; ++v) {
      if (forbidden_[i][static_cast<std::size_t>(v)] != 0) continue;
      m_[i] = v;
      if (forward(i, v, +1)) {
        if (assign(i + 1)) return true;
      }
      forward(i, v, -1);
    }
    return false;
  }

  // Adds (delta = +1) or removes (-1) the exclusions caused by m_i = v on
  // all later variables. Returns false if some later domain became empty.
  bool forward(std::size_t i, Int v, int delta) {
    bool alive = true;
    for (std::size_t j = i + 1; j < n_; ++j) {
      const Int g = g_[i * n_ + j];
      auto& dom = forbidden_[j];
      const Int target = mod(v, g);
      for (Int w = target; w < reduced_[j]; w += g) dom[static_cast<std::size_t>(w)] += delta;
      if (delta > 0 && alive) {
        alive = std::any_of(dom.begin(), dom.end(), [](int c) { return c == 0; });
      }
    }
    return alive;
  }

  std::vector<Int> a_;
  std::size_t n_;
  std::vector<Int> g_;
  std::vector<Int> reduced_;
  std::vector<std::vector<int>> forbidden_;
  std::vector<Int> m_;
};

bool has_coprime_pair(std::span<const Int> a, std::vector<std::size_t>* where = nullptr) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = i + 1; j < a.size(); ++j) {
      if (std::gcd(a[i], a[j]) == 1) {
        if (where) *where = {i, j};
        return true;
      }
    }
  }
  return false;
}

}  // namespace

bool ResidueWitness::verify() const {
  if (moduli.size() != residues.size()) return false;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    if (moduli[i] < 2 || residues[i] < 0 || residues[i] >= moduli[i]) return false;
    for (std::size_t j = 0; j < i; ++j) {
      if (!progressions_disjoint(moduli[i], residues[i], moduli[j], residues[j])) return false;
    }
  }
  return true;
}

std::string ResidueWitness::str() const {
  std::string out;
  for (std::size_t i = 0; i < residues.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(residues[i]);
  }
  return out;
}

std::string_view to_string(Reason r) {
  switch (r) {
    case Reason::CoprimePair: return "COPRIME_PAIR";
    case Reason::P2Pigeonhole: return "P2_PIGEONHOLE";
    case Reason::P3Pigeonhole: return "P3_PIGEONHOLE";
    case Reason::P244Pigeonhole: return "P244_PIGEONHOLE";
    case Reason::P5Pigeonhole: return "P5_PIGEONHOLE";
    case Reason::Exhausted: return "EXHAUSTED";
  }
  return "?";
}

std::string_view to_string(SmallTag t) {
  switch (t) {
    case SmallTag::Harmonic: return "HARMONIC";
    case SmallTag::CoprimePair: return "COPRIME_PAIR";
    case SmallTag::P2Shape: return "P2_SHAPE";
    case SmallTag::P244Shape: return "P244_SHAPE";
    case SmallTag::P3Shape: return "P3_SHAPE";
  }
  return "?";
}

bool progressions_disjoint(Int a, Int m, Int b, Int k) {
  if (a < 2 || b < 2) throw DomainError("progression moduli must be >= 2");
  const Int g = std::gcd(a, b);
  return mod(m, g) != mod(k, g);
}

std::optional<ResidueWitness> find_witness(std::span<const Int> moduli, std::size_t max_length) {
  check_entries(moduli, max_length);
  return WitnessSearch(moduli).run();
}

ZVerdict is_z_harmonic(std::span<const Int> moduli, const ZOptions& opts) {
  check_entries(moduli, opts.max_length);
  ZVerdict v;
  if (opts.use_shortcuts) {
    using egypt::PatternId;
    std::optional<Reason> shortcut;
    if (has_coprime_pair(moduli)) {
      shortcut = Reason::CoprimePair;
    } else if (egypt::match_pattern(moduli, PatternId::P2)) {
      shortcut = Reason::P2Pigeonhole;
    } else if (egypt::match_pattern(moduli, PatternId::P3)) {
      shortcut = Reason::P3Pigeonhole;
    } else if (egypt::match_pattern(moduli, PatternId::P244)) {
      shortcut = Reason::P244Pigeonhole;
    } else if (egypt::match_pattern(moduli, PatternId::P5)) {
      shortcut = Reason::P5Pigeonhole;
    }
    if (shortcut) {
      v.reason = shortcut;
      return v;
    }
  }
  if (auto w = WitnessSearch(moduli).run()) {
    v.harmonic = true;
    v.witness = std::move(w);
  } else {
    v.reason = Reason::Exhausted;
  }
  return v;
}

SmallVerdict classify_small(std::span<const Int> moduli) {
  if (moduli.size() > 4) throw UsageError("classify_small handles tuples of length <= 4");
  check_entries(moduli, 4);
  SmallVerdict out;
  if (auto w = WitnessSearch(moduli).run()) {
    out.witness = std::move(w);
    return out;
  }
  using egypt::PatternId;
  if (has_coprime_pair(moduli, &out.positions)) {
    out.tag = SmallTag::CoprimePair;
  } else if (auto m = egypt::match_pattern(moduli, PatternId::P2)) {
    out.tag = SmallTag::P2Shape;
    out.positions = m->positions;
  } else if (auto m2 = egypt::match_pattern(moduli, PatternId::P244)) {
    out.tag = SmallTag::P244Shape;
    out.positions = m2->positions;
  } else if (auto m3 = egypt::match_pattern(moduli, PatternId::P3)) {
    out.tag = SmallTag::P3Shape;
    out.positions = m3->positions;
  } else {
    throw std::logic_error("non-harmonic tuple of length <= 4 matches no known obstruction shape");
  }
  std::sort(out.positions.begin(), out.positions.end());
  return out;
}

std::vector<ZVerdict> classify_batch_serial(std::span<const std::vector<Int>> tuples, const ZOptions& opts) {
  std::vector<ZVerdict> out;
  out.reserve(tuples.size());
  for (const auto& t : tuples) out.push_back(is_z_harmonic(t, opts));
  return out;
}

std::vector<ZVerdict> classify_batch(std::span<const std::vector<Int>> tuples, int jobs, const ZOptions& opts) {
  if (jobs <= 1) return classify_batch_serial(tuples, opts);
  std::vector<ZVerdict> out(tuples.size());
  std::exception_ptr failure;
  const auto n = static_cast<std::int64_t>(tuples.size());
#pragma omp parallel for schedule(dynamic, 64) num_threads(jobs)
  for (std::int64_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = is_z_harmonic(tuples[static_cast<std::size_t>(i)], opts);
    } catch (...) {
#pragma omp critical(hsc_zharm_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::vector<std::vector<Int>> tuple_grid(Int lo, Int hi, std::size_t min_len, std::size_t max_len) {
  std::vector<std::vector<Int>> out;
  if (lo > hi) return out;
  for (std::size_t len = std::max<std::size_t>(min_len, 1); len <= max_len; ++len) {
    std::vector<Int> t(len, lo);
    while (true) {
      out.push_back(t);
      std::size_t k = len;
      while (k > 0 && t[k - 1] == hi) --k;
      if (k == 0) break;
      ++t[k - 1];
      std::fill(t.begin() + static_cast<std::ptrdiff_t>(k), t.end(), lo);
    }
  }
  return out;
}

}  // namespace hsc::zharm
