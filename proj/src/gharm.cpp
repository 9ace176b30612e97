#include "hsc/gharm.hpp"

#include <algorithm>
#include <exception>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include <omp.h>

#include "hsc/egyptian.hpp"
#include "hsc/error.hpp"
#include "hsc/zharm.hpp"

namespace hsc::gharm {

std::vector<Int> HarmonicConfig::indices() const {
  std::vector<Int> out;
  out.reserve(subgroups.size());
  for (const auto& u : subgroups) out.push_back(static_cast<Int>(u.index()));
  return out;
}

bool cosets_disjoint(const Group& g, const Subgroup& u, int gu, const Subgroup& v, int gv) {
  auto vu = group::product_set(g, v, u);
  return !vu.contains(g.mul(g.inv(gv), gu));
}

bool cosets_disjoint_elementwise(const Group& g, const Subgroup& u, int gu, const Subgroup& v, int gv) {
  auto a = g.translate_left(gu, u.members());
  auto b = g.translate_left(gv, v.members());
  return !a.intersects(b);
}

bool is_harmonic_config(const HarmonicConfig& cfg, bool cross_check) {
  if (!cfg.group) throw UsageError("configuration without a group");
  const Group& g = *cfg.group;
  if (cfg.subgroups.size() != cfg.reps.size()) throw UsageError("subgroup and rep counts differ");
  for (const auto& u : cfg.subgroups) require_same_parent(g, {&u});
  for (int r : cfg.reps) {
    if (r < 0 || static_cast<std::size_t>(r) >= g.order()) throw UsageError("rep id out of range");
  }
  bool ok = true;
  for (std::size_t i = 0; i < cfg.subgroups.size(); ++i) {
    for (std::size_t j = i + 1; j < cfg.subgroups.size(); ++j) {
      bool a = cosets_disjoint(g, cfg.subgroups[i], cfg.reps[i], cfg.subgroups[j], cfg.reps[j]);
      if (cross_check) {
        bool b = cosets_disjoint_elementwise(g, cfg.subgroups[i], cfg.reps[i], cfg.subgroups[j], cfg.reps[j]);
        if (a != b) throw std::logic_error("disjointness tests disagree");
      }
      if (!a) {
        if (!cross_check) return false;
        ok = false;
      }
    }
  }
  return ok;
}

namespace {

class RepSearch {
 public:
  RepSearch(const SubgroupLattice& lat, std::span<const int> ids) : lat_(lat), g_(lat.group()), ids_(ids) {
    reps_.assign(ids.size(), -1);
    for (int id : ids) {
      if (coset_reps_.count(id)) continue;
      std::vector<int> r;
      for (const auto& c : group::left_cosets(g_, lat_[static_cast<std::size_t>(id)])) r.push_back(c.rep);
      coset_reps_.emplace(id, std::move(r));
    }
  }

  std::optional<std::vector<int>> run() {
    if (ids_.empty()) return std::vector<int>{};
    reps_[0] = g_.identity();
    if (dfs(1)) return reps_;
    return std::nullopt;
  }

 private:
  bool dfs(std::size_t k) {
    if (k == ids_.size()) return true;
    auto uk = static_cast<std::size_t>(ids_[k]);
    ElementSet forbidden(g_.order());
    for (std::size_t i = 0; i < k; ++i) {
      forbidden |= g_.translate_left(reps_[i], lat_.product(static_cast<std::size_t>(ids_[i]), uk));
    }
    if (forbidden.full()) return false;
    int floor = -1;
    if (k >= 2 && ids_[k] == ids_[k - 1]) floor = reps_[k - 1];
    for (int r : coset_reps_.at(ids_[k])) {
      if (r <= floor || forbidden.contains(r)) continue;
      reps_[k] = r;
      if (dfs(k + 1)) return true;
    }
    return false;
  }

  const SubgroupLattice& lat_;
  const Group& g_;
  std::span<const int> ids_;
  std::vector<int> reps_;
  std::map<int, std::vector<int>> coset_reps_;
};

void check_indices(const Group& g, std::span<const Int> indices) {
  auto n = static_cast<Int>(g.order());
  for (Int a : indices) {
    if (a < 1 || n % a != 0) throw DomainError("index " + std::to_string(a) + " does not divide |G| = " + std::to_string(n));
  }
}

class TupleSearch {
 public:
  TupleSearch(const SubgroupLattice& lat, std::span<const Int> indices) : lat_(lat), indices_(indices) {
    for (std::size_t k = 0; k < indices.size(); ++k) {
      auto ids = lat.with_index(indices[k]);
      if (k == 0) std::erase_if(ids, [&](int id) { return lat.conjugacy_rep(static_cast<std::size_t>(id)) != id; });
      options_.push_back(std::move(ids));
    }
    chosen_.resize(indices.size());
  }

  std::optional<HarmonicConfig> run() {
    if (indices_.empty()) return std::nullopt;
    if (dfs(0)) {
      HarmonicConfig cfg;
      cfg.group = &lat_.group();
      for (int id : chosen_) cfg.subgroups.push_back(lat_[static_cast<std::size_t>(id)]);
      cfg.reps = reps_;
      return cfg;
    }
    return std::nullopt;
  }

 private:
  bool dfs(std::size_t k) {
    if (k == indices_.size()) {
      auto reps = RepSearch(lat_, chosen_).run();
      if (!reps) return false;
      reps_ = std::move(*reps);
      return true;
    }
    for (int id : options_[k]) {
      if (k >= 2 && indices_[k] == indices_[k - 1] && id < chosen_[k - 1]) continue;
      bool compatible = true;
      for (std::size_t i = 0; i < k && compatible; ++i) {
        compatible = !lat_.product(static_cast<std::size_t>(chosen_[i]), static_cast<std::size_t>(id)).full();
      }
      if (!compatible) continue;
      chosen_[k] = id;
      if (dfs(k + 1)) return true;
    }
    return false;
  }

  const SubgroupLattice& lat_;
  std::span<const Int> indices_;
  std::vector<std::vector<int>> options_;
  std::vector<int> chosen_;
  std::vector<int> reps_;
};

}  // namespace

std::optional<std::vector<int>> find_reps(const SubgroupLattice& lat, std::span<const int> subgroup_ids) {
  for (int id : subgroup_ids) {
    if (id < 0 || static_cast<std::size_t>(id) >= lat.size()) throw UsageError("subgroup id out of range");
  }
  return RepSearch(lat, subgroup_ids).run();
}

std::optional<HarmonicConfig> find_harmonic_tuple(const SubgroupLattice& lat, std::span<const Int> indices) {
  check_indices(lat.group(), indices);
  return TupleSearch(lat, indices).run();
}

std::optional<HarmonicConfig> find_harmonic_tuple(const Group& g, std::span<const Int> indices) {
  check_indices(g, indices);
  SubgroupLattice lat(g);
  auto cfg = find_harmonic_tuple(lat, indices);
  return cfg;
}

PartitionCert verify_coset_partition(const Group& g, std::span<const std::pair<int, Subgroup>> cosets) {
  PartitionCert cert;
  cert.group = &g;
  cert.cosets.assign(cosets.begin(), cosets.end());
  ElementSet covered(g.order());
  std::size_t total = 0;
  bool disjoint = true;
  cert.nontrivial = !cosets.empty();
  for (const auto& [rep, u] : cosets) {
    require_same_parent(g, {&u});
    if (rep < 0 || static_cast<std::size_t>(rep) >= g.order()) throw UsageError("rep id out of range");
    auto c = g.translate_left(rep, u.members());
    if (c.intersects(covered)) disjoint = false;
    covered |= c;
    total += c.count();
    cert.index_multiset.push_back(static_cast<Int>(u.index()));
    if (u.index() == 1) cert.nontrivial = false;
  }
  cert.is_partition = disjoint && covered.full() && total == g.order();
  std::sort(cert.index_multiset.begin(), cert.index_multiset.end());
  cert.has_multiplicity =
      std::adjacent_find(cert.index_multiset.begin(), cert.index_multiset.end()) != cert.index_multiset.end();
  return cert;
}

namespace {

class CoverSearch {
 public:
  CoverSearch(const SubgroupLattice& lat, std::span<const Int> allowed, bool distinct)
      : lat_(lat), g_(lat.group()), distinct_(distinct), covered_(lat.group().order()) {
    std::set<Int> allow(allowed.begin(), allowed.end());
    for (std::size_t i = 0; i < lat.size(); ++i) {
      Int idx = static_cast<Int>(lat[i].index());
      if (idx >= 2 && allow.count(idx)) subs_.push_back(static_cast<int>(i));
    }
  }

  std::optional<PartitionCert> run() {
    if (g_.order() < 2 || subs_.empty()) return std::nullopt;
    if (!dfs()) return std::nullopt;
    std::vector<std::pair<int, Subgroup>> cosets;
    for (auto [rep, id] : chosen_) cosets.emplace_back(rep, lat_[static_cast<std::size_t>(id)]);
    auto cert = verify_coset_partition(g_, cosets);
    if (!cert.is_partition) throw std::logic_error("exact cover produced a non-partition");
    return cert;
  }

 private:
  bool dfs() {
    int x = covered_.complement().first();
    if (x < 0) return true;
    if (distinct_) {
      std::size_t room = 0;
      std::set<Int> seen;
      for (int id : subs_) {
        Int idx = static_cast<Int>(lat_[static_cast<std::size_t>(id)].index());
        if (used_.count(idx) || !seen.insert(idx).second) continue;
        room += g_.order() / static_cast<std::size_t>(idx);
      }
      if (room < g_.order() - covered_.count()) return false;
    }
    for (int id : subs_) {
      const auto& u = lat_[static_cast<std::size_t>(id)];
      Int idx = static_cast<Int>(u.index());
      if (distinct_ && used_.count(idx)) continue;
      auto c = g_.translate_left(x, u.members());
      if (c.intersects(covered_)) continue;
      int rep = c.first();
      covered_ |= c;
      used_.insert(idx);
      chosen_.emplace_back(rep, id);
      if (dfs()) return true;
      chosen_.pop_back();
      if (distinct_) used_.erase(idx);
      else used_.erase(used_.find(idx));
      covered_ &= c.complement();
    }
    return false;
  }

  const SubgroupLattice& lat_;
  const Group& g_;
  bool distinct_;
  std::vector<int> subs_;
  ElementSet covered_;
  std::multiset<Int> used_;
  std::vector<std::pair<int, int>> chosen_;
};

}  // namespace

std::optional<PartitionCert> search_coset_partition(const SubgroupLattice& lat, std::span<const Int> allowed_indices,
                                                    bool distinct_indices) {
  return CoverSearch(lat, allowed_indices, distinct_indices).run();
}

std::string_view to_string(Stage s) { return s == Stage::Arithmetic ? "ARITHMETIC" : "SEARCH"; }

HscVerdict hsc_verify(const Group& g, bool force_search, std::size_t order_cap) {
  if (g.order() > order_cap) {
    throw ResourceError("group order " + std::to_string(g.order()) + " exceeds cap " + std::to_string(order_cap));
  }
  HscVerdict v;
  auto n = static_cast<Int>(g.order());
  std::set<Int> indices;
  if (force_search) {
    for (Int d : arith::divisors(n)) {
      if (d >= 2) indices.insert(d);
    }
  } else if (n >= 3) {
    for (const auto& t : egypt::enumerate_candidates(n)) {
      if (n < 1440 && egypt::gcd_class(t) == egypt::GcdClass::None) continue;
      bool caught = false;
      for (auto p : egypt::kAllPatterns) {
        if (egypt::match_pattern(t, p)) {
          caught = true;
          break;
        }
      }
      if (!caught) indices.insert(t.entries().begin(), t.entries().end());
    }
  }
  if (indices.empty() && !force_search) return v;
  v.stage = Stage::Search;
  v.search_indices.assign(indices.begin(), indices.end());
  SubgroupLattice lat(g);
  v.counterexample = search_coset_partition(lat, v.search_indices, true);
  v.holds = !v.counterexample.has_value();
  return v;
}

HarmonicConfig config_from_partition(const PartitionCert& cert) {
  HarmonicConfig cfg;
  cfg.group = cert.group;
  if (cert.cosets.empty()) return cfg;
  const Group& g = *cert.group;
  int shift = g.inv(cert.cosets.front().first);
  for (const auto& [rep, u] : cert.cosets) {
    cfg.subgroups.push_back(u);
    cfg.reps.push_back(g.mul(shift, rep));
  }
  return cfg;
}

HarmonicConfig conjugate_config(const HarmonicConfig& cfg, int x) {
  HarmonicConfig out;
  out.group = cfg.group;
  for (std::size_t i = 0; i < cfg.subgroups.size(); ++i) {
    out.subgroups.push_back(group::conjugate(cfg.subgroups[i], x));
    out.reps.push_back(cfg.group->conj(x, cfg.reps[i]));
  }
  return out;
}

namespace {

void divisor_tuples(const std::vector<Int>& divs, std::size_t max_len, std::size_t start, std::vector<Int>& cur,
                    std::vector<std::vector<Int>>& out) {
  if (!cur.empty()) out.push_back(cur);
  if (cur.size() == max_len) return;
  for (std::size_t i = start; i < divs.size(); ++i) {
    cur.push_back(divs[i]);
    divisor_tuples(divs, max_len, i, cur, out);
    cur.pop_back();
  }
}

std::string join(std::span<const Int> v) {
  std::ostringstream os;
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  return os.str();
}

}  // namespace

BridgeReport theorem_b_bridge(const SubgroupLattice& lat, std::size_t max_len) {
  const Group& g = lat.group();
  BridgeReport rep;
  rep.group = g.name();
  std::vector<Int> divs;
  for (Int d : arith::divisors(static_cast<Int>(g.order()))) {
    if (d >= 2) divs.push_back(d);
  }
  std::vector<std::vector<Int>> tuples;
  std::vector<Int> cur;
  divisor_tuples(divs, max_len, 0, cur, tuples);
  for (const auto& t : tuples) {
    ++rep.tuples;
    if (t.size() < 2) continue;
    if (zharm::is_z_harmonic(t).harmonic) continue;
    ++rep.searched;
    if (auto cfg = find_harmonic_tuple(lat, t)) {
      if (!is_harmonic_config(*cfg)) throw std::logic_error("search returned an invalid configuration");
      rep.violations.push_back(join(t));
    }
  }
  return rep;
}

std::vector<BridgeReport> theorem_b_bridge_serial(std::span<const std::shared_ptr<const Group>> groups,
                                                  std::size_t max_len) {
  std::vector<BridgeReport> out;
  for (const auto& g : groups) {
    SubgroupLattice lat(*g);
    out.push_back(theorem_b_bridge(lat, max_len));
  }
  return out;
}

std::vector<BridgeReport> theorem_b_bridge_catalog(std::span<const std::shared_ptr<const Group>> groups, int jobs,
                                                   std::size_t max_len) {
  std::vector<BridgeReport> out(groups.size());
  std::exception_ptr err;
  const auto n = static_cast<std::ptrdiff_t>(groups.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      SubgroupLattice lat(*groups[static_cast<std::size_t>(i)]);
      out[static_cast<std::size_t>(i)] = theorem_b_bridge(lat, max_len);
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace hsc::gharm
