#include "hsc/lemmas.hpp"

#include <algorithm>
#include <array>
#include <exception>
#include <map>
#include <numeric>
#include <sstream>

#include <omp.h>

#include "hsc/gharm.hpp"

namespace hsc::lemmas {

using arith::Int;
using group::ElementSet;

namespace {

class Harness {
 public:
  Harness(const SubgroupLattice& lat, const HarnessOptions& opts) : lat_(lat), g_(lat.group()), opts_(opts) {
    n_ = static_cast<Int>(g_.order());
    for (std::size_t i = 0; i < lat.size(); ++i) {
      if (lat[i].index() >= 2) proper_.push_back(static_cast<int>(i));
    }
  }

  std::vector<LemmaReport> run() {
    std::vector<LemmaReport> out;
    out.push_back(gcd2());
    out.push_back(three_alphas());
    out.push_back(three_tuple_a());
    out.push_back(l244());
    out.push_back(five_tuple());
    out.push_back(main_lemma());
    out.push_back(prop_main());
    for (auto& r : out) r.vacuous = r.instances == 0;
    return out;
  }

 private:
  Int idx(int i) const { return static_cast<Int>(lat_[static_cast<std::size_t>(i)].index()); }
  Int alpha(int i, int j) const { return lat_.stats(static_cast<std::size_t>(i), static_cast<std::size_t>(j)).alpha; }
  const ElementSet& prod(int i, int j) const {
    return lat_.product(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
  }
  Int prod_size(int i, int j) const { return static_cast<Int>(prod(i, j).count()); }

  LemmaReport report(const char* tag) const {
    LemmaReport r;
    r.tag = tag;
    r.group = g_.name();
    return r;
  }

  static std::string ids_str(std::initializer_list<int> ids) {
    std::ostringstream os;
    os << "U";
    bool first = true;
    for (int i : ids) {
      os << (first ? "" : ",") << i;
      first = false;
    }
    return os.str();
  }

  bool harmonic(std::vector<int> ids) {
    std::sort(ids.begin(), ids.end());
    auto it = harmonic_cache_.find(ids);
    if (it != harmonic_cache_.end()) return it->second;
    bool ok = true;
    for (std::size_t i = 0; i < ids.size() && ok; ++i) {
      for (std::size_t j = i + 1; j < ids.size() && ok; ++j) ok = !prod(ids[i], ids[j]).full();
    }
    if (ok) ok = gharm::find_reps(lat_, ids).has_value();
    harmonic_cache_.emplace(ids, ok);
    return ok;
  }

  LemmaReport gcd2() {
    auto rep = report("L-gcd2");
    for (std::size_t x = 0; x < proper_.size(); ++x) {
      for (std::size_t y = x + 1; y < proper_.size(); ++y) {
        int u = proper_[x], v = proper_[y];
        Int a = idx(u), b = idx(v);
        if (a % 2 || b % 2 || std::gcd(a / 2, b / 2) != 1) continue;
        if (prod(u, v).full()) continue;
        ++rep.instances;
        const auto& st = lat_.stats(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
        if (st.alpha != 1 || st.product_size * 2 != n_ || st.intersection_index != 2 * (a / 2) * (b / 2)) {
          rep.violations.push_back(ids_str({u, v}));
        }
      }
    }
    return rep;
  }

  // Common pairwise gcd a with pairwise coprime cofactors, or 0.
  static Int common_a(std::span<const Int> idx) {
    Int a = std::gcd(idx[0], idx[1]);
    for (std::size_t i = 0; i < idx.size(); ++i) {
      for (std::size_t j = i + 1; j < idx.size(); ++j) {
        if (std::gcd(idx[i], idx[j]) != a) return 0;
      }
    }
    return a;
  }

  LemmaReport three_alphas() {
    auto rep = report("L-threealphas");
    const std::size_t s = proper_.size();
    for (std::size_t x = 0; x < s; ++x) {
      for (std::size_t y = x + 1; y < s; ++y) {
        int u = proper_[x], v = proper_[y];
        if (alpha(u, v) != 1) continue;
        for (std::size_t z = y + 1; z < s; ++z) {
          int w = proper_[z];
          std::array<Int, 3> ix{idx(u), idx(v), idx(w)};
          Int a = common_a(ix);
          if (a < 2 || alpha(u, w) != 1 || alpha(v, w) != 1) continue;
          ++rep.instances;
          const auto& uv = prod(u, v);
          bool ok = uv == prod(v, u) && uv == prod(u, w) && uv == prod(w, u) && uv == prod(v, w) && uv == prod(w, v);
          ok = ok && group::is_subgroup(g_, uv) && static_cast<Int>(uv.count()) * a == n_;
          if (!ok) rep.violations.push_back(ids_str({u, v, w}));
        }
      }
    }
    return rep;
  }

  LemmaReport three_tuple_a() {
    auto rep = report("L-threetuple-a");
    for (int u : proper_) {
      for (int v : proper_) {
        if (alpha(u, v) != 1 || prod(u, v).full()) continue;
        for (int w : proper_) {
          std::array<Int, 3> ix{idx(u), idx(v), idx(w)};
          Int a = common_a(ix);
          if (a == 0 || prod(u, w).full() || prod(v, w).full()) continue;
          if (!harmonic({u, v, w})) continue;
          ++rep.instances;
          Int b = alpha(u, w);
          Int rv = ix[1] / a;
          if (b > alpha(v, w) * std::gcd(rv, b)) rep.violations.push_back(ids_str({u, v, w}));
        }
      }
    }
    return rep;
  }

  LemmaReport l244() {
    auto rep = report("L-244");
    for (int u1 : proper_) {
      Int a1 = idx(u1);
      if (a1 % 2 || (a1 / 2) % 2 == 0) continue;
      Int r1 = a1 / 2;
      for (int u2 : proper_) {
        Int a2 = idx(u2);
        if (a2 % 4 || std::gcd(r1, a2 / 4) != 1) continue;
        Int r2 = a2 / 4;
        for (int u3 : proper_) {
          Int a3 = idx(u3);
          if (a3 % 4 || std::gcd(r1, a3 / 4) != 1 || std::gcd(r2, a3 / 4) != 1) continue;
          if (!harmonic({u1, u2, u3})) continue;
          ++rep.instances;
          Int al = alpha(u2, u3);
          bool ok = al != 2;
          if (ok && al == 3) {
            auto inter = prod(u2, u1) & prod(u2, u3);
            int m = lat_.meet(static_cast<std::size_t>(u1), static_cast<std::size_t>(u3));
            ok = r1 % 3 == 0 && static_cast<Int>(inter.count()) * 4 == n_ && prod_size(u2, m) * 4 == n_;
          }
          if (!ok) rep.violations.push_back(ids_str({u1, u2, u3}));
        }
      }
    }
    return rep;
  }

  bool five_profile(const std::array<int, 5>& u, const std::array<Int, 5>& r) const {
    static constexpr std::array<std::array<int, 2>, 2> p12{{{0, 1}, {1, 0}}};
    std::array<int, 3> q{2, 3, 4};
    for (const auto& p : p12) {
      std::sort(q.begin(), q.end());
      do {
        std::array<int, 5> m{p[0], p[1], q[0], q[1], q[2]};
        auto al = [&](int x, int y) { return alpha(u[static_cast<std::size_t>(m[static_cast<std::size_t>(x - 1)])],
                                                   u[static_cast<std::size_t>(m[static_cast<std::size_t>(y - 1)])]); };
        bool ok = al(1, 3) == 1 && al(2, 3) == 1 && al(3, 5) == 1 && al(4, 5) == 1;
        ok = ok && al(1, 2) == 2 && al(1, 4) == 2 && al(2, 4) == 2 && al(1, 5) == 2 && al(2, 5) == 2;
        ok = ok && al(3, 4) == 3;
        ok = ok && r[static_cast<std::size_t>(m[1])] % 3 == 0 && r[static_cast<std::size_t>(m[2])] % 2 == 0;
        if (ok) return true;
      } while (std::next_permutation(q.begin(), q.end()));
    }
    return false;
  }

  LemmaReport five_tuple() {
    auto rep = report("L-5tuple");
    std::vector<int> threes, sixes;
    for (int u : proper_) {
      Int a = idx(u);
      if (a % 3 == 0 && (a / 3) % 2 == 1) threes.push_back(u);
      if (a % 6 == 0) sixes.push_back(u);
    }
    std::array<int, 5> pick{};
    std::array<Int, 5> r{};
    auto fits = [&](int k, int u, Int ru) {
      for (int i = 0; i < k; ++i) {
        if (std::gcd(r[static_cast<std::size_t>(i)], ru) != 1) return false;
        if (prod(pick[static_cast<std::size_t>(i)], u).full()) return false;
      }
      return true;
    };
    auto dfs = [&](auto&& self, int k, std::size_t from) -> void {
      if (k == 5) {
        std::vector<int> ids(pick.begin(), pick.end());
        if (!gharm::find_reps(lat_, ids)) return;
        ++rep.instances;
        if (!five_profile(pick, r)) {
          rep.violations.push_back(ids_str({pick[0], pick[1], pick[2], pick[3], pick[4]}));
        }
        return;
      }
      const auto& pool = k < 2 ? threes : sixes;
      if (k == 2) from = 0;
      for (std::size_t i = from; i < pool.size(); ++i) {
        int u = pool[i];
        Int ru = idx(u) / (k < 2 ? 3 : 6);
        if (!fits(k, u, ru)) continue;
        pick[static_cast<std::size_t>(k)] = u;
        r[static_cast<std::size_t>(k)] = ru;
        self(self, k + 1, i);
      }
    };
    dfs(dfs, 0, 0);
    return rep;
  }

  LemmaReport main_lemma() {
    auto rep = report("L-main");
    auto check = [&](std::vector<int> us, int v) {
      Int total = 0;
      for (int u : us) total += prod_size(u, v);
      if (total < n_) return;
      for (std::size_t i = 0; i < us.size(); ++i) {
        for (std::size_t j = i + 1; j < us.size(); ++j) {
          if (!prod(v, us[i]).subset_of(prod(us[j], us[i]))) return;
        }
      }
      ++rep.instances;
      us.push_back(v);
      if (harmonic(us)) {
        std::ostringstream os;
        os << "U";
        for (std::size_t i = 0; i < us.size(); ++i) os << (i ? "," : "") << us[i];
        rep.violations.push_back(os.str());
      }
    };
    for (int v : proper_) {
      for (int u1 : proper_) {
        check({u1}, v);
        for (int u2 : proper_) check({u1, u2}, v);
      }
    }
    if (proper_.size() <= opts_.main_triple_limit) {
      for (int v : proper_) {
        for (int u1 : proper_) {
          for (int u2 : proper_) {
            if (!prod(v, u1).subset_of(prod(u2, u1))) continue;
            for (int u3 : proper_) check({u1, u2, u3}, v);
          }
        }
      }
    }
    return rep;
  }

  LemmaReport prop_main() {
    auto rep = report("L-propmain");
    // Admissible (a_i, r_i) splits of U's index for a given split a*r of V's.
    auto splits = [&](int u, int v, Int a, Int r) {
      std::vector<std::pair<Int, Int>> out;
      if (alpha(u, v) != 1) return out;
      Int iu = idx(u);
      for (Int ai : arith::divisors(a)) {
        if (iu % ai) continue;
        Int ri = iu / ai;
        if (std::gcd(a / ai, ri) == 1 && std::gcd(ri, r) == 1) out.emplace_back(ai, ri);
      }
      return out;
    };
    for (int v : proper_) {
      Int iv = idx(v);
      for (int u1 : proper_) {
        for (int u2 : proper_) {
          if (u2 < u1) continue;
          bool single = false, pair = false;
          for (Int a : arith::divisors(iv)) {
            Int r = iv / a;
            auto s1 = splits(u1, v, a, r);
            if (u1 == u2) {
              for (auto [ai, ri] : s1) single = single || ai == 1;
            }
            auto s2 = splits(u2, v, a, r);
            for (auto [a1, r1] : s1) {
              for (auto [a2, r2] : s2) {
                if (std::gcd(r1, r2) != 1) continue;
                if (arith::Rational(1, a1) + arith::Rational(1, a2) >= arith::Rational(1)) pair = true;
              }
            }
          }
          if (single) {
            ++rep.instances;
            if (harmonic({u1, v})) rep.violations.push_back(ids_str({u1, v}));
          }
          if (pair) {
            ++rep.instances;
            if (harmonic({u1, u2, v})) rep.violations.push_back(ids_str({u1, u2, v}));
          }
        }
      }
    }
    return rep;
  }

  const SubgroupLattice& lat_;
  const Group& g_;
  HarnessOptions opts_;
  Int n_ = 0;
  std::vector<int> proper_;
  std::map<std::vector<int>, bool> harmonic_cache_;
};

}  // namespace

std::vector<LemmaReport> lemma_harness(const SubgroupLattice& lat, const HarnessOptions& opts) {
  return Harness(lat, opts).run();
}

std::vector<LemmaReport> lemma_harness(const Group& g, const HarnessOptions& opts) {
  SubgroupLattice lat(g);
  return lemma_harness(lat, opts);
}

std::vector<std::vector<LemmaReport>> lemma_harness_serial(std::span<const std::shared_ptr<const Group>> groups,
                                                           const HarnessOptions& opts) {
  std::vector<std::vector<LemmaReport>> out;
  for (const auto& g : groups) out.push_back(lemma_harness(*g, opts));
  return out;
}

std::vector<std::vector<LemmaReport>> lemma_harness_catalog(std::span<const std::shared_ptr<const Group>> groups,
                                                            int jobs, const HarnessOptions& opts) {
  std::vector<std::vector<LemmaReport>> out(groups.size());
  std::exception_ptr err;
  const auto n = static_cast<std::ptrdiff_t>(groups.size());
#pragma omp parallel for schedule(dynamic, 1) num_threads(std::max(1, jobs))
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[static_cast<std::size_t>(i)] = lemma_harness(*groups[static_cast<std::size_t>(i)], opts);
    } catch (...) {
#pragma omp critical(hsc_lemma_failure)
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  return out;
}

}  // namespace hsc::lemmas
