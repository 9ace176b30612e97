#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "hsc/catalog.hpp"
#include "hsc/error.hpp"
#include "hsc/gharm.hpp"
#include "hsc/zharm.hpp"
#include "oracles.hpp"

using hsc::arith::Int;
namespace gr = hsc::group;
namespace gh = hsc::gharm;
using gr::Subgroup;

namespace {

std::vector<Subgroup> with_order(const gr::Group& g, std::size_t order) {
  std::vector<Subgroup> out;
  for (const auto& s : gr::all_subgroups(g)) {
    if (s.order() == order) out.push_back(s);
  }
  return out;
}

void divisor_tuples(const std::vector<Int>& d, std::size_t len, std::vector<Int>& cur, std::vector<std::vector<Int>>& out) {
  if (cur.size() == len) {
    out.push_back(cur);
    return;
  }
  for (Int x : d) {
    cur.push_back(x);
    divisor_tuples(d, len, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<Int>> ordered_divisor_tuples(Int n, std::size_t len) {
  std::vector<Int> d;
  for (Int x : hsc::arith::divisors(n)) {
    if (x >= 2) d.push_back(x);
  }
  std::vector<std::vector<Int>> out;
  std::vector<Int> cur;
  divisor_tuples(d, len, cur, out);
  return out;
}

}  // namespace

TEST_SUITE("gharm") {
  TEST_CASE("is_harmonic_config examples") {
    auto s3 = gr::catalog_spec("S3").build();
    auto twos = with_order(s3, 2);
    REQUIRE(twos.size() == 3);
    const auto& u = twos[0];
    const auto& v = twos[1];
    auto uv = gr::product_set(s3, u, v);
    CHECK(uv.count() == 4);
    int t = uv.complement().first();
    REQUIRE(t >= 0);
    CHECK(gh::is_harmonic_config({&s3, {u, v}, {0, t}}));
    CHECK_FALSE(gh::is_harmonic_config({&s3, {u, u}, {0, 0}}));
    auto c6 = gr::catalog_spec("C6").build();
    auto a = with_order(c6, 2).front();
    auto b = with_order(c6, 3).front();
    for (int x = 0; x < 6; ++x) {
      for (int y = 0; y < 6; ++y) CHECK_FALSE(gh::is_harmonic_config({&c6, {a, b}, {x, y}}));
    }
    auto other = gr::catalog_spec("S3").build();
    CHECK_THROWS_AS(gh::is_harmonic_config({&s3, {u, Subgroup::whole(other)}, {0, 1}}), hsc::UsageError);
    CHECK_THROWS_AS(gh::is_harmonic_config({&s3, {u, v}, {0, 6}}), hsc::UsageError);
  }

  TEST_CASE("the two disjointness tests agree") {
    for (const char* name : {"S3", "D4", "A4", "Q8"}) {
      auto g = gr::catalog_spec(name).build();
      auto subs = gr::all_subgroups(g);
      for (const auto& u : subs) {
        for (const auto& v : subs) {
          for (int x = 0; x < static_cast<int>(g.order()); ++x) {
            for (int y = 0; y < static_cast<int>(g.order()); y += 3) {
              bool a = gh::cosets_disjoint(g, u, x, v, y);
              CHECK(a == gh::cosets_disjoint_elementwise(g, u, x, v, y));
              CHECK(a == !oracle::cosets_meet(g, x, u, y, v));
            }
          }
        }
      }
    }
  }

  TEST_CASE("find_harmonic_tuple examples") {
    auto s3 = gr::catalog_spec("S3").build();
    auto c60 = gr::catalog_spec("C60").build();
    auto c4 = gr::catalog_spec("C4").build();
    std::vector<Int> t33{3, 3}, t23{2, 3}, t4610{4, 6, 10}, t4615{4, 6, 15}, t244{2, 4, 4}, t7{7};
    auto found = gh::find_harmonic_tuple(s3, t33);
    REQUIRE(found);
    CHECK(gh::is_harmonic_config(*found));
    CHECK(found->reps.front() == 0);
    CHECK(found->indices() == t33);
    CHECK_FALSE(gh::find_harmonic_tuple(s3, t23));
    CHECK_FALSE(gh::find_harmonic_tuple(c60, t4610));
    CHECK_FALSE(gh::find_harmonic_tuple(c60, t4615));
    auto c = gh::find_harmonic_tuple(c4, t244);
    REQUIRE(c);
    CHECK(gh::is_harmonic_config(*c));
    CHECK_THROWS_AS(gh::find_harmonic_tuple(s3, t7), hsc::DomainError);
  }

  TEST_CASE("two distinct order-2 subgroups of S3 have disjoint cosets") {
    auto s3 = gr::catalog_spec("S3").build();
    gr::SubgroupLattice lat(s3);
    auto ids = lat.with_index(3);
    REQUIRE(ids.size() == 3);
    std::vector<int> pair{ids[0], ids[1]};
    auto reps = gh::find_reps(lat, pair);
    REQUIRE(reps);
    CHECK(gh::is_harmonic_config({&s3, {lat[static_cast<std::size_t>(ids[0])], lat[static_cast<std::size_t>(ids[1])]}, *reps}));
  }

  TEST_CASE("search agrees with plain enumeration on small groups") {
    for (const auto& g : gr::catalog_groups(12)) {
      if (g->order() < 2) continue;
      gr::SubgroupLattice lat(*g);
      const auto& subs = lat.subgroups();
      const std::size_t max_len = g->order() <= 8 ? 4 : 3;
      for (std::size_t len = 1; len <= max_len; ++len) {
        for (const auto& t : ordered_divisor_tuples(static_cast<Int>(g->order()), len)) {
          auto cfg = gh::find_harmonic_tuple(lat, t);
          INFO(g->name(), " ", t.size());
          CHECK(cfg.has_value() == oracle::g_harmonic_bruteforce(*g, subs, t));
          if (cfg) {
            CHECK(gh::is_harmonic_config(*cfg));
            CHECK(cfg->indices() == t);
          }
        }
      }
    }
  }

  TEST_CASE("conjugating a harmonic configuration keeps it harmonic") {
    std::mt19937 rng(5);
    for (const char* name : {"S3", "D4", "A4", "S4", "D6", "S3xC4", "C2xA4"}) {
      auto g = gr::catalog_spec(name).build();
      gr::SubgroupLattice lat(g);
      std::uniform_int_distribution<int> pick(0, static_cast<int>(g.order()) - 1);
      for (std::size_t len = 2; len <= 3; ++len) {
        for (const auto& t : ordered_divisor_tuples(static_cast<Int>(g.order()), len)) {
          auto cfg = gh::find_harmonic_tuple(lat, t);
          if (!cfg) continue;
          for (int k = 0; k < 3; ++k) {
            auto conj = gh::conjugate_config(*cfg, pick(rng));
            CHECK(gh::is_harmonic_config(conj));
            CHECK(conj.indices() == t);
          }
        }
      }
    }
  }

  TEST_CASE("verify_coset_partition examples") {
    auto c4 = gr::catalog_spec("C4").build();
    gr::ElementSet half(4);
    half.insert(0);
    half.insert(2);
    std::vector<std::pair<int, Subgroup>> cl{{0, Subgroup::from_members(c4, half)},
                                             {1, Subgroup::trivial(c4)},
                                             {3, Subgroup::trivial(c4)}};
    auto cert = gh::verify_coset_partition(c4, cl);
    CHECK(cert.is_partition);
    CHECK(cert.index_multiset == std::vector<Int>{2, 4, 4});
    CHECK(cert.has_multiplicity);
    CHECK(cert.nontrivial);

    auto c6 = gr::catalog_spec("C6").build();
    auto three = with_order(c6, 3).front();
    int other = three.members().complement().first();
    std::vector<std::pair<int, Subgroup>> two{{0, three}, {other, three}};
    auto c2 = gh::verify_coset_partition(c6, two);
    CHECK(c2.is_partition);
    CHECK(c2.index_multiset == std::vector<Int>{2, 2});
    CHECK(c2.has_multiplicity);

    auto s3 = gr::catalog_spec("S3").build();
    auto u = with_order(s3, 3).front();
    auto v = with_order(s3, 2).front();
    int t = u.members().complement().first();
    std::vector<std::pair<int, Subgroup>> bad{{0, u}, {t, v}};
    auto c3 = gh::verify_coset_partition(s3, bad);
    CHECK_FALSE(c3.is_partition);
    CHECK_FALSE(c3.has_multiplicity);
  }

  TEST_CASE("every verified partition gives a harmonic configuration") {
    for (const auto& g : gr::catalog_groups(24)) {
      if (g->order() < 2) continue;
      gr::SubgroupLattice lat(*g);
      std::vector<Int> all;
      for (Int d : hsc::arith::divisors(static_cast<Int>(g->order()))) {
        if (d >= 2) all.push_back(d);
      }
      auto cert = gh::search_coset_partition(lat, all, false);
      REQUIRE(cert);
      CHECK(cert->is_partition);
      CHECK(cert->nontrivial);
      CHECK(cert->has_multiplicity);
      auto cfg = gh::config_from_partition(*cert);
      CHECK(cfg.reps.front() == 0);
      CHECK(gh::is_harmonic_config(cfg));
      auto idx = cfg.indices();
      CHECK(gh::find_harmonic_tuple(lat, idx).has_value());
    }
  }

  TEST_CASE("no multiplicity-free partition in small groups") {
    for (const auto& g : gr::catalog_groups(24)) {
      auto v = gh::hsc_verify(*g, true);
      INFO(g->name());
      CHECK(v.holds);
      CHECK(v.stage == gh::Stage::Search);
      CHECK_FALSE(v.counterexample);
    }
  }

  TEST_CASE("hsc_verify examples") {
    auto s3 = gr::catalog_spec("S3").build();
    CHECK(gh::hsc_verify(s3).holds);
    auto c120 = gr::catalog_spec("C120").build();
    auto v = gh::hsc_verify(c120);
    CHECK(v.holds);
    CHECK(v.stage == gh::Stage::Arithmetic);
    for (const auto& g : gr::catalog_groups(60)) {
      auto r = gh::hsc_verify(*g);
      CHECK(r.holds);
      CHECK(r.stage == gh::Stage::Arithmetic);
    }
    CHECK_THROWS_AS(gh::hsc_verify(c120, false, 60), hsc::ResourceError);
    CHECK(gh::to_string(gh::Stage::Search) == "SEARCH");
  }

  TEST_CASE("bridge on small groups, serial and parallel") {
    auto groups = gr::catalog_groups(24);
    auto s = gh::theorem_b_bridge_serial(groups);
    auto p = gh::theorem_b_bridge_catalog(groups, 4);
    REQUIRE(s.size() == p.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
      CHECK(s[i].violations.empty());
      CHECK(s[i].group == p[i].group);
      CHECK(s[i].tuples == p[i].tuples);
      CHECK(s[i].searched == p[i].searched);
    }
  }

  TEST_CASE("Z-harmonic divisor tuples can be G-harmonic") {
    auto g = gr::catalog_spec("C12").build();
    gr::SubgroupLattice lat(g);
    std::vector<Int> t{2, 4, 4};
    CHECK(hsc::zharm::is_z_harmonic(t).harmonic);
    CHECK(gh::find_harmonic_tuple(lat, t).has_value());
  }
}
