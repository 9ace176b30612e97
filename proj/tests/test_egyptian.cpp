#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <set>
#include <vector>

#include "hsc/egyptian.hpp"
#include "hsc/error.hpp"
#include "oracles.hpp"

using hsc::arith::Int;
using hsc::arith::Rational;
namespace eg = hsc::egypt;

namespace {

std::vector<std::vector<Int>> as_vectors(const std::vector<eg::IndexTuple>& ts) {
  std::vector<std::vector<Int>> out;
  for (const auto& t : ts) out.emplace_back(t.entries().begin(), t.entries().end());
  return out;
}

eg::IndexTuple tup(std::vector<Int> v) { return eg::IndexTuple(std::move(v)); }

const std::vector<eg::OrderReport>& full_report() {
  static const auto r = eg::theorem_a_report_serial(1440);
  return r;
}

const eg::OrderReport& report_for(Int n) { return full_report()[static_cast<std::size_t>(n - 2)]; }

}  // namespace

TEST_SUITE("egyptian") {
  TEST_CASE("index tuple validation") {
    CHECK_THROWS_AS(tup({}), hsc::DomainError);
    CHECK_THROWS_AS(tup({1, 3}), hsc::DomainError);
    CHECK_THROWS_AS(tup({4, 4}), hsc::DomainError);
    CHECK_THROWS_AS(tup({6, 4}), hsc::DomainError);
    CHECK(tup({4, 6, 10}).str() == "4,6,10");
  }

  TEST_CASE("enumerate_candidates examples") {
    CHECK(eg::enumerate_candidates(120).empty());
    CHECK(eg::enumerate_candidates(239).empty());
    auto c240 = eg::enumerate_candidates(240);
    REQUIRE_FALSE(c240.empty());
    CHECK(as_vectors(c240) == oracle::egyptian_subsets(240));
    CHECK(c240.size() == 1);
    CHECK(c240.front().str() == "4,6,8,10,12,16,20,24,30,40,48,60,80,120,240");
    CHECK_THROWS_AS(eg::enumerate_candidates(1), hsc::DomainError);
    CHECK_THROWS_AS(eg::enumerate_candidates(1'000'001), hsc::DomainError);
    CHECK_THROWS_AS(eg::enumerate_candidates(240, 1), hsc::DomainError);
  }

  TEST_CASE("enumeration matches the subset brute force for N <= 600") {
    for (Int n = 2; n <= 600; ++n) {
      auto got = as_vectors(eg::enumerate_candidates(n));
      if (got != oracle::egyptian_subsets(n)) FAIL("candidate mismatch at N=", n);
    }
  }

  TEST_CASE("min_index 2 also matches the brute force") {
    for (Int n : {12, 24, 36, 60, 120, 240, 360}) {
      CHECK(as_vectors(eg::enumerate_candidates(n, 2)) == oracle::egyptian_subsets(n, 2));
    }
  }

  TEST_CASE("frozen candidate counts") {
    CHECK(eg::enumerate_candidates(360).size() == 5);
    CHECK(eg::enumerate_candidates(480).size() == 33);
    CHECK(eg::enumerate_candidates(540).size() == 4);
    CHECK(eg::enumerate_candidates(720).size() == 1330);
  }

  TEST_CASE("every emitted tuple satisfies the defining constraints") {
    for (Int n = 2; n < 1440; ++n) {
      auto cands = eg::enumerate_candidates(n);
      CHECK(std::is_sorted(cands.begin(), cands.end()));
      for (const auto& t : cands) {
        auto e = t.entries();
        CHECK(hsc::arith::sum_reciprocals(e) == Rational(1));
        for (std::size_t i = 0; i < e.size(); ++i) {
          CHECK(e[i] >= 3);
          CHECK(n % e[i] == 0);
          if (i) CHECK(e[i] > e[i - 1]);
          for (std::size_t j = i + 1; j < e.size(); ++j) CHECK(std::gcd(e[i], e[j]) > 1);
        }
      }
    }
  }

  TEST_CASE("gcd_class examples") {
    CHECK(eg::gcd_class(tup({4, 6, 10, 12})) == eg::GcdClass::Two);
    CHECK(eg::gcd_class(tup({3, 9, 15})) == eg::GcdClass::Three);
    CHECK(eg::gcd_class(tup({6, 12, 18})) == eg::GcdClass::Both);
    CHECK(eg::gcd_class(tup({5, 10})) == eg::GcdClass::None);
    CHECK(eg::to_string(eg::GcdClass::Both) == "both");
  }

  TEST_CASE("match_pattern examples") {
    auto p2 = eg::match_pattern(tup({4, 6, 10}), eg::PatternId::P2);
    REQUIRE(p2);
    CHECK(p2->r_values == std::vector<Int>{2, 3, 5});

    auto p3 = eg::match_pattern(tup({3, 6, 9, 15}), eg::PatternId::P3);
    REQUIRE(p3);
    CHECK(p3->r_values == std::vector<Int>{1, 2, 3, 5});

    auto p244 = eg::match_pattern(tup({4, 6, 8, 20}), eg::PatternId::P244);
    REQUIRE(p244);
    CHECK(p244->r_values.front() == 3);
    CHECK(std::multiset<Int>(p244->r_values.begin() + 1, p244->r_values.end()) == std::multiset<Int>{1, 5, 2});

    auto p5 = eg::match_pattern(tup({3, 6, 9, 12, 30}), eg::PatternId::P5);
    REQUIRE(p5);
    CHECK(p5->r_values.size() == 5);
    CHECK(p5->r_values[1] == 3);
    CHECK(std::multiset<Int>(p5->r_values.begin() + 2, p5->r_values.end()) == std::multiset<Int>{1, 2, 5});

    CHECK_FALSE(eg::match_pattern(tup({4, 6, 8}), eg::PatternId::P2));
    CHECK_FALSE(eg::match_pattern(tup({6, 12, 20, 28}), eg::PatternId::P244));
    CHECK(eg::match_pattern(tup({2, 4, 8, 12}), eg::PatternId::P244));
    CHECK_THROWS_AS(eg::parse_pattern("P7"), hsc::UsageError);
    CHECK(eg::parse_pattern("P244") == eg::PatternId::P244);
  }

  TEST_CASE("matches are self-verifying on large tuples") {
    for (Int n : {720, 1080, 840, 1260}) {
      for (const auto& t : eg::enumerate_candidates(n)) {
        for (auto p : eg::kAllPatterns) {
          auto m = eg::match_pattern(t, p);
          if (!m) continue;
          CHECK(m->verify(t.entries()));
          auto pos = m->positions;
          std::sort(pos.begin(), pos.end());
          CHECK(std::adjacent_find(pos.begin(), pos.end()) == pos.end());
        }
      }
    }
  }

  TEST_CASE("lexicographically least match") {
    // P2 on (4,6,10,14): {4,6,10} at positions 0,1,2 beats {4,6,14}.
    auto m = eg::match_pattern(tup({4, 6, 10, 14}), eg::PatternId::P2);
    REQUIRE(m);
    auto pos = m->positions;
    std::sort(pos.begin(), pos.end());
    CHECK(pos == std::vector<std::size_t>{0, 1, 2});
  }

  TEST_CASE("prime_power_forced examples") {
    CHECK(eg::prime_power_forced(840));
    CHECK(eg::prime_power_forced(1260));
    CHECK(eg::prime_power_forced(36));
    CHECK(hsc::arith::d_composite(36) == Rational(oracle::d_numerator(36), 36));
    CHECK(hsc::arith::d_composite(36) == Rational(1, 3));
  }

  TEST_CASE("stage-1 survivors and closure below 1440") {
    auto sum = eg::summarize(full_report());
    CHECK(sum.gcd2 == std::vector<Int>{240, 360, 480, 720, 840, 960, 1008, 1080, 1200, 1320, 1344});
    CHECK(sum.gcd3 == std::vector<Int>{360, 540, 720, 1080, 1260});
    CHECK(sum.survivors.empty());
    for (Int n = 3; n < 240; ++n) CHECK(report_for(n).raw_candidates == 0);
  }

  TEST_CASE("every raw candidate below 1440 has gcd divisible by 2 or 3") {
    for (const auto& r : full_report()) CHECK(r.raw_candidates == r.stage1_candidates.size());
  }

  TEST_CASE("720 needs P244 and 1080 needs P5") {
    bool p244 = false;
    for (const auto& c : report_for(720).stage1_candidates) {
      if (c.gcd != eg::GcdClass::Two && c.gcd != eg::GcdClass::Both) continue;
      bool by_p2 = eg::match_pattern(c.tuple, eg::PatternId::P2).has_value();
      bool by_244 = eg::match_pattern(c.tuple, eg::PatternId::P244).has_value();
      CHECK((by_p2 || by_244));
      if (!by_p2 && by_244) p244 = true;
    }
    CHECK(p244);
    bool p5 = false;
    for (const auto& c : report_for(1080).stage1_candidates) {
      if (c.gcd != eg::GcdClass::Three && c.gcd != eg::GcdClass::Both) continue;
      bool by_p3 = eg::match_pattern(c.tuple, eg::PatternId::P3).has_value();
      bool by_p5 = eg::match_pattern(c.tuple, eg::PatternId::P5).has_value();
      CHECK((by_p3 || by_p5));
      if (!by_p3 && by_p5) p5 = true;
    }
    CHECK(p5);
  }

  TEST_CASE("report invariants") {
    for (const auto& r : full_report()) {
      bool any = false;
      for (const auto& c : r.stage1_candidates) {
        any = any || !c.eliminated_by;
        if (c.eliminated_by) CHECK(c.eliminated_by->verify(c.tuple.entries()));
      }
      CHECK(r.survives == any);
      CHECK(r.squarefree_pyramidal == hsc::arith::factorize(r.order).squarefree());
    }
  }

  TEST_CASE("parallel report equals the serial one") {
    for (int jobs : {1, 2, 8}) {
      auto par = eg::theorem_a_report(1440, jobs);
      REQUIRE(par.size() == full_report().size());
      for (std::size_t i = 0; i < par.size(); ++i) {
        const auto& a = par[i];
        const auto& b = full_report()[i];
        CHECK(a.order == b.order);
        CHECK(a.raw_candidates == b.raw_candidates);
        CHECK(a.survives == b.survives);
        REQUIRE(a.stage1_candidates.size() == b.stage1_candidates.size());
        for (std::size_t k = 0; k < a.stage1_candidates.size(); ++k) {
          CHECK(a.stage1_candidates[k].tuple == b.stage1_candidates[k].tuple);
        }
      }
    }
    CHECK_THROWS_AS(eg::theorem_a_report(2, 1), hsc::DomainError);
    CHECK_THROWS_AS(eg::theorem_a_report(10'001, 1), hsc::DomainError);
  }
}
