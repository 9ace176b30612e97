#include <doctest.h>

#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

#include "hsc/error.hpp"
#include "hsc/exact_arith.hpp"
#include "oracles.hpp"

using hsc::arith::Int;
using hsc::arith::Rational;
namespace ar = hsc::arith;

namespace {

std::vector<std::pair<Int, int>> pairs(const ar::Factorization& f) {
  std::vector<std::pair<Int, int>> out;
  for (const auto& pp : f.factors()) out.emplace_back(pp.prime, pp.exponent);
  return out;
}

bool reduced(const Rational& r) { return r.den() > 0 && std::gcd(r.num() < 0 ? -r.num() : r.num(), r.den()) == 1; }

}  // namespace

TEST_SUITE("exact_arith") {
  TEST_CASE("factorize examples") {
    using V = std::vector<std::pair<Int, int>>;
    CHECK(pairs(ar::factorize(840)) == V{{2, 3}, {3, 1}, {5, 1}, {7, 1}});
    CHECK(pairs(ar::factorize(1260)) == V{{2, 2}, {3, 2}, {5, 1}, {7, 1}});
    CHECK(ar::factorize(1).factors().empty());
    CHECK_THROWS_AS(ar::factorize(0), hsc::DomainError);
    CHECK_THROWS_AS(ar::factorize(-5), hsc::DomainError);
    CHECK(pairs(ar::factorize(999'999'999'989LL)) == V{{999'999'999'989LL, 1}});
  }

  TEST_CASE("factorization validates its input") {
    CHECK_THROWS_AS(ar::Factorization({{4, 1}}), hsc::DomainError);
    CHECK_THROWS_AS(ar::Factorization({{3, 1}, {2, 1}}), hsc::DomainError);
    CHECK_THROWS_AS(ar::Factorization({{2, 0}}), hsc::DomainError);
    ar::Factorization f({{2, 1}, {3, 2}});
    CHECK(f.value() == 18);
    CHECK_FALSE(f.squarefree());
    CHECK_FALSE(f.is_prime_power());
  }

  TEST_CASE("factorize reconstructs every n up to 10^6") {
    for (Int n = 1; n <= 1'000'000; ++n) {
      const auto f = ar::factorize(n);
      Int prod = 1;
      for (const auto& pp : f.factors()) {
        for (int k = 0; k < pp.exponent; ++k) prod *= pp.prime;
      }
      if (prod != n) FAIL("reconstruction failed for ", n);
    }
  }

  TEST_CASE("divisors examples and oracle") {
    CHECK(ar::divisors(24) == std::vector<Int>{1, 2, 3, 4, 6, 8, 12, 24});
    CHECK(ar::divisors(7) == std::vector<Int>{1, 7});
    CHECK(ar::divisors(36) == std::vector<Int>{1, 2, 3, 4, 6, 9, 12, 18, 36});
    CHECK(ar::divisors(1) == std::vector<Int>{1});
    for (Int n = 1; n <= 5000; ++n) {
      if (ar::divisors(n) != oracle::naive_divisors(n)) FAIL("divisors mismatch at ", n);
    }
  }

  TEST_CASE("sum_reciprocals examples") {
    std::vector<Int> a{2, 3, 6}, e{}, b{4, 6, 10};
    CHECK(ar::sum_reciprocals(a) == Rational(1));
    CHECK(ar::sum_reciprocals(e) == Rational(0));
    CHECK(ar::sum_reciprocals(b) == Rational(31, 60));
    std::vector<Int> bad{2, 0};
    CHECK_THROWS_AS(ar::sum_reciprocals(bad), hsc::DomainError);
  }

  TEST_CASE("d_composite examples") {
    CHECK(ar::d_composite(840) == Rational(737, 840));
    CHECK(ar::d_composite(1260) == Rational(1171, 1260));
    CHECK(ar::d_composite(24) == Rational(1, 6) + Rational(1, 12) + Rational(1, 24));
    CHECK(ar::d_composite(24) == Rational(7, 24));
    CHECK(ar::d_composite(32) == Rational(0));
    CHECK(ar::d_composite(1) == Rational(0));
  }

  TEST_CASE("d_composite agrees with a direct divisor filter up to 10^5") {
    for (Int n = 1; n <= 100'000; ++n) {
      if (ar::d_composite(n) != Rational(oracle::d_numerator(n), n)) FAIL("d mismatch at ", n);
    }
  }

  TEST_CASE("d is monotone under multiplication by a prime") {
    // Equality happens exactly when p*z is a prime power (both sides 0).
    for (Int z = 1; z <= 2000; ++z) {
      for (Int p : {2, 3, 5, 7}) {
        auto lhs = ar::d_composite(z), rhs = ar::d_composite(p * z);
        CHECK(lhs <= rhs);
        if (ar::factorize(p * z).distinct_primes() >= 2) CHECK(lhs < rhs);
        else CHECK(lhs == rhs);
      }
    }
  }

  TEST_CASE("reciprocal_bound examples") {
    std::vector<Int> four{2, 3, 5, 7}, two{2}, none{}, bad{2, 4}, dup{3, 3};
    CHECK(ar::reciprocal_bound(four) == Rational(35, 8));
    CHECK(ar::reciprocal_bound(four) == Rational(105, 24));
    CHECK(ar::reciprocal_bound(four) < Rational(5));
    CHECK(ar::reciprocal_bound(two) == Rational(2));
    CHECK(ar::reciprocal_bound(none) == Rational(1));
    CHECK_THROWS_AS(ar::reciprocal_bound(bad), hsc::DomainError);
    CHECK_THROWS_AS(ar::reciprocal_bound(dup), hsc::DomainError);
  }

  TEST_CASE("rational field laws on random triples") {
    std::mt19937_64 rng(20261014);
    std::uniform_int_distribution<Int> num(-1000, 1000), den(1, 1000);
    for (int trial = 0; trial < 20000; ++trial) {
      Rational a(num(rng), den(rng)), b(num(rng), den(rng)), c(num(rng), den(rng));
      CHECK((a + b) + c == a + (b + c));
      CHECK((a * b) * c == a * (b * c));
      CHECK(a + b == b + a);
      CHECK(a * b == b * a);
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(reduced(a + b));
      CHECK(reduced(a - b));
      CHECK(reduced(a * b));
      if (b != Rational(0)) {
        CHECK(reduced(a / b));
        CHECK((a / b) * b == a);
      }
    }
  }

  TEST_CASE("rational construction and errors") {
    CHECK(Rational(6, -4) == Rational(-3, 2));
    CHECK(Rational(6, -4).den() == 2);
    CHECK(Rational(0, 7).den() == 1);
    CHECK(Rational(3, 6).str() == "1/2");
    CHECK(Rational(4, 2).str() == "2");
    CHECK_THROWS_AS(Rational(1, 0), hsc::DomainError);
    CHECK_THROWS_AS(Rational(1) / Rational(0), hsc::DomainError);
    const Int big = std::numeric_limits<Int>::max();
    CHECK_THROWS_AS(Rational(big) + Rational(1), std::overflow_error);
    CHECK_THROWS_AS(ar::checked_mul(big, 2), std::overflow_error);
  }
}
