#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace hsc::arith {

using Int = std::int64_t;

// Overflow-checked helpers; every overflow throws std::overflow_error.
Int checked_add(Int a, Int b);
Int checked_mul(Int a, Int b);
Int lcm(Int a, Int b);

bool is_prime(Int n);

/// Exact fraction, always stored reduced with a positive denominator.
class Rational {
 public:
  constexpr Rational() = default;
  Rational(Int numerator, Int denominator = 1);  // NOLINT(google-explicit-constructor)

  Int num() const { return num_; }
  Int den() const { return den_; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  Rational operator*(const Rational& o) const;
  Rational operator/(const Rational& o) const;
  Rational operator-() const;
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }

  bool operator==(const Rational&) const = default;
  std::strong_ordering operator<=>(const Rational& o) const;

  /// "p/q", or just "p" when the denominator is 1.
  std::string str() const;

 private:
  __extension__ typedef __int128 Wide;
  static Rational from_wide(Wide n, Wide d);

  Int num_ = 0;
  Int den_ = 1;
};

struct PrimePower {
  Int prime;
  int exponent;
  bool operator==(const PrimePower&) const = default;
};

/// Prime factorization with strictly increasing primes.
class Factorization {
 public:
  Factorization() = default;
  /// Validates primality, ordering and exponents; throws DomainError otherwise.
  explicit Factorization(std::vector<PrimePower> factors);

  const std::vector<PrimePower>& factors() const& { return factors_; }
  std::vector<PrimePower> factors() && { return std::move(factors_); }
  std::size_t distinct_primes() const { return factors_.size(); }
  bool is_prime_power() const { return factors_.size() == 1; }
  bool squarefree() const;
  Int value() const;
  std::vector<Int> primes() const;

  bool operator==(const Factorization&) const = default;

 private:
  std::vector<PrimePower> factors_;
};

/// Trial division. n must be in [1, 2^63-1].
Factorization factorize(Int n);

/// All divisors of n, ascending.
std::vector<Int> divisors(Int n);

/// Exact sum of 1/v over values; empty input gives 0.
Rational sum_reciprocals(std::span<const Int> values);

/// Sum of 1/d over the divisors d of z that have at least two distinct prime factors.
Rational d_composite(Int z);

/// Product of (1 + 1/(p-1)) over a set of distinct primes.
Rational reciprocal_bound(std::span<const Int> primes);

}  // namespace hsc::arith
