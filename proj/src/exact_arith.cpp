#include "hsc/exact_arith.hpp"

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>

#include "hsc/error.hpp"

namespace hsc::arith {

namespace {

__extension__ typedef __int128 Wide;

constexpr Wide kIntMax = std::numeric_limits<Int>::max();
constexpr Wide kIntMin = std::numeric_limits<Int>::min();

Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

Int narrow(Wide v) {
  if (v > kIntMax || v < kIntMin) throw std::overflow_error("64-bit overflow");
  return static_cast<Int>(v);
}

}  // namespace

Int checked_add(Int a, Int b) {
  Int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("64-bit overflow in addition");
  return r;
}

Int checked_mul(Int a, Int b) {
  Int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("64-bit overflow in multiplication");
  return r;
}

Int lcm(Int a, Int b) {
  if (a == 0 || b == 0) return 0;
  Int g = std::gcd(a, b);
  return checked_mul(a / g, b < 0 ? -b : b);
}

bool is_prime(Int n) {
  if (n < 2) return false;
  if (n < 4) return true;
  if (n % 2 == 0 || n % 3 == 0) return false;
  for (Int p = 5; p <= n / p; p += 6) {
    if (n % p == 0 || n % (p + 2) == 0) return false;
  }
  return true;
}

// --- Rational ---------------------------------------------------------------

Rational::Rational(Int numerator, Int denominator) {
  if (denominator == 0) throw DomainError("rational with zero denominator");
  *this = from_wide(numerator, denominator);
}

Rational Rational::from_wide(Wide n, Wide d) {
  if (d == 0) throw DomainError("division by zero");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  Wide g = wide_gcd(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Rational r;
  r.num_ = narrow(n);
  r.den_ = narrow(d);
  return r;
}

Rational Rational::operator+(const Rational& o) const {
  return from_wide(Wide(num_) * o.den_ + Wide(o.num_) * den_, Wide(den_) * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return from_wide(Wide(num_) * o.den_ - Wide(o.num_) * den_, Wide(den_) * o.den_);
}

Rational Rational::operator*(const Rational& o) const {
  return from_wide(Wide(num_) * o.num_, Wide(den_) * o.den_);
}

Rational Rational::operator/(const Rational& o) const {
  if (o.num_ == 0) throw DomainError("division by zero");
  return from_wide(Wide(num_) * o.den_, Wide(den_) * o.num_);
}

Rational Rational::operator-() const { return from_wide(-Wide(num_), den_); }

std::strong_ordering Rational::operator<=>(const Rational& o) const {
  Wide lhs = Wide(num_) * o.den_;
  Wide rhs = Wide(o.num_) * den_;
  if (lhs < rhs) return std::strong_ordering::less;
  if (lhs > rhs) return std::strong_ordering::greater;
  return std::strong_ordering::equal;
}

std::string Rational::str() const {
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

// --- Factorization ------------------------------------------------------------

Factorization::Factorization(std::vector<PrimePower> factors) : factors_(std::move(factors)) {
  Int prev = 1;
  for (const auto& [p, e] : factors_) {
    if (!is_prime(p)) throw DomainError("factor " + std::to_string(p) + " is not prime");
    if (p <= prev) throw DomainError("factor primes must be strictly increasing");
    if (e < 1) throw DomainError("factor exponents must be positive");
    prev = p;
  }
}

bool Factorization::squarefree() const {
  return std::all_of(factors_.begin(), factors_.end(), [](const PrimePower& f) { return f.exponent == 1; });
}

Int Factorization::value() const {
  Int v = 1;
  for (const auto& [p, e] : factors_) {
    for (int i = 0; i < e; ++i) v = checked_mul(v, p);
  }
  return v;
}

std::vector<Int> Factorization::primes() const {
  std::vector<Int> out;
  out.reserve(factors_.size());
  for (const auto& f : factors_) out.push_back(f.prime);
  return out;
}

Factorization factorize(Int n) {
  if (n < 1) throw DomainError("factorize requires n >= 1, got " + std::to_string(n));
  std::vector<PrimePower> out;
  for (Int p = 2; p <= n / p; p += (p == 2 ? 1 : 2)) {
    if (n % p != 0) continue;
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.push_back({p, e});
  }
  if (n > 1) out.push_back({n, 1});
  return Factorization(std::move(out));
}

std::vector<Int> divisors(Int n) {
  const auto f = factorize(n);
  std::vector<Int> out{1};
  for (const auto& [p, e] : f.factors()) {
    const std::size_t base = out.size();
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Rational sum_reciprocals(std::span<const Int> values) {
  Rational sum;
  for (Int v : values) {
    if (v < 1) throw DomainError("sum_reciprocals requires entries >= 1, got " + std::to_string(v));
    sum += Rational(1, v);
  }
  return sum;
}

Rational d_composite(Int z) {
  // sigma(z) counts every divisor; strip 1 and the prime powers, all over z.
  const auto f = factorize(z);
  Int sigma = 1;
  Int prime_power_mass = 0;
  for (const auto& [p, e] : f.factors()) {
    Int local = 1;
    Int pk = 1;
    for (int k = 1; k <= e; ++k) {
      pk = checked_mul(pk, p);
      local = checked_add(local, pk);
      prime_power_mass = checked_add(prime_power_mass, z / pk);
    }
    sigma = checked_mul(sigma, local);
  }
  return Rational(sigma - z - prime_power_mass, z);
}

Rational reciprocal_bound(std::span<const Int> primes) {
  std::vector<Int> seen(primes.begin(), primes.end());
  std::sort(seen.begin(), seen.end());
  if (std::adjacent_find(seen.begin(), seen.end()) != seen.end()) {
    throw DomainError("reciprocal_bound requires distinct primes");
  }
  Rational prod(1);
  for (Int p : primes) {
    if (!is_prime(p)) throw DomainError("reciprocal_bound: " + std::to_string(p) + " is not prime");
    prod *= Rational(p, p - 1);
  }
  return prod;
}

}  // namespace hsc::arith
