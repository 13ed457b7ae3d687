#pragma once

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

// Exact arithmetic in the field Q(v).  The deformation parameter is q = v^L,
// where L is fixed by the root system so that every pairing exponent (lambda,mu)
// turns q^(lambda,mu) into an integer power of v.

namespace qct {

struct error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct division_by_zero : error {
  division_by_zero() : error("division by zero in Q(v)") {}
};

// Polynomial in v with integer coefficients.  coeff(k) is the coefficient of v^k.
// Invariant: no trailing zero coefficients; the zero polynomial has empty storage.
class IntPoly {
 public:
  IntPoly() = default;
  explicit IntPoly(long n) { if (n != 0) c_.assign(1, mpz_class(n)); }
  explicit IntPoly(mpz_class n) { if (n != 0) c_.assign(1, std::move(n)); }
  explicit IntPoly(std::vector<mpz_class> coeffs) : c_(std::move(coeffs)) { trim(); }

  static IntPoly monomial(const mpz_class& coeff, int k);

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }  // -1 for zero
  // Lowest exponent with a nonzero coefficient (0 for the zero polynomial).
  int trailing_degree() const;
  const mpz_class& coeff(int k) const;
  const mpz_class& leading() const { return c_.back(); }

  IntPoly operator-() const;
  IntPoly operator+(const IntPoly& o) const;
  IntPoly operator-(const IntPoly& o) const;
  IntPoly operator*(const IntPoly& o) const;
  bool operator==(const IntPoly& o) const { return c_ == o.c_; }

  // Quotient when the division is known to be exact; throws otherwise.
  IntPoly div_exact(const IntPoly& d) const;
  // Multiplication by v^k; negative k must divide exactly.
  IntPoly shifted(int k) const;

  mpz_class content() const;  // gcd of coefficients, sign of leading coeff
  IntPoly primitive_part() const;
  mpq_class eval(const mpq_class& v0) const;

  static IntPoly gcd(const IntPoly& a, const IntPoly& b);

 private:
  void trim();
  std::vector<mpz_class> c_;
};

// Element of Q(v) as a reduced fraction of integer polynomials.
// Canonical form: gcd(num, den) = 1 in Z[v] (including integer content) and the
// leading coefficient of den is positive.  Equality is representation equality.
class Scalar {
 public:
  Scalar() : num_(), den_(1) {}
  Scalar(long n) : num_(n), den_(1) {}
  Scalar(IntPoly num, IntPoly den);
  explicit Scalar(const IntPoly& p) : num_(p), den_(1) {}

  static Scalar integer(long n) { return Scalar(n); }
  static Scalar rational(long p, long q);
  static Scalar rational(const mpq_class& r);
  // v^k for any integer k (negative k puts the power in the denominator).
  static Scalar v_pow(long k);

  const IntPoly& num() const { return num_; }
  const IntPoly& den() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  bool is_one() const;

  Scalar operator-() const;
  Scalar operator+(const Scalar& o) const;
  Scalar operator-(const Scalar& o) const;
  Scalar operator*(const Scalar& o) const;
  Scalar operator/(const Scalar& o) const;
  Scalar inverse() const;
  Scalar pow(long k) const;  // negative k inverts

  Scalar& operator+=(const Scalar& o) { return *this = *this + o; }
  Scalar& operator-=(const Scalar& o) { return *this = *this - o; }
  Scalar& operator*=(const Scalar& o) { return *this = *this * o; }
  Scalar& operator/=(const Scalar& o) { return *this = *this / o; }

  bool operator==(const Scalar& o) const { return num_ == o.num_ && den_ == o.den_; }
  bool operator!=(const Scalar& o) const { return !(*this == o); }
  // Total order for use as a map key (lexicographic on coefficients, not numeric).
  bool operator<(const Scalar& o) const;

 private:
  struct reduced_t {};
  // Trusted constructor for results already in canonical form.
  Scalar(IntPoly num, IntPoly den, reduced_t) : num_(std::move(num)), den_(std::move(den)) {}

  void reduce();
  IntPoly num_, den_;
};

// Quantum integer [n]_{q_i} with q_i = q^d = v^{L d}.
Scalar quantum_int(long n, long d, long L);
Scalar quantum_factorial(long n, long d, long L);
// Quantum binomial [m choose k]_{q_i}; requires 0 <= k <= m.
Scalar quantum_binomial(long m, long k, long d, long L);

// Exact evaluation at v = q0^{1/L}.  Errors when the root is irrational or the
// denominator vanishes at the substitution point.  q0 must be positive and != 1.
mpq_class numeric_eval(const Scalar& a, const mpq_class& q0, long L);

// Text form "(<laurent poly>)/(<laurent poly>)" with terms "c*v^k" joined by '+';
// any pure v-power in the denominator is folded into the numerator as negative
// exponents.  Round-trips exactly through parse_scalar.
std::string to_string(const Scalar& a);
Scalar parse_scalar(std::string_view text);

}  // namespace qct
