#include "qct/scalar.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace qct {

void IntPoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

IntPoly IntPoly::monomial(const mpz_class& coeff, int k) {
  IntPoly p;
  if (coeff != 0) {
    p.c_.assign(k + 1, mpz_class(0));
    p.c_[k] = coeff;
  }
  return p;
}

int IntPoly::trailing_degree() const {
  for (size_t k = 0; k < c_.size(); ++k)
    if (c_[k] != 0) return static_cast<int>(k);
  return 0;
}

const mpz_class& IntPoly::coeff(int k) const {
  static const mpz_class zero(0);
  if (k < 0 || k >= static_cast<int>(c_.size())) return zero;
  return c_[k];
}

IntPoly IntPoly::operator-() const {
  IntPoly r(*this);
  for (auto& x : r.c_) x = -x;
  return r;
}

IntPoly IntPoly::operator+(const IntPoly& o) const {
  IntPoly r;
  r.c_.resize(std::max(c_.size(), o.c_.size()), mpz_class(0));
  for (size_t k = 0; k < r.c_.size(); ++k) r.c_[k] = coeff(k) + o.coeff(k);
  r.trim();
  return r;
}

IntPoly IntPoly::operator-(const IntPoly& o) const { return *this + (-o); }

IntPoly IntPoly::operator*(const IntPoly& o) const {
  if (is_zero() || o.is_zero()) return IntPoly();
  IntPoly r;
  r.c_.assign(c_.size() + o.c_.size() - 1, mpz_class(0));
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i] == 0) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      if (o.c_[j] != 0) r.c_[i + j] += c_[i] * o.c_[j];
  }
  r.trim();
  return r;
}

IntPoly IntPoly::shifted(int k) const {
  if (is_zero()) return IntPoly();
  if (k >= 0) return monomial(1, k) * *this;
  if (trailing_degree() < -k) throw error("inexact polynomial division");
  return IntPoly(std::vector<mpz_class>(c_.begin() - k, c_.end()));
}

IntPoly IntPoly::div_exact(const IntPoly& d) const {
  if (d.is_zero()) throw division_by_zero();
  if (is_zero()) return IntPoly();
  // Monomial divisor: shift, then divide coefficients.
  if (d.trailing_degree() == d.degree()) {
    IntPoly s = shifted(-d.degree());
    const mpz_class& c = d.leading();
    if (c == 1) return s;
    if (c == -1) return -s;
    for (auto& x : s.c_) {
      if (!mpz_divisible_p(x.get_mpz_t(), c.get_mpz_t()))
        throw error("inexact polynomial division");
      mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), c.get_mpz_t());
    }
    return s;
  }
  // Long division over Q; the result must come out integral and exact.
  std::vector<mpq_class> rem(c_.size());
  for (size_t k = 0; k < c_.size(); ++k) rem[k] = c_[k];
  int dd = d.degree();
  int qd = degree() - dd;
  if (qd < 0) throw error("inexact polynomial division");
  std::vector<mpq_class> q(qd + 1);
  for (int k = qd; k >= 0; --k) {
    mpq_class f = rem[k + dd] / mpq_class(d.leading());
    q[k] = f;
    for (int j = 0; j <= dd; ++j) rem[k + j] -= f * mpq_class(d.coeff(j));
  }
  for (auto& x : rem)
    if (x != 0) throw error("inexact polynomial division");
  std::vector<mpz_class> qi(qd + 1);
  for (int k = 0; k <= qd; ++k) {
    if (q[k].get_den() != 1) throw error("inexact polynomial division");
    qi[k] = q[k].get_num();
  }
  return IntPoly(std::move(qi));
}

mpz_class IntPoly::content() const {
  mpz_class g(0);
  for (const auto& x : c_) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) return 0;
  if (leading() < 0) g = -g;
  return g;
}

IntPoly IntPoly::primitive_part() const {
  if (is_zero()) return IntPoly();
  return div_exact(IntPoly(content()));
}

mpq_class IntPoly::eval(const mpq_class& v0) const {
  mpq_class acc(0);
  for (int k = degree(); k >= 0; --k) acc = acc * v0 + mpq_class(coeff(k));
  return acc;
}

namespace {

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b, staying in Z[v].
IntPoly pseudo_rem(IntPoly a, const IntPoly& b) {
  int db = b.degree();
  while (!a.is_zero() && a.degree() >= db) {
    int shift = a.degree() - db;
    IntPoly t = IntPoly::monomial(a.leading(), shift) * b;
    a = a * IntPoly(b.leading()) - t;
  }
  return a;
}

}  // namespace

IntPoly IntPoly::gcd(const IntPoly& a, const IntPoly& b) {
  if (a.is_zero()) return b.is_zero() ? IntPoly() : b.content() < 0 ? -b : b;
  if (b.is_zero()) return a.content() < 0 ? -a : a;
  mpz_class cg;
  mpz_gcd(cg.get_mpz_t(), a.content().get_mpz_t(), b.content().get_mpz_t());
  // Split off the common power of v; a monomial argument settles it outright.
  int ta = a.trailing_degree(), tb = b.trailing_degree();
  int tmin = std::min(ta, tb);
  if (ta == a.degree() || tb == b.degree()) return monomial(cg, tmin);
  IntPoly u = a.primitive_part().shifted(-ta);
  IntPoly w = b.primitive_part().shifted(-tb);
  if (u.degree() < w.degree()) std::swap(u, w);
  // Primitive PRS.
  while (!w.is_zero()) {
    IntPoly r = pseudo_rem(u, w).primitive_part();
    u = std::move(w);
    w = std::move(r);
  }
  if (u.leading() < 0) u = -u;
  return monomial(cg, tmin) * u;
}

Scalar::Scalar(IntPoly num, IntPoly den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw division_by_zero();
  reduce();
}

namespace {

bool poly_is_one(const IntPoly& p) { return p.degree() == 0 && p.coeff(0) == 1; }

}  // namespace

void Scalar::reduce() {
  if (num_.is_zero()) {
    den_ = IntPoly(1);
    return;
  }
  if (!poly_is_one(den_)) {
    IntPoly g = IntPoly::gcd(num_, den_);
    if (!poly_is_one(g)) {
      num_ = num_.div_exact(g);
      den_ = den_.div_exact(g);
    }
  }
  if (den_.leading() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
}

Scalar Scalar::rational(long p, long q) { return Scalar(IntPoly(p), IntPoly(q)); }

Scalar Scalar::rational(const mpq_class& r) {
  return Scalar(IntPoly(mpz_class(r.get_num())), IntPoly(mpz_class(r.get_den())));
}

Scalar Scalar::v_pow(long k) {
  if (k >= 0) return Scalar(IntPoly::monomial(1, static_cast<int>(k)));
  return Scalar(IntPoly(1), IntPoly::monomial(1, static_cast<int>(-k)));
}

bool Scalar::is_one() const {
  return num_.degree() == 0 && num_.coeff(0) == 1 && den_.degree() == 0 && den_.coeff(0) == 1;
}

Scalar Scalar::operator-() const {
  Scalar r(*this);
  r.num_ = -r.num_;
  return r;
}

Scalar Scalar::operator+(const Scalar& o) const {
  if (is_zero()) return o;
  if (o.is_zero()) return *this;
  if (poly_is_one(den_) && poly_is_one(o.den_))
    return Scalar(num_ + o.num_, IntPoly(1), reduced_t{});
  // mpq-style addition: reduce by the denominator gcd instead of the products.
  IntPoly g = IntPoly::gcd(den_, o.den_);
  if (poly_is_one(g)) return Scalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_, reduced_t{});
  IntPoly d1g = den_.div_exact(g);
  IntPoly t = num_ * o.den_.div_exact(g) + o.num_ * d1g;
  if (t.is_zero()) return Scalar(0);
  IntPoly g2 = IntPoly::gcd(t, g);
  return Scalar(t.div_exact(g2), d1g * o.den_.div_exact(g2), reduced_t{});
}

Scalar Scalar::operator-(const Scalar& o) const { return *this + (-o); }

Scalar Scalar::operator*(const Scalar& o) const {
  if (is_zero() || o.is_zero()) return Scalar(0);
  if (poly_is_one(den_) && poly_is_one(o.den_))
    return Scalar(num_ * o.num_, IntPoly(1), reduced_t{});
  // Cross-reduction keeps the result canonical without a product-size gcd.
  IntPoly g1 = IntPoly::gcd(num_, o.den_);
  IntPoly g2 = IntPoly::gcd(o.num_, den_);
  return Scalar(num_.div_exact(g1) * o.num_.div_exact(g2),
                den_.div_exact(g2) * o.den_.div_exact(g1), reduced_t{});
}

Scalar Scalar::operator/(const Scalar& o) const {
  if (o.is_zero()) throw division_by_zero();
  if (is_zero()) return Scalar(0);
  IntPoly g1 = IntPoly::gcd(num_, o.num_);
  IntPoly g2 = IntPoly::gcd(den_, o.den_);
  IntPoly n = num_.div_exact(g1) * o.den_.div_exact(g2);
  IntPoly d = den_.div_exact(g2) * o.num_.div_exact(g1);
  if (d.leading() < 0) {
    n = -n;
    d = -d;
  }
  return Scalar(std::move(n), std::move(d), reduced_t{});
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw division_by_zero();
  IntPoly n = den_, d = num_;
  if (d.leading() < 0) {
    n = -n;
    d = -d;
  }
  return Scalar(std::move(n), std::move(d), reduced_t{});
}

Scalar Scalar::pow(long k) const {
  if (k < 0) return inverse().pow(-k);
  Scalar r(1), b(*this);
  while (k > 0) {
    if (k & 1) r = r * b;
    b = b * b;
    k >>= 1;
  }
  return r;
}

namespace {

int cmp_poly(const IntPoly& a, const IntPoly& b) {
  if (a.degree() != b.degree()) return a.degree() < b.degree() ? -1 : 1;
  for (int k = a.degree(); k >= 0; --k) {
    int c = cmp(a.coeff(k), b.coeff(k));
    if (c != 0) return c;
  }
  return 0;
}

}  // namespace

bool Scalar::operator<(const Scalar& o) const {
  int c = cmp_poly(den_, o.den_);
  if (c != 0) return c < 0;
  return cmp_poly(num_, o.num_) < 0;
}

Scalar quantum_int(long n, long d, long L) {
  if (n == 0) return Scalar(0);
  if (n < 0) return -quantum_int(-n, d, L);
  // [n] = (v^{2Mt} summed over t < n) / v^{M(n-1)}, with M = L*d.
  long M = L * d;
  std::vector<mpz_class> num(2 * M * (n - 1) + 1, mpz_class(0));
  for (long t = 0; t < n; ++t) num[2 * M * t] = 1;
  return Scalar(IntPoly(std::move(num)), IntPoly::monomial(1, static_cast<int>(M * (n - 1))));
}

Scalar quantum_factorial(long n, long d, long L) {
  Scalar r(1);
  for (long k = 2; k <= n; ++k) r = r * quantum_int(k, d, L);
  return r;
}

Scalar quantum_binomial(long m, long k, long d, long L) {
  if (k < 0 || k > m) throw error("quantum_binomial: k out of range");
  Scalar r(1);
  for (long t = 1; t <= k; ++t) r = r * quantum_int(m - k + t, d, L) / quantum_int(t, d, L);
  return r;
}

mpq_class numeric_eval(const Scalar& a, const mpq_class& q0, long L) {
  if (q0 <= 0 || q0 == 1) throw error("numeric_eval: q0 must be positive and != 1");
  mpz_class pn, pd;
  if (!mpz_root(pn.get_mpz_t(), q0.get_num().get_mpz_t(), L) ||
      !mpz_root(pd.get_mpz_t(), q0.get_den().get_mpz_t(), L))
    throw error("numeric_eval: q0 has no rational L-th root");
  mpq_class v0(pn, pd);
  v0.canonicalize();
  mpq_class den = a.den().eval(v0);
  if (den == 0) throw error("numeric_eval: denominator vanishes at substitution point");
  return a.num().eval(v0) / den;
}

namespace {

void append_laurent(std::string& out, const IntPoly& p, int shift) {
  if (p.is_zero()) {
    out += "0";
    return;
  }
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    if (p.coeff(k) == 0) continue;
    if (!first) out += "+";
    first = false;
    out += p.coeff(k).get_str();
    if (k != shift) {
      out += "*v^";
      out += std::to_string(k - shift);
    }
  }
}

IntPoly parse_laurent(std::string_view s, int& min_exp) {
  // Terms "c*v^k" joined by '+'; returns the polynomial shifted so the lowest
  // exponent is zero, reporting that exponent in min_exp.
  std::vector<std::pair<int, mpz_class>> terms;
  size_t pos = 0;
  min_exp = 0;
  if (s == "0") return IntPoly();
  while (pos < s.size()) {
    size_t next = s.find('+', pos + 1);  // '+' can't start a term; sign is in the coeff
    std::string_view term = s.substr(pos, next == std::string_view::npos ? next : next - pos);
    size_t star = term.find("*v^");
    int k = 0;
    std::string cs;
    if (star == std::string_view::npos) {
      cs = std::string(term);  // bare constant term
    } else {
      cs = std::string(term.substr(0, star));
      k = std::atoi(std::string(term.substr(star + 3)).c_str());
    }
    if (cs.empty() || cs.find_first_not_of("-0123456789") != std::string::npos)
      throw error("parse_scalar: malformed term");
    terms.emplace_back(k, mpz_class(cs));
    if (next == std::string_view::npos) break;
    pos = next + 1;
  }
  if (terms.empty()) throw error("parse_scalar: empty polynomial");
  min_exp = terms[0].first;
  for (auto& [k, c] : terms) min_exp = std::min(min_exp, k);
  int max_exp = terms[0].first;
  for (auto& [k, c] : terms) max_exp = std::max(max_exp, k);
  std::vector<mpz_class> coeffs(max_exp - min_exp + 1, mpz_class(0));
  for (auto& [k, c] : terms) coeffs[k - min_exp] += c;
  return IntPoly(std::move(coeffs));
}

}  // namespace

std::string to_string(const Scalar& a) {
  int shift = a.den().trailing_degree();
  std::string out = "(";
  append_laurent(out, a.num(), shift);
  out += ")/(";
  append_laurent(out, a.den(), shift);
  out += ")";
  return out;
}

Scalar parse_scalar(std::string_view text) {
  std::string s;
  for (char ch : text)
    if (!std::isspace(static_cast<unsigned char>(ch))) s += ch;
  size_t mid = s.find(")/(");
  if (s.empty() || s.front() != '(' || s.back() != ')' || mid == std::string::npos)
    throw error("parse_scalar: expected (num)/(den)");
  int sn = 0, sd = 0;
  IntPoly num = parse_laurent(std::string_view(s).substr(1, mid - 1), sn);
  IntPoly den = parse_laurent(std::string_view(s).substr(mid + 3, s.size() - mid - 4), sd);
  // Clear the Laurent shifts: num/v^{-sn} over den/v^{-sd}.
  int shift = sn - sd;
  if (shift >= 0)
    return Scalar(num * IntPoly::monomial(1, shift), den);
  return Scalar(num, den * IntPoly::monomial(1, -shift));
}

}  // namespace qct
