#include "qct/defsolve.hpp"

#include <algorithm>

namespace qct {

namespace {

using MonoMap = std::map<Mono, mpq_class>;

void acc(MonoMap& m, const Mono& k, const mpq_class& v) {
  auto it = m.find(k);
  if (it == m.end()) {
    if (v != 0) m.emplace(k, v);
  } else {
    it->second += v;
    if (it->second == 0) m.erase(it);
  }
}

// Right multiplication of a PBW expansion by a single generator, reduced to
// PBW order E^a H^b F^c via the sl2 relations
//   F^c H = (H + 2c) F^c,
//   H^b E = E (H + 2)^b,
//   F^c E = E F^c - c F^{c-1} (H - c + 1)  with  F^{c-1}(H-c+1) = (H+c-1)F^{c-1}.
MonoMap rmul_gen(const MonoMap& x, char g, int cutoff, bool& truncated) {
  MonoMap r;
  auto put = [&](const Mono& k, const mpq_class& v) {
    if (k.degree() > cutoff) {
      truncated = true;
      return;
    }
    acc(r, k, v);
  };
  for (const auto& [m, v] : x) {
    switch (g) {
      case 'F':
        put({m.a, m.b, m.c + 1}, v);
        break;
      case 'H':
        put({m.a, m.b + 1, m.c}, v);
        put({m.a, m.b, m.c}, 2 * m.c * v);
        break;
      case 'E': {
        // E^a H^b F^c E = sum_j C(b,j) 2^{b-j} E^{a+1} H^j F^c
        //   - c E^a H^{b+1} F^{c-1} - c(c-1) E^a H^b F^{c-1}.
        mpz_class binom = 1;
        mpz_class pow2;
        mpz_ui_pow_ui(pow2.get_mpz_t(), 2, m.b);
        for (int j = 0; j <= m.b; ++j) {
          put({m.a + 1, j, m.c}, v * mpq_class(binom * pow2));
          binom = binom * (m.b - j) / (j + 1);
          pow2 /= 2;
        }
        if (m.c > 0) {
          put({m.a, m.b + 1, m.c - 1}, -m.c * v);
          put({m.a, m.b, m.c - 1}, mpq_class(-m.c * (m.c - 1)) * v);
        }
        break;
      }
      default:
        throw error("defsolve: unknown generator");
    }
  }
  return r;
}

MonoMap mono_product(const Mono& x, const Mono& y, int cutoff, bool& truncated) {
  MonoMap r;
  if (x.degree() <= cutoff) r.emplace(x, 1);
  else truncated = true;
  for (int k = 0; k < y.a; ++k) r = rmul_gen(r, 'E', cutoff, truncated);
  for (int k = 0; k < y.b; ++k) r = rmul_gen(r, 'H', cutoff, truncated);
  for (int k = 0; k < y.c; ++k) r = rmul_gen(r, 'F', cutoff, truncated);
  return r;
}

void require_compatible(const PBWElement& a, const PBWElement& b) {
  if (a.legs != b.legs || a.cutoff != b.cutoff)
    throw error("defsolve: incompatible legs or cutoffs");
}

}  // namespace

std::string to_string(const Mono& m) {
  return "E^" + std::to_string(m.a) + " H^" + std::to_string(m.b) + " F^" +
         std::to_string(m.c);
}

PBWElement PBWElement::one(int legs, int cutoff) {
  PBWElement r(legs, cutoff);
  r.coeffs.emplace(std::vector<Mono>(legs), mpq_class(1));
  return r;
}

PBWElement PBWElement::gen(char g, int cutoff) {
  Mono m;
  if (g == 'E') m.a = 1;
  else if (g == 'H') m.b = 1;
  else if (g == 'F') m.c = 1;
  else throw error("defsolve: unknown generator");
  return monomial(m, cutoff);
}

PBWElement PBWElement::monomial(const Mono& m, int cutoff, mpq_class coeff) {
  PBWElement r(1, cutoff);
  r.add_term({m}, coeff);
  return r;
}

PBWElement PBWElement::casimir(int cutoff) {
  PBWElement e = gen('E', cutoff), h = gen('H', cutoff), f = gen('F', cutoff);
  return e * f + f * e + (h * h).scaled(mpq_class(1, 2));
}

bool PBWElement::is_one() const {
  return coeffs.size() == 1 && coeffs.begin()->first == std::vector<Mono>(legs) &&
         coeffs.begin()->second == 1;
}

void PBWElement::add_term(const std::vector<Mono>& key, const mpq_class& val) {
  if (static_cast<int>(key.size()) != legs)
    throw error("defsolve: monomial leg count mismatch");
  for (const Mono& m : key)
    if (m.degree() > cutoff) {
      truncated = true;
      return;
    }
  auto it = coeffs.find(key);
  if (it == coeffs.end()) {
    if (val != 0) coeffs.emplace(key, val);
  } else {
    it->second += val;
    if (it->second == 0) coeffs.erase(it);
  }
}

PBWElement PBWElement::operator+(const PBWElement& o) const {
  require_compatible(*this, o);
  PBWElement r = *this;
  r.truncated = truncated || o.truncated;
  for (const auto& [k, v] : o.coeffs) r.add_term(k, v);
  return r;
}

PBWElement PBWElement::operator-() const {
  PBWElement r = *this;
  for (auto& [k, v] : r.coeffs) v = -v;
  return r;
}

PBWElement PBWElement::operator-(const PBWElement& o) const { return *this + (-o); }

PBWElement PBWElement::scaled(const mpq_class& s) const {
  PBWElement r(legs, cutoff);
  r.truncated = truncated;
  if (s == 0) return r;
  r.coeffs = coeffs;
  for (auto& [k, v] : r.coeffs) v *= s;
  return r;
}

PBWElement PBWElement::operator*(const PBWElement& o) const {
  require_compatible(*this, o);
  PBWElement r(legs, cutoff);
  r.truncated = truncated || o.truncated;
  for (const auto& [k1, v1] : coeffs)
    for (const auto& [k2, v2] : o.coeffs) {
      // Per-leg PBW expansions, then their cartesian combination.
      std::vector<std::pair<std::vector<Mono>, mpq_class>> partial = {
          {{}, v1 * v2}};
      for (int l = 0; l < legs; ++l) {
        MonoMap leg = mono_product(k1[l], k2[l], cutoff, r.truncated);
        std::vector<std::pair<std::vector<Mono>, mpq_class>> next;
        next.reserve(partial.size() * leg.size());
        for (const auto& [key, val] : partial)
          for (const auto& [m, c] : leg) {
            std::vector<Mono> k = key;
            k.push_back(m);
            next.emplace_back(std::move(k), val * c);
          }
        partial = std::move(next);
      }
      for (const auto& [key, val] : partial) r.add_term(key, val);
    }
  return r;
}

PBWElement PBWElement::tensor(const PBWElement& o) const {
  if (cutoff != o.cutoff) throw error("defsolve: incompatible legs or cutoffs");
  PBWElement r(legs + o.legs, cutoff);
  r.truncated = truncated || o.truncated;
  for (const auto& [k1, v1] : coeffs)
    for (const auto& [k2, v2] : o.coeffs) {
      std::vector<Mono> k = k1;
      k.insert(k.end(), k2.begin(), k2.end());
      r.add_term(k, v1 * v2);
    }
  return r;
}

PBWElement PBWElement::flip() const {
  if (legs != 2) throw error("defsolve: flip needs two legs");
  PBWElement r(2, cutoff);
  r.truncated = truncated;
  for (const auto& [k, v] : coeffs) r.add_term({k[1], k[0]}, v);
  return r;
}

PBWElement classical_coproduct(const PBWElement& x) {
  if (x.legs != 1) throw error("defsolve: coproduct input must have one leg");
  PBWElement dE = PBWElement::gen('E', x.cutoff).tensor(PBWElement::one(1, x.cutoff)) +
                  PBWElement::one(1, x.cutoff).tensor(PBWElement::gen('E', x.cutoff));
  PBWElement dH = PBWElement::gen('H', x.cutoff).tensor(PBWElement::one(1, x.cutoff)) +
                  PBWElement::one(1, x.cutoff).tensor(PBWElement::gen('H', x.cutoff));
  PBWElement dF = PBWElement::gen('F', x.cutoff).tensor(PBWElement::one(1, x.cutoff)) +
                  PBWElement::one(1, x.cutoff).tensor(PBWElement::gen('F', x.cutoff));
  PBWElement r(2, x.cutoff);
  r.truncated = x.truncated;
  for (const auto& [k, v] : x.coeffs) {
    PBWElement t = PBWElement::one(2, x.cutoff);
    const Mono& m = k[0];
    for (int j = 0; j < m.a; ++j) t = t * dE;
    for (int j = 0; j < m.b; ++j) t = t * dH;
    for (int j = 0; j < m.c; ++j) t = t * dF;
    r = r + t.scaled(v);
  }
  return r;
}

PBWElement classical_del(const PBWElement& f) {
  PBWElement one = PBWElement::one(1, f.cutoff);
  return f.tensor(one) + one.tensor(f) - classical_coproduct(f);
}

namespace {

// Delta^{(legs-1)}(g) for a primitive generator: sum over leg positions of
// 1 (x) ... (x) g (x) ... (x) 1.
PBWElement primitive_spread(char g, int legs, int cutoff) {
  PBWElement r(legs, cutoff);
  for (int pos = 0; pos < legs; ++pos) {
    PBWElement t = pos == 0 ? PBWElement::gen(g, cutoff) : PBWElement::one(1, cutoff);
    for (int l = 1; l < legs; ++l)
      t = t.tensor(l == pos ? PBWElement::gen(g, cutoff) : PBWElement::one(1, cutoff));
    r = r + t;
  }
  return r;
}

}  // namespace

bool is_invariant(const PBWElement& x) {
  // The commutator with a degree-1 element has degree <= cutoff even when the
  // two products individually overflow: the overflowing top-degree parts agree
  // (leading symbols commute in the associated graded algebra), so the
  // truncated difference is still exact.
  for (char g : {'E', 'H', 'F'}) {
    PBWElement d = primitive_spread(g, x.legs, x.cutoff);
    if (!(x * d - d * x).is_zero()) return false;
  }
  return true;
}

PBWElement solve_coboundary(const PBWElement& phi) {
  if (phi.legs != 2) throw error("solve_coboundary: input must have two legs");
  if (phi != phi.flip()) throw error("solve_coboundary: cochain not symmetric");
  if (!is_invariant(phi)) throw error("solve_coboundary: cochain not invariant");

  // Invariant basis: powers of the Casimir within the degree cutoff.
  std::vector<PBWElement> basis, images;
  PBWElement cas = PBWElement::casimir(phi.cutoff);
  PBWElement p = PBWElement::one(1, phi.cutoff);
  for (int k = 0; 2 * k <= phi.cutoff; ++k) {
    basis.push_back(p);
    images.push_back(classical_del(p));
    if (2 * (k + 1) <= phi.cutoff) p = p * cas;
  }
  size_t n = basis.size();

  // Dense exact rational solve: rows are two-leg monomials, columns the basis.
  std::map<std::vector<Mono>, size_t> row_of;
  for (const auto& img : images)
    for (const auto& [k, v] : img.coeffs) row_of.emplace(k, row_of.size());
  for (const auto& [k, v] : phi.coeffs)
    if (!row_of.count(k))
      throw error("solve_coboundary: no invariant solution within degree cutoff " +
                  std::to_string(phi.cutoff));
  std::vector<std::vector<mpq_class>> a(row_of.size(),
                                        std::vector<mpq_class>(n + 1, 0));
  for (size_t j = 0; j < n; ++j)
    for (const auto& [k, v] : images[j].coeffs) a[row_of.at(k)][j] = v;
  for (const auto& [k, v] : phi.coeffs) a[row_of.at(k)][n] = v;

  std::vector<size_t> pivot_row(n);
  size_t rank = 0;
  for (size_t col = 0; col < n; ++col) {
    size_t piv = rank;
    while (piv < a.size() && a[piv][col] == 0) ++piv;
    if (piv == a.size())
      throw error("solve_coboundary: internal error, dependent invariant basis");
    std::swap(a[piv], a[rank]);
    for (size_t i = 0; i < a.size(); ++i) {
      if (i == rank || a[i][col] == 0) continue;
      mpq_class f = a[i][col] / a[rank][col];
      for (size_t j = col; j <= n; ++j) a[i][j] -= f * a[rank][j];
    }
    pivot_row[col] = rank++;
  }
  for (size_t i = rank; i < a.size(); ++i)
    if (a[i][n] != 0)
      throw error("solve_coboundary: no invariant solution within degree cutoff " +
                  std::to_string(phi.cutoff));

  PBWElement f(1, phi.cutoff);
  for (size_t j = 0; j < n; ++j) {
    mpq_class x = a[pivot_row[j]][n] / a[pivot_row[j]][j];
    f = f + basis[j].scaled(x);
  }
  return f;
}

FormalSeries series_one(int legs, int cutoff, int n_orders) {
  FormalSeries s;
  s.orders.assign(n_orders, PBWElement(legs, cutoff));
  if (n_orders > 0) s.orders[0] = PBWElement::one(legs, cutoff);
  return s;
}

FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b) {
  FormalSeries r;
  int n = std::min(a.size(), b.size());
  r.truncated = a.truncated || b.truncated;
  for (int k = 0; k < n; ++k) {
    PBWElement acc_k(a.orders[0].legs, a.orders[0].cutoff);
    for (int i = 0; i <= k; ++i) acc_k = acc_k + a.orders[i] * b.orders[k - i];
    r.truncated = r.truncated || acc_k.truncated;
    r.orders.push_back(std::move(acc_k));
  }
  return r;
}

FormalSeries series_inverse(const FormalSeries& a) {
  if (a.size() == 0 || !a.orders[0].is_one())
    throw error("defsolve: series inverse needs identity order-0 part");
  FormalSeries r;
  r.truncated = a.truncated;
  r.orders.push_back(a.orders[0]);
  for (int k = 1; k < a.size(); ++k) {
    PBWElement x(a.orders[0].legs, a.orders[0].cutoff);
    for (int i = 1; i <= k; ++i) x = x - a.orders[i] * r.orders[k - i];
    r.truncated = r.truncated || x.truncated;
    r.orders.push_back(std::move(x));
  }
  return r;
}

FormalSeries series_tensor_square(const FormalSeries& c) {
  FormalSeries left, right;
  PBWElement one = PBWElement::one(1, c.orders.at(0).cutoff);
  for (const PBWElement& x : c.orders) {
    left.orders.push_back(x.tensor(one));
    right.orders.push_back(one.tensor(x));
  }
  left.truncated = right.truncated = c.truncated;
  return series_mul(left, right);
}

DeltaTable DeltaTable::classical(int cutoff, int n_orders) {
  DeltaTable t;
  t.cutoff = cutoff;
  t.delta.resize(n_orders + 1);
  for (int a = 0; a <= cutoff; ++a)
    for (int b = 0; a + b <= cutoff; ++b)
      for (int c = 0; a + b + c <= cutoff; ++c) {
        Mono m{a, b, c};
        t.delta[0].emplace(m, classical_coproduct(PBWElement::monomial(m, cutoff)));
      }
  return t;
}

PBWElement apply_delta(const DeltaTable& dh, int order, const PBWElement& x, int leg) {
  if (leg < 0 || leg >= x.legs) throw error("defsolve: bad leg index");
  if (order < 0 || order > dh.max_order())
    throw error("defsolve: coproduct table order out of range");
  PBWElement r(x.legs + 1, x.cutoff);
  r.truncated = x.truncated;
  const auto& table = dh.delta[order];
  for (const auto& [k, v] : x.coeffs) {
    auto it = table.find(k[leg]);
    if (it == table.end()) {
      if (order == 0)
        throw error("defsolve: coproduct table missing " + to_string(k[leg]));
      continue;  // absent higher-order entries are zero
    }
    for (const auto& [dk, dv] : it->second.coeffs) {
      std::vector<Mono> key;
      key.reserve(k.size() + 1);
      key.insert(key.end(), k.begin(), k.begin() + leg);
      key.push_back(dk[0]);
      key.push_back(dk[1]);
      key.insert(key.end(), k.begin() + leg + 1, k.end());
      r.add_term(key, v * dv);
    }
  }
  return r;
}

FormalSeries apply_delta_series(const DeltaTable& dh, const FormalSeries& c, int leg) {
  FormalSeries r;
  r.truncated = c.truncated;
  for (int n = 0; n < c.size(); ++n) {
    PBWElement x(c.orders[0].legs + 1, c.orders[0].cutoff);
    for (int i = 0; i <= std::min(n, dh.max_order()); ++i)
      x = x + apply_delta(dh, i, c.orders[n - i], leg);
    r.truncated = r.truncated || x.truncated;
    r.orders.push_back(std::move(x));
  }
  return r;
}

FormalCochain coboundary_series(const DeltaTable& dh, const FormalSeries& c) {
  if (c.size() == 0 || c.orders[0].legs != 1 || !c.orders[0].is_one())
    throw error("defsolve: coboundary needs a one-leg series starting at 1");
  return series_mul(series_tensor_square(c),
                    series_inverse(apply_delta_series(dh, c, 0)));
}

namespace {

void check_table_coassociative(const DeltaTable& dh, int n_order) {
  for (const auto& [m, d0] : dh.delta[0]) {
    for (int n = 0; n <= std::min(n_order, dh.max_order()); ++n) {
      PBWElement lhs(3, dh.cutoff), rhs(3, dh.cutoff);
      for (int i = 0; i + 0 <= n && i <= dh.max_order(); ++i) {
        int j = n - i;
        if (j > dh.max_order()) continue;
        auto it = dh.delta[j].find(m);
        if (it == dh.delta[j].end()) continue;
        lhs = lhs + apply_delta(dh, i, it->second, 0);
        rhs = rhs + apply_delta(dh, i, it->second, 1);
      }
      if (lhs != rhs)
        throw error("deformation_solve: coproduct table not coassociative at order " +
                    std::to_string(n) + " on " + to_string(m));
    }
  }
}

}  // namespace

DefsolveResult deformation_solve(const FormalCochain& e, const DeltaTable& dh,
                                 int n_order) {
  if (e.size() < n_order + 1)
    throw error("deformation_solve: cochain has too few orders");
  if (e.orders[0].legs != 2 || !e.orders[0].is_one())
    throw error("deformation_solve: cochain is not 1 (x) 1 mod h");
  int cutoff = e.orders[0].cutoff;
  check_table_coassociative(dh, n_order);

  DefsolveResult res;
  res.truncated = e.truncated;

  // Order-wise hypotheses modulo h^{N+1}: symmetry, invariance under the
  // deformed coproduct, and the 2-cocycle condition.
  for (int n = 0; n <= n_order; ++n)
    if (e.orders[n] != e.orders[n].flip())
      throw error("deformation_solve: cochain not symmetric at order " +
                  std::to_string(n));
  FormalCochain etrunc;
  etrunc.orders.assign(e.orders.begin(), e.orders.begin() + n_order + 1);
  for (char g : {'E', 'H', 'F'}) {
    FormalSeries sg;
    sg.orders.assign(n_order + 1, PBWElement(1, cutoff));
    sg.orders[0] = PBWElement::gen(g, cutoff);
    FormalSeries dg = apply_delta_series(dh, sg, 0);
    // As in is_invariant, the commutator is exact despite truncation.
    FormalSeries comm = series_mul(etrunc, dg);
    FormalSeries comm2 = series_mul(dg, etrunc);
    for (int n = 0; n <= n_order; ++n)
      if (comm.orders[n] != comm2.orders[n])
        throw error("deformation_solve: cochain not invariant at order " +
                    std::to_string(n));
  }
  {
    PBWElement one1 = PBWElement::one(1, cutoff);
    FormalSeries e_1, one_e;
    for (const PBWElement& x : etrunc.orders) {
      e_1.orders.push_back(x.tensor(one1));
      one_e.orders.push_back(one1.tensor(x));
    }
    FormalSeries lhs = series_mul(e_1, apply_delta_series(dh, etrunc, 0));
    FormalSeries rhs = series_mul(one_e, apply_delta_series(dh, etrunc, 1));
    res.truncated = res.truncated || lhs.truncated || rhs.truncated;
    for (int n = 0; n <= n_order; ++n)
      if (lhs.orders[n] != rhs.orders[n])
        throw error("deformation_solve: cocycle condition fails at order " +
                    std::to_string(n));
  }

  // Induction c_n = (1 + h^n f) c_{n-1}.
  FormalSeries c = series_one(1, cutoff, n_order + 1);
  for (int n = 1; n <= n_order; ++n) {
    FormalCochain g = coboundary_series(dh, c);
    res.truncated = res.truncated || g.truncated;
    PBWElement phi = etrunc.orders[n] - g.orders[n];
    if (phi != phi.flip())
      throw error("deformation_solve: extracted cochain not symmetric at order " +
                  std::to_string(n));
    if (!is_invariant(phi))
      throw error("deformation_solve: extracted cochain not invariant at order " +
                  std::to_string(n));
    PBWElement f = solve_coboundary(phi);
    FormalSeries step = series_one(1, cutoff, n_order + 1);
    step.orders[n] = f;
    c = series_mul(step, c);
  }

  // Re-verify by direct series multiplication: (c (x) c) = E Delta_h(c), and
  // centrality of every order.
  FormalSeries lhs = series_tensor_square(c);
  FormalSeries rhs = series_mul(etrunc, apply_delta_series(dh, c, 0));
  res.truncated = res.truncated || lhs.truncated || rhs.truncated;
  for (int n = 0; n <= n_order; ++n)
    if (lhs.orders[n] != rhs.orders[n])
      throw error("deformation_solve: verification failed at order " +
                  std::to_string(n));
  for (int n = 0; n <= n_order; ++n)
    if (!is_invariant(c.orders[n]))
      throw error("deformation_solve: result not central at order " +
                  std::to_string(n));
  res.c = std::move(c);
  return res;
}

}  // namespace qct
