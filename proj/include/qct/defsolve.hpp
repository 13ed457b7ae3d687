#pragma once

#include <gmpxx.h>

#include <compare>
#include <map>
#include <string>
#include <vector>

#include "qct/scalar.hpp"

// Order-by-order construction, in the formal deformation setting, of a central
// element c in (truncated) U(sl2)[[h]] with E = (c (x) c) Delta_h(c)^{-1}.
// Everything is exact: PBW coefficients are arbitrary-precision rationals and
// truncation (PBW degree D, h-order N) is tracked by explicit flags — a
// flagged run is inconclusive, never silently wrong.

namespace qct {

// PBW monomial E^a H^b F^c of the classical enveloping algebra U(sl2).
struct Mono {
  int a = 0, b = 0, c = 0;
  int degree() const { return a + b + c; }
  auto operator<=>(const Mono&) const = default;
};

std::string to_string(const Mono& m);

// Element of U(sl2)^{(x) legs}, truncated at PBW degree <= cutoff on each leg.
// Products are reduced to PBW form via the sl2 commutation relations; any term
// whose degree overflows the cutoff is dropped and the `truncated` flag is set.
// Invariant: stored coefficients are nonzero and every leg obeys the cutoff.
struct PBWElement {
  int legs = 1;
  int cutoff = 0;
  bool truncated = false;
  std::map<std::vector<Mono>, mpq_class> coeffs;

  PBWElement() = default;
  PBWElement(int legs_, int cutoff_) : legs(legs_), cutoff(cutoff_) {}

  static PBWElement one(int legs, int cutoff);
  // Single-leg generator, g in {'E', 'H', 'F'}.
  static PBWElement gen(char g, int cutoff);
  // Casimir EF + FE + H^2/2 (degree 2).
  static PBWElement casimir(int cutoff);
  // Single-leg basis monomial.
  static PBWElement monomial(const Mono& m, int cutoff, mpq_class coeff = 1);

  bool is_zero() const { return coeffs.empty(); }
  bool is_one() const;

  // Accumulate coeff * monomial, enforcing the cutoff and zero-erasure.
  void add_term(const std::vector<Mono>& key, const mpq_class& val);

  PBWElement operator+(const PBWElement& o) const;
  PBWElement operator-(const PBWElement& o) const;
  PBWElement operator-() const;
  PBWElement operator*(const PBWElement& o) const;  // leg-wise PBW product
  PBWElement scaled(const mpq_class& s) const;

  PBWElement tensor(const PBWElement& o) const;  // concatenate legs
  PBWElement flip() const;                       // swap the two legs (legs == 2)

  bool operator==(const PBWElement& o) const {
    return legs == o.legs && coeffs == o.coeffs;
  }
  bool operator!=(const PBWElement& o) const { return !(*this == o); }
};

// Classical coproduct: the algebra map with E, H, F primitive.  Takes a
// single-leg element to a two-leg element with the same cutoff.
PBWElement classical_coproduct(const PBWElement& x);

// Coboundary of a single-leg element: f (x) 1 + 1 (x) f - Delta(f).
PBWElement classical_del(const PBWElement& f);

// Whether [x, Delta^{legs-1}(g)] = 0 for all generators g (for legs == 1 this
// is centrality in U(sl2)).
bool is_invariant(const PBWElement& x);

// Solve f (x) 1 + 1 (x) f - Delta(f) = phi for a g-invariant f of degree
// <= phi.cutoff.  Preconditions (thrown as errors): phi symmetric and
// invariant.  The invariant subspace of U(sl2) is the polynomial algebra on
// the Casimir and contains no nonzero primitives, so the coboundary operator
// is injective on it and the solution is unique — in particular of minimal
// degree.  Throws when no invariant solution exists within the cutoff (raise
// the cutoff and retry).
PBWElement solve_coboundary(const PBWElement& phi);

// h-adic series: orders[n] is the coefficient of h^n.  All orders share the
// same legs and cutoff.
struct FormalSeries {
  std::vector<PBWElement> orders;
  bool truncated = false;

  int size() const { return static_cast<int>(orders.size()); }
  bool operator==(const FormalSeries& o) const { return orders == o.orders; }
};

// Two-leg series with orders[0] = 1 (x) 1; the invariant symmetric 2-cochain
// of the deformation problem.
using FormalCochain = FormalSeries;

FormalSeries series_one(int legs, int cutoff, int n_orders);
FormalSeries series_mul(const FormalSeries& a, const FormalSeries& b);
// Inverse of a series whose order-0 part is the identity element.
FormalSeries series_inverse(const FormalSeries& a);
// (c (x) c) for a single-leg series c.
FormalSeries series_tensor_square(const FormalSeries& c);

// Deformed coproduct given as an explicit per-order table on basis monomials:
// delta[n] maps a single-leg monomial to the two-leg coefficient of h^n in
// Delta_h(monomial).  Order 0 must be total on monomials of degree <= cutoff;
// a monomial missing from a higher order means zero.
struct DeltaTable {
  int cutoff = 0;
  std::vector<std::map<Mono, PBWElement>> delta;

  int max_order() const { return static_cast<int>(delta.size()) - 1; }
  // Classical table: order 0 is the classical coproduct, higher orders vanish.
  static DeltaTable classical(int cutoff, int n_orders);
};

// Apply the order-`order` component of the table to leg `leg` of x, producing
// an element with one more leg.
PBWElement apply_delta(const DeltaTable& dh, int order, const PBWElement& x, int leg);
// Delta_h applied to a series order-wise: result_n = sum_{i+j=n} Delta_i(c_j).
FormalSeries apply_delta_series(const DeltaTable& dh, const FormalSeries& c, int leg);

// Coboundary of a single-leg series under the table:
// (c (x) c) Delta_h(c)^{-1}, truncated to the length of c.  c.orders[0] must
// be 1.  This is also the oracle used to build test inputs.
FormalCochain coboundary_series(const DeltaTable& dh, const FormalSeries& c);

struct DefsolveResult {
  FormalSeries c;        // central, c = 1 mod h
  bool truncated = false;  // any PBW-degree overflow along the way
};

// Appendix-style induction: given a two-leg series E with E = 1 (x) 1 mod h
// that is symmetric, invariant and a 2-cocycle order-wise modulo h^{N+1}
// (all three checked, as is coassociativity of the table to order N), build
// central c = 1 mod h with E = (c (x) c) Delta_h(c)^{-1} mod h^{N+1} via
// c_n = (1 + h^n f) c_{n-1}.  The result is re-verified by direct series
// multiplication and order-wise centrality before returning.
DefsolveResult deformation_solve(const FormalCochain& e, const DeltaTable& dh, int n_order);

}  // namespace qct
