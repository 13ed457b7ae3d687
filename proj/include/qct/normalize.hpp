#pragma once

#include <optional>

#include "qct/cocycle.hpp"

// Normalization pipeline: extract the scalars by which a symmetric invariant
// cochain acts on highest-weight lines and on the tau-images, trivialize them
// by twisting with coboundaries of central elements, and verify that the
// normalized cochain is the identity.
//
// Twist orientation: one pipeline stage replaces E by
//     E' = E * d(u) = (u (x) u) E Delta(u)^{-1},   u central,
// and the pipeline reports c_total = u_total^{-1} for the accumulated twist,
// so that E = d(c_total) * E_norm blockwise.  In particular, when E_norm is
// trivial, E is exactly the coboundary of c_total (as produced by
// coboundary_of_central), and for E = d(c0) the ratio c_total * c0^{-1} is a
// character of P/Q.

namespace qct {

// Scalar-valued symmetric 2-cocycle on dominant weights: the family
// E(mu,eta) by which the cochain acts on the highest-weight line of
// V_mu (x) V_eta.
struct PPlusCocycle {
  std::map<WPair, Scalar> values;
  const Scalar& value(const Weight& mu, const Weight& eta) const;
};

// Multiplicative character of the weight lattice, produced from the constant
// tau-scalars.  Values are kept in monomial form rational * v^k; only such
// characters extend to P inside Q(v).
struct LatticeCharacter {
  std::vector<Scalar> alpha_values;  // chi(alpha_i)
  // Monomial decomposition chi(alpha_i) = alpha_rat[i] * v^alpha_exp[i];
  // empty when some value is not a monomial.
  std::vector<mpq_class> alpha_rat;
  std::vector<long> alpha_exp;
  bool monomial = false;
  // Extension to P: chi(omega_j) = omega_rat[j] * v^omega_exp[j].
  std::vector<mpq_class> omega_rat;
  std::vector<long> omega_exp;
  bool extended = false;

  Scalar omega_value(int j) const;
  // chi evaluated multiplicatively on an arbitrary integral weight.
  Scalar eval(const Weight& w) const;
  bool is_trivial() const;
};

// The unique scalar with E T_{mu,eta} = s T_{mu,eta}; exact proportionality
// is asserted (failure means the block is not invariant — internal error).
Scalar extract_highest_scalar(Context& ctx, const InvariantTwoCochain& e, const Weight& mu,
                              const Weight& eta);
// The unique scalar with E tau_{i;mu,eta} = s tau_{i;mu,eta}; needs
// mu(i), eta(i) >= 1.
Scalar extract_tau_scalar(Context& ctx, const InvariantTwoCochain& e, int i, const Weight& mu,
                          const Weight& eta);

// All highest scalars of e, with the symmetry and scalar cocycle identity
// asserted wherever the participating pairs are stored.
PPlusCocycle extract_pplus(Context& ctx, const InvariantTwoCochain& e);

// Central element c with c(omega_i) = 1 and c(mu+eta) = c(mu) c(eta) E(mu,eta)
// on every weight reachable from the pair set; c(0) = E(0,0)^{-1} (which is 1
// for counital input).  Path-independence of the extension is asserted;
// violation means the input was not a cocycle.
CentralElement solve_pplus_coboundary(const RootDatum& rd, const PPlusCocycle& ep);

// E * d(u) = (u (x) u) E Delta(u)^{-1} blockwise; the two evaluation paths
// (block product with coboundary_of_central vs. scaling and central_action)
// are compared as a cohomologousness witness.
InvariantTwoCochain twist_by_central(Context& ctx, const InvariantTwoCochain& e,
                                     const CentralElement& u);

// Requires all highest scalars of e to be 1 (asserted).  The tau-scalars are
// then independent of (mu, eta) per simple root (asserted across all
// admissible stored pairs) and chi(alpha_i) is their inverse.
LatticeCharacter build_character(Context& ctx, const InvariantTwoCochain& e);

// Extend chi from Q to P in the monomial case and restrict to the listed
// dominant weights.  Throws a non-monomial-character error when the extension
// would require adjoining roots of v or of rationals.
CentralElement extend_to_P(const RootDatum& rd, LatticeCharacter& chi,
                           const std::vector<Weight>& support);

struct NormalizeResult {
  InvariantTwoCochain e_norm;
  CentralElement c_total;  // E = d(c_total) * E_norm blockwise
  PPlusCocycle stage1_scalars;
  LatticeCharacter character;
};

// Full pipeline.  Preconditions (invariance, symmetry) are re-asserted here;
// the matrix-level cocycle identity is the caller's responsibility (it needs
// a choice of triples).  Postconditions asserted: all highest scalars and all
// tau-scalars of e_norm are 1.
NormalizeResult normalize(Context& ctx, const InvariantTwoCochain& e);

// Brute force: every stored block equals the identity.
CochainReport verify_trivial(Context& ctx, const InvariantTwoCochain& e);

// A1 only.  Step-by-step triviality: base blocks (0,t) are identity, the
// intertwining relation (T_{1/2,s} (x) i) E = (1 (x) E) (T_{1/2,s} (x) i)
// holds at every stage, and the induction conclusion agrees block-for-block
// with verify_trivial.
CochainReport su2_induction(Context& ctx, const InvariantTwoCochain& e);

// The character index k with c(mu) = zeta^{k res(mu)} when c is a character
// of P/Q representable over Q(v); nullopt otherwise.
std::optional<RootDatum::PQCharacter> is_pq_character(const RootDatum& rd,
                                                      const CentralElement& c);

}  // namespace qct
