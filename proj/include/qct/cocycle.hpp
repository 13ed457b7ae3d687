#pragma once

#include <array>
#include <utility>

#include "qct/intertwine.hpp"

// Invariant 2-cochains on pairs of modules and the calculus around them:
// coboundaries of central elements, the cochain group operations, and the
// cocycle / symmetry / invariance / counitality checks.  A cochain is stored
// only on irreducible pairs; its action on composite modules is always derived
// through decomposition certificates.

namespace qct {

// Invertible central element, determined by the scalar by which it acts on
// each irreducible.  Missing weights are treated as outside the cutoff and
// produce a loud error rather than an implicit value.
struct CentralElement {
  std::map<Weight, Scalar> values;

  const Scalar& value(const Weight& mu) const;
  bool covers(const Weight& mu) const { return values.count(mu) != 0; }
};

// The constant-1 central element on the given support.
CentralElement central_one(const std::vector<Weight>& support);
CentralElement central_mul(const CentralElement& a, const CentralElement& b);
CentralElement central_inv(const CentralElement& a);

// Action of a central element on an arbitrary module: scalar c(hw) on each
// irreducible summand, assembled through a decomposition certificate.
SMat central_action(Context& ctx, const CentralElement& c, const ModulePtr& m);

using WPair = std::pair<Weight, Weight>;

struct InvariantTwoCochain {
  // Block at (mu, eta) is an invertible matrix on V_mu (x) V_eta commuting
  // with the whole diagonal action.
  std::map<WPair, SMat> blocks;

  const SMat& block(const Weight& mu, const Weight& eta) const;
  std::vector<WPair> pairs() const;
};

// Validating constructor: asserts each block commutes with the tensor action
// of every generator (including weight preservation) and is invertible.
InvariantTwoCochain make_invariant_cochain(Context& ctx, std::map<WPair, SMat> blocks);
// The unit cochain on the given pair list.
InvariantTwoCochain identity_cochain(Context& ctx, const std::vector<WPair>& pairs);

// Coboundary of a central element: the block at (mu, eta) acts on the
// isotypic component of highest weight nu by c(mu) c(eta) c(nu)^{-1}.
// (With c diagonal, this is (c (x) c) applied before the inverse of the
// coproduct action of c; the reciprocal convention would give the inverse
// cochain.  All downstream scalar extraction documents this orientation.)
InvariantTwoCochain coboundary_of_central(Context& ctx, const CentralElement& c,
                                          const std::vector<WPair>& pairs);

// Action of a cochain on U (x) V for arbitrary modules U, V: decompose both
// legs and conjugate the stored blocks through the embedding / projection
// certificates.  Errors when a needed block is missing, naming the pair.
SMat act_on_pair(Context& ctx, const InvariantTwoCochain& e, const ModulePtr& u,
                 const ModulePtr& v);

struct CochainReport {
  struct Entry {
    std::string name;
    std::string params;
    bool pass;
  };
  std::vector<Entry> entries;
  bool all_pass() const;
  std::string first_failure() const;  // "" when everything passed
};

// Cocycle identity (E (x) 1)(Dhat (x) i)(E) = (1 (x) E)(i (x) Dhat)(E) as an
// exact matrix equality on V_mu (x) V_eta (x) V_nu for each listed triple.
CochainReport check_cocycle(Context& ctx, const InvariantTwoCochain& e,
                            const std::vector<std::array<Weight, 3>>& triples);
// R E = E_21 R on every stored pair (requires the transposed pair stored too).
CochainReport check_symmetric(Context& ctx, const InvariantTwoCochain& e);
// Exact commutation of every block with the coproducts of the generators.
CochainReport check_invariant(Context& ctx, const InvariantTwoCochain& e);
// Blocks at (0, eta) and (mu, 0) are identity.
CochainReport check_counital(Context& ctx, const InvariantTwoCochain& e);

// Blockwise product and inverse (matching key sets required).
InvariantTwoCochain cochain_mul(Context& ctx, const InvariantTwoCochain& a,
                                const InvariantTwoCochain& b);
InvariantTwoCochain cochain_inv(Context& ctx, const InvariantTwoCochain& a);

// Four-leg compatibility of the cochain with the doubled coproduct:
//   (Dhat (x) Dhat)(E) =
//     (1 (x) E (x) 1) (1 (x) (Dhat (x) i)(E)) (i (x) Dhat2)(E) (E^-1 (x) E^-1)
// checked exactly on V_mu (x) V_eta (x) V_mu' (x) V_eta'.
CochainReport check_eCoDhat(Context& ctx, const InvariantTwoCochain& e, const WPair& left,
                            const WPair& right);

}  // namespace qct
