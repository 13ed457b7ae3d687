#pragma once

#include <mutex>
#include <tuple>

#include "qct/module.hpp"

// Morphisms between modules.  Everything is produced by a single
// cyclic-vector extension solver: a module map out of a module with a cyclic
// vector is pinned by the image of that vector.

namespace qct {

struct Intertwiner {
  ModulePtr domain, codomain;
  SMat matrix;
  std::string provenance;
};

// Sparse vector in a module.
using SVec = std::map<int, Scalar>;

// Key for cached modules: the irreducible with highest weight w, or its
// conjugate.
struct ModKey {
  Weight w;
  bool conj = false;
  bool operator<(const ModKey& o) const { return std::tie(conj, w) < std::tie(o.conj, o.w); }
};

struct DecompositionCertificate {
  struct Summand {
    Weight hw;
    std::vector<Intertwiner> embeddings;   // V_hw -> V, one per multiplicity
    std::vector<Intertwiner> projections;  // V -> V_hw, dual block rows
  };
  std::vector<Summand> summands;
  int multiplicity(const Weight& hw) const;
};

// Shared cache for one root datum.  All builders below go through it so that
// a morphism for a given parameter tuple is computed exactly once per run.
class Context {
 public:
  explicit Context(RootDatum rd) : rd_(std::move(rd)) {}
  const RootDatum& rd() const { return rd_; }

  ModulePtr irrep(const Weight& lam);
  ModulePtr conj_irrep(const Weight& lam);
  ModulePtr module(const ModKey& k);
  // Cached tensor product of two cached modules (identity-pointer keyed).
  ModulePtr tensor2(const ModulePtr& a, const ModulePtr& b);
  // Cached decomposition certificate, keyed by module identity.
  const DecompositionCertificate& decomposition(const ModulePtr& v);

 private:
  // Recursive: builders nest (tr uses T-bar, T, S; m uses the braiding; ...).
  template <typename K, typename V, typename F>
  const V& memo(std::map<K, V>& cache, const K& key, F&& make) {
    std::lock_guard<std::recursive_mutex> lock(mu_);
    auto it = cache.find(key);
    if (it == cache.end()) it = cache.emplace(key, make()).first;
    return it->second;
  }

  RootDatum rd_;
  std::recursive_mutex mu_;
  std::map<Weight, ModulePtr> irreps_, conjs_;
  std::map<std::pair<const ModuleRep*, const ModuleRep*>, ModulePtr> tensors_;
  std::map<std::pair<Weight, Weight>, Intertwiner> t_, tbar_;
  std::map<std::tuple<int, Weight, Weight>, Intertwiner> tau_, taubar_;
  std::map<Weight, Intertwiner> s_;
  std::map<std::tuple<Weight, Weight, Weight>, Intertwiner> tr_;
  std::map<std::pair<ModKey, ModKey>, Intertwiner> r_, braid_;
  std::map<std::tuple<Weight, Weight, Weight, Weight>, Intertwiner> m_;
  std::map<std::tuple<int, Weight, Weight, Weight>, Intertwiner> psi_, phi_;
  std::map<ModulePtr, DecompositionCertificate> decomps_;

  friend const Intertwiner& build_T(Context&, const Weight&, const Weight&);
  friend const Intertwiner& build_Tbar(Context&, const Weight&, const Weight&);
  friend const Intertwiner& build_tau(Context&, int, const Weight&, const Weight&);
  friend const Intertwiner& build_taubar(Context&, int, const Weight&, const Weight&);
  friend const Intertwiner& build_S(Context&, const Weight&);
  friend const Intertwiner& build_tr(Context&, const Weight&, const Weight&, const Weight&);
  friend const Intertwiner& build_R(Context&, const ModKey&, const ModKey&);
  friend const Intertwiner& build_braiding(Context&, const ModKey&, const ModKey&);
  friend const Intertwiner& build_m(Context&, const Weight&, const Weight&, const Weight&,
                                    const Weight&);
  friend const Intertwiner& build_Psi(Context&, int, const Weight&, const Weight&, const Weight&);
  friend const Intertwiner& build_Phi(Context&, int, const Weight&, const Weight&, const Weight&);
  friend const DecompositionCertificate& pair_decomposition(Context&, const Weight&,
                                                            const Weight&);
};

// The unique module map D -> C sending the cyclic basis vector to `image`.
// Propagates generator words with exact span reduction; throws
// "no such morphism" when the induced system is inconsistent and "not cyclic"
// when the propagation does not span D.
Intertwiner extend_from_cyclic(const ModulePtr& d, const ModulePtr& c, int cyclic_index,
                               const SVec& image, std::string provenance);

// Exact post-construction check: the matrix commutes with every E_i and F_i
// and preserves weights.
bool is_intertwiner(const Intertwiner& f);

// Flip U (x) V -> V (x) U as a permutation matrix (du, dv are the dimensions).
SMat flip_matrix(int du, int dv);

// Index of the unique lowest/highest weight basis vector of an irreducible
// (or conjugate-of-irreducible) module.
int lowest_weight_index(const ModuleRep& v);
int highest_weight_index(const ModuleRep& v);

// T_{mu,eta}: V_{mu+eta} -> V_mu (x) V_eta, xi -> xi (x) xi.
const Intertwiner& build_T(Context& ctx, const Weight& mu, const Weight& eta);
// Conjugate version on the V-bar's.
const Intertwiner& build_Tbar(Context& ctx, const Weight& mu, const Weight& eta);
// tau_{i;mu,eta}: V_{mu+eta-alpha_i} -> V_mu (x) V_eta; needs mu(i),eta(i) >= 1.
const Intertwiner& build_tau(Context& ctx, int i, const Weight& mu, const Weight& eta);
// taubar_{i;mu,eta} on conjugates; equals flip . tau_{i;eta,mu}.
const Intertwiner& build_taubar(Context& ctx, int i, const Weight& mu, const Weight& eta);
// S_mu: V-bar_mu (x) V_mu -> V_0, the invariant functional with S(xi-bar (x) xi) = 1.
const Intertwiner& build_S(Context& ctx, const Weight& mu);
// tr^eta_{mu,lam+mu}: V-bar_{mu+eta} (x) V_{lam+mu+eta} -> V-bar_mu (x) V_{lam+mu}.
const Intertwiner& build_tr(Context& ctx, const Weight& eta, const Weight& mu, const Weight& lam);
// R on module(a) (x) module(b): intertwines the coproduct with the opposite
// coproduct, normalized on (lowest (x) highest) by q^{(lowest wt, highest wt)}.
const Intertwiner& build_R(Context& ctx, const ModKey& a, const ModKey& b);
// Braiding sigma = flip . R : module(a) (x) module(b) -> module(b) (x) module(a).
const Intertwiner& build_braiding(Context& ctx, const ModKey& a, const ModKey& b);
// m_{mu,eta,lam1,lam2}: V-bar_{mu+eta} (x) V_{lam1+lam2+mu+eta}
//   -> V-bar_mu (x) V_{lam1+mu} (x) V-bar_eta (x) V_{lam2+eta}.
const Intertwiner& build_m(Context& ctx, const Weight& mu, const Weight& eta, const Weight& lam1,
                           const Weight& lam2);
// Psi^eta_{i;mu,lam+alpha_i+mu}: V-bar_{mu+eta} (x) V_{lam+mu+eta}
//   -> V-bar_mu (x) V_{lam+alpha_i+mu}; needs eta(i) >= 1.
const Intertwiner& build_Psi(Context& ctx, int i, const Weight& eta, const Weight& mu,
                             const Weight& lam);
// Phi^eta_{i;mu+alpha_i,lam+mu}: V-bar_{mu+eta} (x) V_{lam+mu+eta}
//   -> V-bar_{mu+alpha_i} (x) V_{lam+mu}; needs eta(i) >= 1.
const Intertwiner& build_Phi(Context& ctx, int i, const Weight& eta, const Weight& mu,
                             const Weight& lam);

// Complete decomposition of a module into irreducibles with embedding and
// projection certificates.
DecompositionCertificate decompose(Context& ctx, const ModulePtr& v);
// Cached decomposition of V_mu (x) V_eta.
const DecompositionCertificate& pair_decomposition(Context& ctx, const Weight& mu,
                                                   const Weight& eta);

struct TauTReport {
  bool identity1, identity2;
  SMat residual1, residual2;
};
// The two (tau,T) exchange identities as exact matrix equalities.
TauTReport verify_tauT_identities(Context& ctx, int i, const Weight& mu, const Weight& eta,
                                  const Weight& nu);

}  // namespace qct
