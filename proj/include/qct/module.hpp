#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "qct/linalg.hpp"
#include "qct/rootdata.hpp"

// Finite-dimensional admissible modules over the quantized enveloping algebra,
// stored as weight-graded sparse generator matrices.  K_i never appears as
// stored data: it acts on a basis vector of weight lambda by q_i^{lambda(i)}.

namespace qct {

struct ModuleRep {
  RootDatum rd = RootDatum::A1();
  std::vector<Weight> wts;  // weight of each basis vector
  std::vector<SMat> E, F;   // one matrix per simple root
  // Highest weight plus distinguished vector index, set for build_irrep output.
  std::optional<Weight> hw;
  // Index of the distinguished cyclic vector: the highest-weight vector for an
  // irreducible, its conjugate (a lowest-weight vector) for a conjugate module.
  int dist = -1;

  int dim() const { return static_cast<int>(wts.size()); }
  // Diagonal action of K_i^{sign}.
  SMat K(int i, int sign = 1) const;
  // Multiplicity of each weight.
  std::map<Weight, int> weight_multiplicities() const;
};

using ModulePtr = std::shared_ptr<const ModuleRep>;

// Irreducible with highest weight lam (dominant).  A1 uses the q-deformed
// ladder formulas; A2 closes the cyclic vector inside a tensor power of the
// two 3-dimensional fundamental representations.  Basis order is
// deterministic: descending (weight, rho) pairing, then ascending lex, then
// construction order; the distinguished vector is always index 0.
ModuleRep build_irrep(const RootDatum& rd, const Weight& lam);

// Tensor product along the coproduct; basis in Kronecker order, so tensor is
// associative on the nose.
ModuleRep tensor(const ModuleRep& u, const ModuleRep& v);

// Conjugate module: same basis, action through E <-> F, K <-> K^{-1};
// weights negate.
ModuleRep conjugate(const ModuleRep& v);

// Columns span { v in V(lam) : E_i v = 0 for all i }.
SMat highest_weight_vectors(const ModuleRep& v, const Weight& lam);

struct RelationReport {
  struct Entry {
    std::string name;
    bool pass;
  };
  std::vector<Entry> entries;
  bool all_pass() const;
};

// Exact verification of the defining relations: weight grading of the
// generator matrices, the E-F commutator against the quantum-integer diagonal,
// and both quantum Serre relations.
RelationReport check_relations(const ModuleRep& v);

}  // namespace qct
