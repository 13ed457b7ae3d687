#pragma once

// Test-only oracles, independent of the library implementation paths they check.

#include <gmpxx.h>
#include <map>
#include <vector>

#include "qct/rootdata.hpp"
#include "qct/scalar.hpp"

namespace oracle {

// Laurent polynomial in one variable with rational coefficients.
using Laurent = std::map<int, mpq_class>;

Laurent laurent_mul(const Laurent& a, const Laurent& b);
Laurent laurent_sub(const Laurent& a, const Laurent& b);
// Exact division; throws if the remainder is nonzero.
Laurent laurent_div(const Laurent& a, const Laurent& b);

// [n]_{q_i} as a Laurent polynomial in v computed by dividing the defining
// fraction (q_i^n - q_i^{-n})/(q_i - q_i^{-1}), with q_i = v^{L*d}.
Laurent qint_by_division(long n, long d, long L);

// Laurent polynomial -> Scalar (clears negative powers of v).
qct::Scalar laurent_to_scalar(const Laurent& p);

// Classical (q = 1) weight multiplicities of the irreducible with highest
// weight hw, by Freudenthal's recursion over the root datum's Cartan data.
std::map<std::vector<int>, long> freudenthal_weights(const qct::RootDatum& rd,
                                                     const std::vector<int>& hw);

// Classical fusion multiplicities of V_a (x) V_b: peel highest weights off the
// product weight diagram.
std::map<std::vector<int>, long> classical_fusion(const qct::RootDatum& rd,
                                                  const std::vector<int>& a,
                                                  const std::vector<int>& b);

}  // namespace oracle
