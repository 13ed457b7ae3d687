#pragma once

#include <string>
#include <vector>

#include "qct/scalar.hpp"

namespace qct {

// Integral weight in fundamental-weight coordinates: coords[i] = lambda(h_i).
using Weight = std::vector<int>;

Weight weight_add(const Weight& a, const Weight& b);
Weight weight_sub(const Weight& a, const Weight& b);
Weight weight_neg(const Weight& a);
std::string weight_str(const Weight& a);
Weight parse_weight(const std::string& s);

// Cartan data for a simple root system plus the level L making q^(lambda,mu)
// an integer power of v for all weights.  Data-driven; A1 and A2 are built in.
class RootDatum {
 public:
  static RootDatum A1();
  static RootDatum A2();
  static RootDatum from_type(const std::string& type);

  const std::string& type() const { return type_; }
  int rank() const { return rank_; }
  int cartan(int i, int j) const { return a_[i][j]; }
  int d(int i) const { return d_[i]; }
  long L() const { return L_; }

  Weight zero() const { return Weight(rank_, 0); }
  Weight fundamental(int i) const;
  Weight simple_root(int i) const;  // alpha_i in fundamental-weight coordinates

  bool is_dominant(const Weight& w) const;
  // L * (lambda, mu); the bilinear form has (alpha_i, alpha_j) = d_i a_ij.
  long pairing_L(const Weight& a, const Weight& b) const;
  mpq_class pairing(const Weight& a, const Weight& b) const;
  // q^(lambda,mu) as an element of Q(v), using q = v^L.
  Scalar q_pairing_pow(const Weight& a, const Weight& b) const;
  // q_i^k = v^{L d_i k}.
  Scalar qi_pow(int i, long k) const;
  Scalar qint(int i, long n) const { return quantum_int(n, d_[i], L_); }

  // The involution lambda -> -w0(lambda); w0 found by exhaustive Weyl group search.
  Weight bar(const Weight& w) const;

  // All dominant weights with coords <= cutoff coords, lexicographic order.
  std::vector<Weight> dominant_up_to(const Weight& cutoff) const;

  bool in_root_lattice(const Weight& w) const;

  // P/Q is cyclic of order det(Cartan); residue(lambda) classifies the coset.
  int pq_order() const { return pq_order_; }
  int pq_residue(const Weight& w) const;

  struct PQCharacter {
    int order;  // |P/Q|
    int k;      // character index: lambda -> zeta_order^{k * residue(lambda)}
  };
  std::vector<PQCharacter> pq_characters() const;
  // Value in Q(v); only +-1 is representable, so errors unless the root of
  // unity involved is real.
  Scalar pq_character_value(const PQCharacter& chi, const Weight& w) const;

  bool operator==(const RootDatum& o) const { return type_ == o.type_; }
  bool operator!=(const RootDatum& o) const { return !(*this == o); }

 private:
  RootDatum(std::string type, int rank, std::vector<std::vector<int>> a,
            std::vector<int> d, long L);
  void compute_weyl();
  void compute_pq();

  std::string type_;
  int rank_;
  std::vector<std::vector<int>> a_;
  std::vector<int> d_;
  long L_;
  std::vector<std::vector<long>> gram_L_;  // L * (omega_i, omega_j)
  std::vector<std::vector<int>> w0_;       // matrix of w0 on fund coords
  int pq_order_ = 1;
  std::vector<int> pq_t_;  // residues of the fundamental weights
};

}  // namespace qct
