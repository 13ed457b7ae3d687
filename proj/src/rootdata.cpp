#include "qct/rootdata.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace qct {

Weight weight_add(const Weight& a, const Weight& b) {
  Weight r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] += b[i];
  return r;
}

Weight weight_sub(const Weight& a, const Weight& b) {
  Weight r(a);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  return r;
}

Weight weight_neg(const Weight& a) {
  Weight r(a);
  for (auto& x : r) x = -x;
  return r;
}

std::string weight_str(const Weight& a) {
  std::string s = "[";
  for (size_t i = 0; i < a.size(); ++i) {
    if (i) s += ",";
    s += std::to_string(a[i]);
  }
  return s + "]";
}

Weight parse_weight(const std::string& s) {
  if (s.size() < 2 || s.front() != '[' || s.back() != ']')
    throw error("parse_weight: expected [a,b,...]");
  Weight w;
  std::stringstream ss(s.substr(1, s.size() - 2));
  std::string tok;
  while (std::getline(ss, tok, ',')) w.push_back(std::stoi(tok));
  return w;
}

RootDatum::RootDatum(std::string type, int rank, std::vector<std::vector<int>> a,
                     std::vector<int> d, long L)
    : type_(std::move(type)), rank_(rank), a_(std::move(a)), d_(std::move(d)), L_(L) {
  // Gram matrix on fundamental weights: (omega_i, omega_j) = d_j * (A^{-1})_{ij}.
  // Computed over Q; L is chosen so that L * gram is integral.
  std::vector<std::vector<mpq_class>> inv(rank_, std::vector<mpq_class>(rank_, 0));
  {
    std::vector<std::vector<mpq_class>> m(rank_, std::vector<mpq_class>(2 * rank_, 0));
    for (int i = 0; i < rank_; ++i) {
      for (int j = 0; j < rank_; ++j) m[i][j] = a_[i][j];
      m[i][rank_ + i] = 1;
    }
    for (int col = 0; col < rank_; ++col) {
      int piv = col;
      while (m[piv][col] == 0) ++piv;
      std::swap(m[piv], m[col]);
      mpq_class p = m[col][col];
      for (auto& x : m[col]) x /= p;
      for (int r = 0; r < rank_; ++r) {
        if (r == col || m[r][col] == 0) continue;
        mpq_class f = m[r][col];
        for (int c = 0; c < 2 * rank_; ++c) m[r][c] -= f * m[col][c];
      }
    }
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) inv[i][j] = m[i][rank_ + j];
  }
  gram_L_.assign(rank_, std::vector<long>(rank_, 0));
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) {
      mpq_class g = mpq_class(L_) * mpq_class(d_[j]) * inv[i][j];
      if (g.get_den() != 1) throw error("RootDatum: L does not clear the weight pairing");
      gram_L_[i][j] = g.get_num().get_si();
    }
  compute_weyl();
  compute_pq();
}

RootDatum RootDatum::A1() { return RootDatum("A1", 1, {{2}}, {1}, 2); }

RootDatum RootDatum::A2() { return RootDatum("A2", 2, {{2, -1}, {-1, 2}}, {1, 1}, 3); }

RootDatum RootDatum::from_type(const std::string& type) {
  if (type == "A1") return A1();
  if (type == "A2") return A2();
  throw error("unknown root datum type: " + type);
}

Weight RootDatum::fundamental(int i) const {
  Weight w(rank_, 0);
  w[i] = 1;
  return w;
}

Weight RootDatum::simple_root(int i) const {
  // alpha_i(h_j) = a_ji
  Weight w(rank_, 0);
  for (int j = 0; j < rank_; ++j) w[j] = a_[j][i];
  return w;
}

bool RootDatum::is_dominant(const Weight& w) const {
  return std::all_of(w.begin(), w.end(), [](int x) { return x >= 0; });
}

long RootDatum::pairing_L(const Weight& a, const Weight& b) const {
  long s = 0;
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) s += static_cast<long>(a[i]) * b[j] * gram_L_[i][j];
  return s;
}

mpq_class RootDatum::pairing(const Weight& a, const Weight& b) const {
  mpq_class r(pairing_L(a, b), L_);
  r.canonicalize();
  return r;
}

Scalar RootDatum::q_pairing_pow(const Weight& a, const Weight& b) const {
  return Scalar::v_pow(pairing_L(a, b));
}

Scalar RootDatum::qi_pow(int i, long k) const { return Scalar::v_pow(L_ * d_[i] * k); }

void RootDatum::compute_weyl() {
  // Simple reflections as matrices on fundamental coordinates:
  // (s_i lambda)(j) = lambda(j) - lambda(i) a_ji.
  using Mat = std::vector<std::vector<int>>;
  auto apply = [&](const Mat& m, const Weight& w) {
    Weight r(rank_, 0);
    for (int i = 0; i < rank_; ++i)
      for (int j = 0; j < rank_; ++j) r[i] += m[i][j] * w[j];
    return r;
  };
  std::vector<Mat> refl(rank_);
  for (int i = 0; i < rank_; ++i) {
    Mat s(rank_, std::vector<int>(rank_, 0));
    for (int j = 0; j < rank_; ++j) s[j][j] = 1;
    for (int j = 0; j < rank_; ++j) s[j][i] -= a_[j][i];
    refl[i] = s;
  }
  Mat id(rank_, std::vector<int>(rank_, 0));
  for (int j = 0; j < rank_; ++j) id[j][j] = 1;
  std::set<Mat> seen{id};
  std::vector<Mat> frontier{id};
  Mat longest = id;
  while (!frontier.empty()) {
    std::vector<Mat> next;
    for (const auto& g : frontier)
      for (int i = 0; i < rank_; ++i) {
        Mat h(rank_, std::vector<int>(rank_, 0));
        for (int r = 0; r < rank_; ++r) {
          Weight col(rank_, 0);
          for (int c = 0; c < rank_; ++c) col[c] = g[c][r];
          Weight img = apply(refl[i], col);
          for (int c = 0; c < rank_; ++c) h[c][r] = img[c];
        }
        if (seen.insert(h).second) next.push_back(h);
      }
    if (!next.empty()) longest = next.back();
    frontier = std::move(next);
  }
  w0_ = longest;
}

Weight RootDatum::bar(const Weight& w) const {
  Weight r(rank_, 0);
  for (int i = 0; i < rank_; ++i)
    for (int j = 0; j < rank_; ++j) r[i] -= w0_[i][j] * w[j];
  return r;
}

std::vector<Weight> RootDatum::dominant_up_to(const Weight& cutoff) const {
  if (!is_dominant(cutoff)) throw error("dominant_up_to: cutoff must be dominant");
  std::vector<Weight> out;
  Weight cur(rank_, 0);
  while (true) {
    out.push_back(cur);
    int i = rank_ - 1;
    while (i >= 0 && cur[i] == cutoff[i]) {
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool RootDatum::in_root_lattice(const Weight& w) const {
  // Solve lambda = sum c_j alpha_j over the integers: coords give A^T c = w.
  // Cramer over the determinant.
  if (rank_ == 1) return w[0] % a_[0][0] == 0;
  if (rank_ == 2) {
    // Solve M c = w by Cramer, where M_ij = a_[i][j] has columns alpha_j.
    long m00 = a_[0][0], m01 = a_[0][1], m10 = a_[1][0], m11 = a_[1][1];
    long det = m00 * m11 - m01 * m10;
    long n1 = w[0] * m11 - w[1] * m01;
    long n2 = m00 * w[1] - m10 * w[0];
    return n1 % det == 0 && n2 % det == 0;
  }
  throw error("in_root_lattice: unsupported rank");
}

void RootDatum::compute_pq() {
  long det = 1;
  if (rank_ == 1)
    det = a_[0][0];
  else
    det = static_cast<long>(a_[0][0]) * a_[1][1] - static_cast<long>(a_[0][1]) * a_[1][0];
  pq_order_ = static_cast<int>(det);
  int n = pq_order_;
  // Residues t_i of the fundamental weights: smallest lex tuple with all simple
  // roots mapping to 0 and the map onto Z/n.
  std::vector<int> t(rank_, 0);
  auto ok = [&](const std::vector<int>& cand) {
    for (int i = 0; i < rank_; ++i) {
      int s = 0;
      for (int j = 0; j < rank_; ++j) s += a_[j][i] * cand[j];
      if (((s % n) + n) % n != 0) return false;
    }
    int g = n;
    for (int x : cand) g = std::gcd(g, x);
    return g == 1 || n == 1;
  };
  std::vector<int> cand(rank_, 0);
  bool found = false;
  while (!found) {
    if (ok(cand)) {
      t = cand;
      found = true;
      break;
    }
    int i = rank_ - 1;
    while (i >= 0 && cand[i] == n - 1) cand[i--] = 0;
    if (i < 0) break;
    ++cand[i];
  }
  if (!found) throw error("RootDatum: no P/Q residue map found");
  pq_t_ = t;
}

int RootDatum::pq_residue(const Weight& w) const {
  int n = pq_order_;
  long s = 0;
  for (int i = 0; i < rank_; ++i) s += static_cast<long>(pq_t_[i]) * w[i];
  return static_cast<int>(((s % n) + n) % n);
}

std::vector<RootDatum::PQCharacter> RootDatum::pq_characters() const {
  std::vector<PQCharacter> out;
  for (int k = 0; k < pq_order_; ++k) out.push_back({pq_order_, k});
  return out;
}

Scalar RootDatum::pq_character_value(const PQCharacter& chi, const Weight& w) const {
  int e = (chi.k * pq_residue(w)) % chi.order;
  if (e == 0) return Scalar(1);
  if (2 * e == chi.order) return Scalar(-1);
  throw error("pq_character_value: root of unity not representable in Q(v)");
}

}  // namespace qct
