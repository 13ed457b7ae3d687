#include "qct/module.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace qct {

SMat ModuleRep::K(int i, int sign) const {
  SMat k(dim(), dim());
  for (int b = 0; b < dim(); ++b) k.set(b, b, rd.qi_pow(i, sign * wts[b][i]));
  return k;
}

std::map<Weight, int> ModuleRep::weight_multiplicities() const {
  std::map<Weight, int> m;
  for (const auto& w : wts) ++m[w];
  return m;
}

namespace {

using SVec = std::map<int, Scalar>;

// y = M x given the transpose of M (rows of Mt are columns of M), so the
// sparse vector drives the iteration.
SVec apply_t(const SMat& mt, const SVec& x) {
  SVec y;
  for (const auto& [j, c] : x)
    for (const auto& [i, a] : mt.row(j)) {
      auto it = y.find(i);
      if (it == y.end())
        y.emplace(i, a * c);
      else {
        it->second += a * c;
        if (it->second.is_zero()) y.erase(it);
      }
    }
  return y;
}

// Echelon store over sparse vectors: reduce() returns the residual after
// subtracting the projection onto the current span.
class Echelon {
 public:
  // Returns true (and absorbs the vector) when independent of the span.
  bool insert(SVec v) {
    reduce_inplace(v);
    if (v.empty()) return false;
    int piv = v.begin()->first;
    Scalar inv = v.begin()->second.inverse();
    for (auto& [j, c] : v) c *= inv;
    rows_.emplace(piv, std::move(v));
    return true;
  }
  void reduce_inplace(SVec& v) const {
    while (!v.empty()) {
      auto it = rows_.find(v.begin()->first);
      if (it == rows_.end()) return;
      Scalar f = v.begin()->second;
      for (const auto& [j, c] : it->second) {
        auto jt = v.find(j);
        if (jt == v.end()) {
          v.emplace(j, -(f * c));
        } else {
          jt->second -= f * c;
          if (jt->second.is_zero()) v.erase(jt);
        }
      }
    }
  }
  size_t size() const { return rows_.size(); }

 private:
  std::map<int, SVec> rows_;  // pivot index -> unit-pivot row
};

ModuleRep a1_ladder(const RootDatum& rd, int n) {
  ModuleRep m;
  m.rd = rd;
  int d = n + 1;
  SMat e(d, d), f(d, d);
  for (int k = 0; k <= n; ++k) {
    m.wts.push_back({n - 2 * k});
    if (k < n) f.set(k + 1, k, rd.qint(0, k + 1));
    if (k > 0) e.set(k - 1, k, rd.qint(0, n - k + 1));
  }
  m.E = {std::move(e)};
  m.F = {std::move(f)};
  m.hw = Weight{n};
  m.dist = 0;
  return m;
}

// The two 3-dimensional fundamental representations of U_q sl3, given by
// explicit ladder chains ξ -> F_a ξ -> F_b F_a ξ with unit coefficients.
ModuleRep a2_fundamental(const RootDatum& rd, int which) {
  ModuleRep m;
  m.rd = rd;
  int a = which, b = 1 - which;  // first lowering step uses alpha_a
  Weight top = rd.fundamental(which);
  Weight mid = weight_sub(top, rd.simple_root(a));
  Weight bot = weight_sub(mid, rd.simple_root(b));
  m.wts = {top, mid, bot};
  SMat ea(3, 3), eb(3, 3), fa(3, 3), fb(3, 3);
  fa.set(1, 0, Scalar(1));
  ea.set(0, 1, Scalar(1));
  fb.set(2, 1, Scalar(1));
  eb.set(1, 2, Scalar(1));
  m.E.assign(2, SMat(3, 3));
  m.F.assign(2, SMat(3, 3));
  m.E[a] = std::move(ea);
  m.E[b] = std::move(eb);
  m.F[a] = std::move(fa);
  m.F[b] = std::move(fb);
  m.hw = top;
  m.dist = 0;
  return m;
}

ModuleRep trivial_module(const RootDatum& rd) {
  ModuleRep m;
  m.rd = rd;
  m.wts = {rd.zero()};
  m.E.assign(rd.rank(), SMat(1, 1));
  m.F.assign(rd.rank(), SMat(1, 1));
  m.hw = rd.zero();
  m.dist = 0;
  return m;
}

// Deterministic basis order: descending (w, rho) pairing, ties by ascending
// lex, ties by construction order (stable sort).
std::vector<int> basis_order(const RootDatum& rd, const std::vector<Weight>& wts) {
  Weight rho(rd.rank(), 1);
  std::vector<int> idx(wts.size());
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    long ha = rd.pairing_L(wts[a], rho), hb = rd.pairing_L(wts[b], rho);
    if (ha != hb) return ha > hb;
    return wts[a] < wts[b];
  });
  return idx;
}

}  // namespace

ModuleRep tensor(const ModuleRep& u, const ModuleRep& v) {
  if (u.rd != v.rd) throw error("tensor: mismatched root data");
  ModuleRep m;
  m.rd = u.rd;
  int du = u.dim(), dv = v.dim();
  m.wts.reserve(static_cast<size_t>(du) * dv);
  for (int i = 0; i < du; ++i)
    for (int j = 0; j < dv; ++j) m.wts.push_back(weight_add(u.wts[i], v.wts[j]));
  for (int i = 0; i < m.rd.rank(); ++i) {
    // Δ̂(E_i) = E_i⊗1 + K_i⊗E_i, Δ̂(F_i) = F_i⊗K_i^{-1} + 1⊗F_i.
    m.E.push_back(SMat::kron(u.E[i], SMat::identity(dv)) + SMat::kron(u.K(i), v.E[i]));
    m.F.push_back(SMat::kron(u.F[i], v.K(i, -1)) + SMat::kron(SMat::identity(du), v.F[i]));
  }
  return m;
}

ModuleRep conjugate(const ModuleRep& v) {
  ModuleRep m;
  m.rd = v.rd;
  for (const auto& w : v.wts) m.wts.push_back(weight_neg(w));
  m.E = v.F;
  m.F = v.E;
  m.dist = v.dist;  // conjugate of the distinguished vector
  return m;
}

ModuleRep build_irrep(const RootDatum& rd, const Weight& lam) {
  if (!rd.is_dominant(lam)) throw error("build_irrep: non-dominant highest weight");
  if (rd.type() == "A1") {
    if (lam[0] == 0) return trivial_module(rd);
    return a1_ladder(rd, lam[0]);
  }
  if (rd.type() != "A2") throw error("build_irrep: unsupported root datum");
  if (lam[0] == 0 && lam[1] == 0) return trivial_module(rd);

  // Ambient module: fundamental tensor power with the product of highest
  // weight vectors at index 0.
  std::optional<ModuleRep> amb;
  for (int which = 0; which < 2; ++which)
    for (int c = 0; c < lam[which]; ++c) {
      ModuleRep f = a2_fundamental(rd, which);
      amb = amb ? tensor(*amb, f) : std::move(f);
    }

  // Cyclic closure of index 0 under the F_i, with exact span reduction.
  struct Item {
    SVec vec;
    Weight wt;
  };
  std::vector<Item> basis;
  Echelon ech;
  SVec seed{{0, Scalar(1)}};
  ech.insert(seed);
  basis.push_back({std::move(seed), lam});
  std::vector<SMat> ft;
  for (int i = 0; i < rd.rank(); ++i) ft.push_back(amb->F[i].transpose());
  for (size_t h = 0; h < basis.size(); ++h)
    for (int i = 0; i < rd.rank(); ++i) {
      SVec img = apply_t(ft[i], basis[h].vec);
      if (img.empty()) continue;
      SVec copy = img;
      if (ech.insert(std::move(copy)))
        basis.push_back({std::move(img), weight_sub(basis[h].wt, rd.simple_root(i))});
    }

  std::vector<Weight> wts;
  for (const auto& it : basis) wts.push_back(it.wt);
  auto order = basis_order(rd, wts);

  int d = static_cast<int>(basis.size());
  SMat b(amb->dim(), d);
  ModuleRep m;
  m.rd = rd;
  for (int k = 0; k < d; ++k) {
    m.wts.push_back(basis[order[k]].wt);
    for (const auto& [r, c] : basis[order[k]].vec) b.set(r, k, c);
  }
  for (int i = 0; i < rd.rank(); ++i) {
    auto e = solve_matrix(b, amb->E[i] * b);
    auto f = solve_matrix(b, amb->F[i] * b);
    if (!e || !f) throw error("build_irrep: cyclic span not generator-stable");
    m.E.push_back(std::move(*e));
    m.F.push_back(std::move(*f));
  }
  if (m.wts[0] != lam) throw error("build_irrep: basis order lost the highest weight");
  m.hw = lam;
  m.dist = 0;
  return m;
}

SMat highest_weight_vectors(const ModuleRep& v, const Weight& lam) {
  std::vector<int> cols;
  for (int k = 0; k < v.dim(); ++k)
    if (v.wts[k] == lam) cols.push_back(k);
  // Stack all E_i restricted to the weight-lam coordinates.
  SMat sys(v.dim() * v.rd.rank(), static_cast<int>(cols.size()));
  for (int i = 0; i < v.rd.rank(); ++i)
    for (size_t c = 0; c < cols.size(); ++c)
      for (int r = 0; r < v.dim(); ++r) {
        const Scalar& a = v.E[i].at(r, cols[c]);
        if (!a.is_zero()) sys.set(i * v.dim() + r, static_cast<int>(c), a);
      }
  SMat ker = kernel_basis(sys);
  SMat out(v.dim(), ker.cols());
  for (size_t c = 0; c < cols.size(); ++c)
    for (int j = 0; j < ker.cols(); ++j) {
      const Scalar& a = ker.at(static_cast<int>(c), j);
      if (!a.is_zero()) out.set(cols[c], j, a);
    }
  return out;
}

bool RelationReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.pass; });
}

RelationReport check_relations(const ModuleRep& v) {
  RelationReport rep;
  int r = v.rd.rank();
  // Weight grading (equivalent to the K-conjugation relations).
  for (int i = 0; i < r; ++i) {
    bool ok = true;
    Weight ai = v.rd.simple_root(i);
    for (int row = 0; row < v.dim() && ok; ++row) {
      for (const auto& [col, val] : v.E[i].row(row))
        if (v.wts[row] != weight_add(v.wts[col], ai)) ok = false;
      for (const auto& [col, val] : v.F[i].row(row))
        if (v.wts[row] != weight_sub(v.wts[col], ai)) ok = false;
    }
    rep.entries.push_back({"weight-grading E" + std::to_string(i + 1) + "/F" + std::to_string(i + 1), ok});
  }
  // [E_i, F_j] = delta_ij (K_i - K_i^{-1})/(q_i - q_i^{-1}).
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      SMat lhs = v.E[i] * v.F[j] - v.F[j] * v.E[i];
      SMat rhs(v.dim(), v.dim());
      if (i == j)
        for (int k = 0; k < v.dim(); ++k) rhs.set(k, k, v.rd.qint(i, v.wts[k][i]));
      rep.entries.push_back({"[E" + std::to_string(i + 1) + ",F" + std::to_string(j + 1) + "]",
                             lhs == rhs});
    }
  // Quantum Serre relations.
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      if (i == j) continue;
      long n = 1 - v.rd.cartan(i, j);
      auto serre = [&](const std::vector<SMat>& g) {
        SMat acc(v.dim(), v.dim());
        for (long k = 0; k <= n; ++k) {
          SMat term = SMat::identity(v.dim());
          for (long t = 0; t < k; ++t) term = term * g[i];
          term = term * g[j];
          for (long t = 0; t < n - k; ++t) term = term * g[i];
          Scalar c = quantum_binomial(n, k, v.rd.d(i), v.rd.L());
          acc = acc + term.scaled(k % 2 ? -c : c);
        }
        return acc.is_zero();
      };
      rep.entries.push_back({"Serre E(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                             serre(v.E)});
      rep.entries.push_back({"Serre F(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")",
                             serre(v.F)});
    }
  return rep;
}

}  // namespace qct
