#include "qct/normalize.hpp"

#include <algorithm>
#include <set>

namespace qct {

namespace {

std::string pair_str(const Weight& mu, const Weight& eta) {
  return "(" + weight_str(mu) + "," + weight_str(eta) + ")";
}

// The scalar s with x = s * t; throws when x is not proportional to t.
Scalar proportionality(const SMat& x, const SMat& t, const std::string& what) {
  for (int r = 0; r < t.rows(); ++r) {
    const auto& row = t.row(r);
    if (row.empty()) continue;
    const auto& [c, val] = *row.begin();
    Scalar s = x.at(r, c) / val;
    if (x != t.scaled(s)) throw error(what + ": non-scalar action");
    return s;
  }
  throw error(what + ": zero reference map");
}

bool monomial_decompose(const Scalar& s, mpq_class& r, long& k) {
  if (s.is_zero()) return false;
  const IntPoly& n = s.num();
  const IntPoly& d = s.den();
  if (n.trailing_degree() != n.degree() || d.trailing_degree() != d.degree()) return false;
  r = mpq_class(n.leading(), d.leading());
  r.canonicalize();
  k = n.degree() - d.degree();
  return true;
}

// Unique solution of an invertible square rational system.
std::vector<mpq_class> solve_rational(std::vector<std::vector<mpq_class>> m,
                                      std::vector<mpq_class> b) {
  int n = static_cast<int>(b.size());
  for (int col = 0; col < n; ++col) {
    int piv = -1;
    for (int r = col; r < n; ++r)
      if (m[r][col] != 0) {
        piv = r;
        break;
      }
    if (piv < 0) throw error("character extension: singular pairing matrix");
    std::swap(m[col], m[piv]);
    std::swap(b[col], b[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == col || m[r][col] == 0) continue;
      mpq_class f = m[r][col] / m[col][col];
      for (int c2 = col; c2 < n; ++c2) m[r][c2] -= f * m[col][c2];
      b[r] -= f * b[col];
    }
  }
  std::vector<mpq_class> x(n);
  for (int i = 0; i < n; ++i) x[i] = b[i] / m[i][i];
  return x;
}

// One solution of m x = s over GF(2), or nullopt (free variables set to 0).
std::optional<std::vector<int>> solve_gf2(std::vector<std::vector<int>> m, std::vector<int> s) {
  int n = static_cast<int>(s.size());
  std::vector<int> pivot_col(n, -1);
  int row = 0;
  for (int col = 0; col < n && row < n; ++col) {
    int piv = -1;
    for (int r = row; r < n; ++r)
      if (m[r][col] & 1) {
        piv = r;
        break;
      }
    if (piv < 0) continue;
    std::swap(m[row], m[piv]);
    std::swap(s[row], s[piv]);
    for (int r = 0; r < n; ++r) {
      if (r == row || !(m[r][col] & 1)) continue;
      for (int c2 = 0; c2 < n; ++c2) m[r][c2] ^= m[row][c2];
      s[r] ^= s[row];
    }
    pivot_col[row] = col;
    ++row;
  }
  for (int r = row; r < n; ++r)
    if (s[r] & 1) return std::nullopt;
  std::vector<int> x(n, 0);
  for (int r = 0; r < row; ++r) x[pivot_col[r]] = s[r];
  return x;
}

// Trial-division factorization; the leftover cofactor beyond the bound is
// itself prime whenever the loop ran to sqrt, which it does at test scale.
std::map<mpz_class, long> factorize(mpz_class n) {
  std::map<mpz_class, long> out;
  if (n < 0) n = -n;
  for (mpz_class p = 2; p * p <= n; p += (p == 2 ? 1 : 2))
    while (mpz_divisible_p(n.get_mpz_t(), p.get_mpz_t())) {
      ++out[p];
      mpz_divexact(n.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t());
    }
  if (n > 1) ++out[n];
  return out;
}

mpq_class mpq_pow(const mpq_class& b, long k) {
  mpq_class r(1);
  for (long i = 0; i < std::labs(k); ++i) r *= b;
  if (k < 0) r = 1 / r;
  return r;
}

}  // namespace

const Scalar& PPlusCocycle::value(const Weight& mu, const Weight& eta) const {
  auto it = values.find(WPair{mu, eta});
  if (it == values.end())
    throw error("p-plus cocycle cutoff exceeded at pair " + pair_str(mu, eta));
  return it->second;
}

Scalar LatticeCharacter::omega_value(int j) const {
  if (!extended) throw error("character not extended to P");
  return Scalar::rational(omega_rat[j]) * Scalar::v_pow(omega_exp[j]);
}

Scalar LatticeCharacter::eval(const Weight& w) const {
  Scalar out(1);
  for (size_t j = 0; j < w.size(); ++j) out *= omega_value(static_cast<int>(j)).pow(w[j]);
  return out;
}

bool LatticeCharacter::is_trivial() const {
  return std::all_of(alpha_values.begin(), alpha_values.end(),
                     [](const Scalar& s) { return s.is_one(); });
}

Scalar extract_highest_scalar(Context& ctx, const InvariantTwoCochain& e, const Weight& mu,
                              const Weight& eta) {
  const Intertwiner& t = build_T(ctx, mu, eta);
  return proportionality(e.block(mu, eta) * t.matrix, t.matrix,
                         "extract_highest_scalar" + pair_str(mu, eta));
}

Scalar extract_tau_scalar(Context& ctx, const InvariantTwoCochain& e, int i, const Weight& mu,
                          const Weight& eta) {
  const Intertwiner& t = build_tau(ctx, i, mu, eta);
  return proportionality(e.block(mu, eta) * t.matrix, t.matrix,
                         "extract_tau_scalar" + pair_str(mu, eta));
}

PPlusCocycle extract_pplus(Context& ctx, const InvariantTwoCochain& e) {
  PPlusCocycle ep;
  for (const auto& [key, b] : e.blocks)
    ep.values[key] = extract_highest_scalar(ctx, e, key.first, key.second);
  // Symmetry wherever the transposed pair is stored.
  for (const auto& [key, val] : ep.values) {
    auto it = ep.values.find(WPair{key.second, key.first});
    if (it != ep.values.end() && it->second != val)
      throw error("p-plus scalars not symmetric at pair " + pair_str(key.first, key.second));
  }
  // Scalar cocycle identity wherever all four participating pairs are stored.
  for (const auto& [k1, v1] : ep.values)
    for (const auto& [k2, v2] : ep.values) {
      if (k2.first != weight_add(k1.first, k1.second)) continue;
      auto r1 = ep.values.find(WPair{k1.second, k2.second});
      auto r2 = ep.values.find(WPair{k1.first, weight_add(k1.second, k2.second)});
      if (r1 == ep.values.end() || r2 == ep.values.end()) continue;
      if (v1 * v2 != r1->second * r2->second)
        throw error("p-plus scalars violate the cocycle identity at " +
                    pair_str(k1.first, k1.second) + "+" + pair_str(k2.first, k2.second));
    }
  return ep;
}

CentralElement solve_pplus_coboundary(const RootDatum& rd, const PPlusCocycle& ep) {
  CentralElement c;
  Weight zero = rd.zero();
  auto z = ep.values.find(WPair{zero, zero});
  c.values[zero] = z == ep.values.end() ? Scalar(1) : z->second.inverse();
  for (int i = 0; i < rd.rank(); ++i) c.values[rd.fundamental(i)] = Scalar(1);
  bool changed = true;
  while (changed) {
    changed = false;
    for (const auto& [key, val] : ep.values) {
      auto a = c.values.find(key.first);
      auto b = c.values.find(key.second);
      if (a == c.values.end() || b == c.values.end()) continue;
      Weight sum = weight_add(key.first, key.second);
      Scalar cand = a->second * b->second * val;
      auto it = c.values.find(sum);
      if (it == c.values.end()) {
        c.values[sum] = cand;
        changed = true;
      } else if (it->second != cand) {
        throw error("p-plus coboundary: path inconsistency at pair " +
                    pair_str(key.first, key.second));
      }
    }
  }
  return c;
}

InvariantTwoCochain twist_by_central(Context& ctx, const InvariantTwoCochain& e,
                                     const CentralElement& u) {
  InvariantTwoCochain du = coboundary_of_central(ctx, u, e.pairs());
  InvariantTwoCochain out = cochain_mul(ctx, e, du);
  // Cohomologousness witness: recompute (u (x) u) E Delta(u)^{-1} directly.
  CentralElement uinv = central_inv(u);
  for (const auto& [key, b] : e.blocks) {
    ModulePtr t = ctx.tensor2(ctx.irrep(key.first), ctx.irrep(key.second));
    SMat alt = b.scaled(u.value(key.first) * u.value(key.second)) * central_action(ctx, uinv, t);
    if (alt != out.block(key.first, key.second))
      throw error("twist witness mismatch at pair " + pair_str(key.first, key.second));
  }
  return out;
}

LatticeCharacter build_character(Context& ctx, const InvariantTwoCochain& e) {
  const RootDatum& rd = ctx.rd();
  for (const auto& [key, b] : e.blocks)
    if (!extract_highest_scalar(ctx, e, key.first, key.second).is_one())
      throw error("build_character: highest scalar not 1 at pair " +
                  pair_str(key.first, key.second));
  LatticeCharacter chi;
  int n = rd.rank();
  chi.alpha_values.resize(n);
  chi.alpha_rat.resize(n);
  chi.alpha_exp.resize(n);
  chi.monomial = true;
  for (int i = 0; i < n; ++i) {
    std::optional<Scalar> ei;
    for (const auto& [key, b] : e.blocks) {
      if (key.first[i] < 1 || key.second[i] < 1) continue;
      Scalar s = extract_tau_scalar(ctx, e, i, key.first, key.second);
      if (!ei)
        ei = s;
      else if (*ei != s)
        throw error("tau scalar depends on the pair at simple root " + std::to_string(i));
    }
    if (!ei)
      throw error("build_character: no admissible pair for simple root " + std::to_string(i));
    chi.alpha_values[i] = ei->inverse();
    if (!monomial_decompose(chi.alpha_values[i], chi.alpha_rat[i], chi.alpha_exp[i]))
      chi.monomial = false;
  }
  return chi;
}

CentralElement extend_to_P(const RootDatum& rd, LatticeCharacter& chi,
                           const std::vector<Weight>& support) {
  int n = rd.rank();
  if (!chi.monomial)
    throw error("non-monomial character: extension to P requires adjoining roots");
  // alpha_i = sum_j m[i][j] omega_j.
  std::vector<std::vector<mpq_class>> m(n, std::vector<mpq_class>(n));
  std::vector<std::vector<int>> m2(n, std::vector<int>(n));
  for (int i = 0; i < n; ++i) {
    Weight a = rd.simple_root(i);
    for (int j = 0; j < n; ++j) {
      m[i][j] = a[j];
      m2[i][j] = ((a[j] % 2) + 2) % 2;
    }
  }
  // v-exponents.
  std::vector<mpq_class> bexp(n);
  for (int i = 0; i < n; ++i) bexp[i] = chi.alpha_exp[i];
  std::vector<mpq_class> xexp = solve_rational(m, bexp);
  chi.omega_exp.assign(n, 0);
  for (int i = 0; i < n; ++i) {
    if (xexp[i].get_den() != 1)
      throw error("non-monomial character: extension to P requires fractional powers of v");
    chi.omega_exp[i] = static_cast<long>(xexp[i].get_num().get_si());
  }
  // Rational parts, prime by prime.
  std::set<mpz_class> primes;
  for (int i = 0; i < n; ++i) {
    for (const auto& [p, k] : factorize(mpz_class(chi.alpha_rat[i].get_num()))) primes.insert(p);
    for (const auto& [p, k] : factorize(mpz_class(chi.alpha_rat[i].get_den()))) primes.insert(p);
  }
  chi.omega_rat.assign(n, mpq_class(1));
  for (const mpz_class& p : primes) {
    std::vector<mpq_class> ep(n);
    for (int i = 0; i < n; ++i) {
      auto fn = factorize(mpz_class(chi.alpha_rat[i].get_num()));
      auto fd = factorize(mpz_class(chi.alpha_rat[i].get_den()));
      long k = 0;
      if (auto it = fn.find(p); it != fn.end()) k += it->second;
      if (auto it = fd.find(p); it != fd.end()) k -= it->second;
      ep[i] = k;
    }
    std::vector<mpq_class> xp = solve_rational(m, ep);
    for (int j = 0; j < n; ++j) {
      if (xp[j].get_den() != 1)
        throw error("non-monomial character: extension to P requires rational roots");
      chi.omega_rat[j] *= mpq_pow(mpq_class(p), xp[j].get_num().get_si());
    }
  }
  // Signs over GF(2).
  std::vector<int> sg(n);
  for (int i = 0; i < n; ++i) sg[i] = chi.alpha_rat[i] < 0 ? 1 : 0;
  auto xs = solve_gf2(m2, sg);
  if (!xs)
    throw error("non-monomial character: extension to P requires imaginary units");
  for (int j = 0; j < n; ++j)
    if ((*xs)[j]) chi.omega_rat[j] = -chi.omega_rat[j];
  chi.extended = true;
  // Round trip: the extension restricts to chi on the simple roots.
  for (int i = 0; i < n; ++i)
    if (chi.eval(rd.simple_root(i)) != chi.alpha_values[i])
      throw error("character extension round-trip failed");
  CentralElement c;
  for (const Weight& w : support) c.values[w] = chi.eval(w);
  return c;
}

NormalizeResult normalize(Context& ctx, const InvariantTwoCochain& e) {
  if (auto rep = check_invariant(ctx, e); !rep.all_pass())
    throw error("normalize: input not invariant at " + rep.first_failure());
  if (auto rep = check_symmetric(ctx, e); !rep.all_pass())
    throw error("normalize: input not symmetric at " + rep.first_failure());
  NormalizeResult res;
  res.stage1_scalars = extract_pplus(ctx, e);
  CentralElement c1 = solve_pplus_coboundary(ctx.rd(), res.stage1_scalars);
  InvariantTwoCochain e1 = twist_by_central(ctx, e, c1);
  for (const auto& [key, b] : e1.blocks)
    if (!extract_highest_scalar(ctx, e1, key.first, key.second).is_one())
      throw error("normalize: stage-1 twist left a highest scalar at " +
                  pair_str(key.first, key.second));
  res.character = build_character(ctx, e1);
  std::vector<Weight> support;
  for (const auto& [w, val] : c1.values) support.push_back(w);
  CentralElement c2 = extend_to_P(ctx.rd(), res.character, support);
  res.e_norm = twist_by_central(ctx, e1, c2);
  // Both normalization conditions on the result.
  for (const auto& [key, b] : res.e_norm.blocks)
    if (!extract_highest_scalar(ctx, res.e_norm, key.first, key.second).is_one())
      throw error("normalize: character twist broke the highest scalars at " +
                  pair_str(key.first, key.second));
  for (int i = 0; i < ctx.rd().rank(); ++i)
    for (const auto& [key, b] : res.e_norm.blocks) {
      if (key.first[i] < 1 || key.second[i] < 1) continue;
      if (!extract_tau_scalar(ctx, res.e_norm, i, key.first, key.second).is_one())
        throw error("normalize: tau scalar not 1 at " + pair_str(key.first, key.second));
    }
  res.c_total = central_inv(central_mul(c1, c2));
  return res;
}

CochainReport verify_trivial(Context& ctx, const InvariantTwoCochain& e) {
  CochainReport rep;
  for (const auto& [key, b] : e.blocks)
    rep.entries.push_back(
        {"trivial", pair_str(key.first, key.second), b == SMat::identity(b.rows())});
  return rep;
}

CochainReport su2_induction(Context& ctx, const InvariantTwoCochain& e) {
  if (ctx.rd().type() != "A1") throw error("su2_induction requires root datum A1");
  int smax = 0, tmax = 0;
  for (const auto& [key, b] : e.blocks) {
    smax = std::max(smax, key.first[0]);
    tmax = std::max(tmax, key.second[0]);
  }
  for (int s = 0; s <= smax; ++s)
    for (int t = 0; t <= tmax; ++t)
      if (!e.blocks.count(WPair{{s}, {t}}))
        throw error("su2_induction requires a full rectangular pair grid");

  CochainReport rep;
  // Base of the induction: counital blocks.
  for (int t = 0; t <= tmax; ++t)
    rep.entries.push_back({"su2-base", pair_str({0}, {t}),
                           e.block({0}, {t}) == SMat::identity(t + 1)});
  // The intertwining relation at every stage, plus injectivity of its left leg.
  std::map<std::pair<int, int>, bool> step;
  for (int s = 0; s + 1 <= smax; ++s) {
    const Intertwiner& t12 = build_T(ctx, {1}, {s});
    rep.entries.push_back(
        {"su2-injective", "s=" + std::to_string(s), rank(t12.matrix) == s + 2});
    for (int t = 0; t <= tmax; ++t) {
      SMat it = SMat::identity(t + 1);
      SMat lhs = SMat::kron(t12.matrix, it) * e.block({s + 1}, {t});
      SMat rhs = SMat::kron(SMat::identity(2), e.block({s}, {t})) * SMat::kron(t12.matrix, it);
      step[{s, t}] = lhs == rhs;
      rep.entries.push_back({"su2-step", pair_str({s}, {t}), step[{s, t}]});
    }
  }
  // Induction verdict vs. brute force, block for block.
  for (int t = 0; t <= tmax; ++t) {
    bool derived = e.block({0}, {t}) == SMat::identity(t + 1);
    for (int s = 0; s <= smax; ++s) {
      if (s > 0) derived = derived && step[{s - 1, t}];
      bool brute = e.block({s}, {t}) == SMat::identity((s + 1) * (t + 1));
      rep.entries.push_back({"su2-agree", pair_str({s}, {t}), derived == brute});
    }
  }
  return rep;
}

std::optional<RootDatum::PQCharacter> is_pq_character(const RootDatum& rd,
                                                      const CentralElement& c) {
  for (int k = 0; k < rd.pq_order(); ++k) {
    RootDatum::PQCharacter cand{rd.pq_order(), k};
    bool ok = true;
    for (const auto& [w, val] : c.values) {
      try {
        if (val != rd.pq_character_value(cand, w)) {
          ok = false;
          break;
        }
      } catch (const error&) {
        ok = false;
        break;
      }
    }
    if (ok) return cand;
  }
  return std::nullopt;
}

}  // namespace qct
