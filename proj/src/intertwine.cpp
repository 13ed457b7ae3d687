#include "qct/intertwine.hpp"

#include <algorithm>

namespace qct {

int DecompositionCertificate::multiplicity(const Weight& hw) const {
  for (const auto& s : summands)
    if (s.hw == hw) return static_cast<int>(s.embeddings.size());
  return 0;
}

ModulePtr Context::irrep(const Weight& lam) {
  return memo(irreps_, lam,
              [&] { return std::make_shared<const ModuleRep>(build_irrep(rd_, lam)); });
}

ModulePtr Context::conj_irrep(const Weight& lam) {
  return memo(conjs_, lam, [&] {
    return std::make_shared<const ModuleRep>(conjugate(build_irrep(rd_, lam)));
  });
}

ModulePtr Context::module(const ModKey& k) { return k.conj ? conj_irrep(k.w) : irrep(k.w); }

ModulePtr Context::tensor2(const ModulePtr& a, const ModulePtr& b) {
  return memo(tensors_, std::make_pair(a.get(), b.get()),
              [&] { return std::make_shared<const ModuleRep>(tensor(*a, *b)); });
}

SMat flip_matrix(int du, int dv) {
  SMat p(du * dv, du * dv);
  for (int i = 0; i < du; ++i)
    for (int j = 0; j < dv; ++j) p.set(j * du + i, i * dv + j, Scalar(1));
  return p;
}

namespace {

long rho_height(const RootDatum& rd, const Weight& w) {
  return rd.pairing_L(w, Weight(rd.rank(), 1));
}

int extreme_weight_index(const ModuleRep& v, bool lowest) {
  int best = 0;
  for (int k = 1; k < v.dim(); ++k) {
    long hk = rho_height(v.rd, v.wts[k]), hb = rho_height(v.rd, v.wts[best]);
    if (lowest ? hk < hb : hk > hb) best = k;
  }
  for (int k = 0; k < v.dim(); ++k)
    if (k != best && v.wts[k] == v.wts[best])
      throw error("extreme weight space is not one-dimensional");
  return best;
}

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

void axpy(SVec& y, const Scalar& f, const SVec& x) {
  for (const auto& [j, c] : x) {
    auto it = y.find(j);
    if (it == y.end()) {
      Scalar v = f * c;
      if (!v.is_zero()) y.emplace(j, std::move(v));
    } else {
      it->second += f * c;
      if (it->second.is_zero()) y.erase(it);
    }
  }
}

// Column of a sparse matrix as a sparse vector.
SVec column(const SMat& m, int j) {
  SVec v;
  for (int i = 0; i < m.rows(); ++i) {
    const Scalar& a = m.at(i, j);
    if (!a.is_zero()) v.emplace(i, a);
  }
  return v;
}

}  // namespace

int lowest_weight_index(const ModuleRep& v) { return extreme_weight_index(v, true); }
int highest_weight_index(const ModuleRep& v) { return extreme_weight_index(v, false); }

Intertwiner extend_from_cyclic(const ModulePtr& d, const ModulePtr& c, int cyclic_index,
                               const SVec& image, std::string provenance) {
  if (d->rd != c->rd) throw error("extend_from_cyclic: mismatched root data");
  const Weight& w0 = d->wts[cyclic_index];
  for (const auto& [j, a] : image)
    if (c->wts[j] != w0) throw error("no such morphism: image weight mismatch");

  int r = d->rd.rank();
  std::vector<SMat> gd, gc;  // generator transposes, E's then F's
  for (int i = 0; i < r; ++i) {
    gd.push_back(d->E[i].transpose());
    gc.push_back(c->E[i].transpose());
  }
  for (int i = 0; i < r; ++i) {
    gd.push_back(d->F[i].transpose());
    gc.push_back(c->F[i].transpose());
  }

  // Echelon of (vector in D, its image in C) pairs, keyed by pivot index.
  std::map<int, std::pair<SVec, SVec>> rows;
  auto reduce = [&](SVec& x, SVec& y) {
    while (!x.empty()) {
      auto it = rows.find(x.begin()->first);
      if (it == rows.end()) return;
      Scalar f = -x.begin()->second;
      axpy(x, f, it->second.first);
      axpy(y, f, it->second.second);
    }
  };
  std::vector<std::pair<SVec, SVec>> queue{{SVec{{cyclic_index, Scalar(1)}}, image}};
  rows.emplace(cyclic_index, queue[0]);
  // Normalize the seed.
  for (size_t h = 0; h < queue.size(); ++h)
    for (size_t g = 0; g < gd.size(); ++g) {
      SVec x = apply_t(gd[g], queue[h].first);
      SVec y = apply_t(gc[g], queue[h].second);
      reduce(x, y);
      if (x.empty()) {
        if (!y.empty()) throw error("no such morphism: inconsistent cyclic extension");
        continue;
      }
      Scalar inv = x.begin()->second.inverse();
      for (auto& [j, v] : x) v *= inv;
      for (auto& [j, v] : y) v *= inv;
      int piv = x.begin()->first;
      rows.emplace(piv, std::make_pair(x, y));
      queue.emplace_back(std::move(x), std::move(y));
    }
  if (static_cast<int>(rows.size()) != d->dim())
    throw error("not cyclic: propagation spans a proper submodule");

  // matrix = Y B^{-1} with B the (invertible) column matrix of the x's.
  SMat b(d->dim(), d->dim()), y(c->dim(), d->dim());
  int col = 0;
  for (const auto& [piv, xy] : rows) {
    for (const auto& [i, v] : xy.first) b.set(i, col, v);
    for (const auto& [i, v] : xy.second) y.set(i, col, v);
    ++col;
  }
  return Intertwiner{d, c, y * inverse(b), std::move(provenance)};
}

bool is_intertwiner(const Intertwiner& f) {
  const ModuleRep& d = *f.domain;
  const ModuleRep& c = *f.codomain;
  if (f.matrix.rows() != c.dim() || f.matrix.cols() != d.dim()) return false;
  for (int row = 0; row < c.dim(); ++row)
    for (const auto& [colidx, v] : f.matrix.row(row))
      if (c.wts[row] != d.wts[colidx]) return false;
  for (int i = 0; i < d.rd.rank(); ++i) {
    if (f.matrix * d.E[i] != c.E[i] * f.matrix) return false;
    if (f.matrix * d.F[i] != c.F[i] * f.matrix) return false;
  }
  return true;
}

namespace {

void require_dominant(const RootDatum& rd, const Weight& w, const char* what) {
  if (!rd.is_dominant(w)) throw error(std::string(what) + ": weight not dominant " + weight_str(w));
}

Intertwiner checked(Intertwiner f) {
  if (!is_intertwiner(f)) throw error("internal: constructed map is not an intertwiner: " + f.provenance);
  return f;
}

}  // namespace

const Intertwiner& build_T(Context& ctx, const Weight& mu, const Weight& eta) {
  return ctx.memo(ctx.t_, std::make_pair(mu, eta), [&] {
    require_dominant(ctx.rd(), mu, "build_T");
    require_dominant(ctx.rd(), eta, "build_T");
    ModulePtr d = ctx.irrep(weight_add(mu, eta));
    ModulePtr c = ctx.tensor2(ctx.irrep(mu), ctx.irrep(eta));
    return checked(extend_from_cyclic(
        d, c, 0, SVec{{0, Scalar(1)}},
        "T[mu=" + weight_str(mu) + ",eta=" + weight_str(eta) + "]"));
  });
}

const Intertwiner& build_Tbar(Context& ctx, const Weight& mu, const Weight& eta) {
  return ctx.memo(ctx.tbar_, std::make_pair(mu, eta), [&] {
    require_dominant(ctx.rd(), mu, "build_Tbar");
    require_dominant(ctx.rd(), eta, "build_Tbar");
    ModulePtr d = ctx.conj_irrep(weight_add(mu, eta));
    ModulePtr c = ctx.tensor2(ctx.conj_irrep(mu), ctx.conj_irrep(eta));
    return checked(extend_from_cyclic(
        d, c, 0, SVec{{0, Scalar(1)}},
        "Tbar[mu=" + weight_str(mu) + ",eta=" + weight_str(eta) + "]"));
  });
}

const Intertwiner& build_tau(Context& ctx, int i, const Weight& mu, const Weight& eta) {
  return ctx.memo(ctx.tau_, std::make_tuple(i, mu, eta), [&] {
    if (mu[i] < 1 || eta[i] < 1) throw error("build_tau: needs mu(i) >= 1 and eta(i) >= 1");
    const RootDatum& rd = ctx.rd();
    ModulePtr vm = ctx.irrep(mu), ve = ctx.irrep(eta);
    ModulePtr d = ctx.irrep(weight_sub(weight_add(mu, eta), rd.simple_root(i)));
    ModulePtr c = ctx.tensor2(vm, ve);
    // [mu(i)] xi_mu (x) F_i xi_eta - q_i^{mu(i)} [eta(i)] F_i xi_mu (x) xi_eta.
    Scalar a = rd.qint(i, mu[i]);
    Scalar b = -(rd.qi_pow(i, mu[i]) * rd.qint(i, eta[i]));
    SVec full;
    for (const auto& [r2, v] : column(ve->F[i], 0)) full.emplace(r2, a * v);
    for (const auto& [r1, v] : column(vm->F[i], 0))
      axpy(full, b * v, SVec{{r1 * ve->dim(), Scalar(1)}});
    return checked(extend_from_cyclic(
        d, c, 0, full,
        "tau[i=" + std::to_string(i + 1) + ",mu=" + weight_str(mu) + ",eta=" + weight_str(eta) + "]"));
  });
}

const Intertwiner& build_taubar(Context& ctx, int i, const Weight& mu, const Weight& eta) {
  return ctx.memo(ctx.taubar_, std::make_tuple(i, mu, eta), [&] {
    if (mu[i] < 1 || eta[i] < 1) throw error("build_taubar: needs mu(i) >= 1 and eta(i) >= 1");
    const RootDatum& rd = ctx.rd();
    ModulePtr vm = ctx.conj_irrep(mu), ve = ctx.conj_irrep(eta);
    ModulePtr d = ctx.conj_irrep(weight_sub(weight_add(mu, eta), rd.simple_root(i)));
    ModulePtr c = ctx.tensor2(vm, ve);
    // [eta(i)] E_i xibar_mu (x) xibar_eta - q_i^{eta(i)} [mu(i)] xibar_mu (x) E_i xibar_eta.
    Scalar a = rd.qint(i, eta[i]);
    Scalar b = -(rd.qi_pow(i, eta[i]) * rd.qint(i, mu[i]));
    SVec full;
    for (const auto& [r1, v] : column(vm->E[i], 0)) full.emplace(r1 * ve->dim(), a * v);
    for (const auto& [r2, v] : column(ve->E[i], 0)) axpy(full, b * v, SVec{{r2, Scalar(1)}});
    return checked(extend_from_cyclic(
        d, c, 0, full,
        "taubar[i=" + std::to_string(i + 1) + ",mu=" + weight_str(mu) + ",eta=" + weight_str(eta) + "]"));
  });
}

const Intertwiner& build_S(Context& ctx, const Weight& mu) {
  return ctx.memo(ctx.s_, mu, [&] {
    require_dominant(ctx.rd(), mu, "build_S");
    ModulePtr c = ctx.tensor2(ctx.conj_irrep(mu), ctx.irrep(mu));
    // Invariant functional s: s E_i = s F_i = 0 for all i.
    SMat sys(0, 0);
    bool first = true;
    for (int i = 0; i < ctx.rd().rank(); ++i) {
      SMat e = c->E[i].transpose(), f = c->F[i].transpose();
      sys = first ? SMat::vstack(e, f) : SMat::vstack(sys, SMat::vstack(e, f));
      first = false;
    }
    SMat ker = kernel_basis(sys);
    if (ker.cols() != 1) throw error("build_S: invariant functional space is not one-dimensional");
    Scalar norm = ker.at(0, 0);  // value on xibar_mu (x) xi_mu (Kronecker index 0)
    if (norm.is_zero()) throw error("build_S: functional vanishes on the cyclic vector");
    SMat m(1, c->dim());
    for (int j = 0; j < c->dim(); ++j) {
      const Scalar& v = ker.at(j, 0);
      if (!v.is_zero()) m.set(0, j, v / norm);
    }
    return checked(Intertwiner{c, ctx.irrep(ctx.rd().zero()), std::move(m),
                               "S[mu=" + weight_str(mu) + "]"});
  });
}

const Intertwiner& build_tr(Context& ctx, const Weight& eta, const Weight& mu, const Weight& lam) {
  return ctx.memo(ctx.tr_, std::make_tuple(eta, mu, lam), [&] {
    const RootDatum& rd = ctx.rd();
    Weight lm = weight_add(lam, mu);
    require_dominant(rd, mu, "build_tr");
    require_dominant(rd, eta, "build_tr");
    require_dominant(rd, lm, "build_tr");
    const Intertwiner& tb = build_Tbar(ctx, mu, eta);
    const Intertwiner& t = build_T(ctx, eta, lm);
    const Intertwiner& s = build_S(ctx, eta);
    ModulePtr d = ctx.tensor2(ctx.conj_irrep(weight_add(mu, eta)),
                              ctx.irrep(weight_add(lm, eta)));
    ModulePtr c = ctx.tensor2(ctx.conj_irrep(mu), ctx.irrep(lm));
    int dmu = ctx.conj_irrep(mu)->dim(), dlm = ctx.irrep(lm)->dim();
    SMat mid = SMat::kron(SMat::identity(dmu), SMat::kron(s.matrix, SMat::identity(dlm)));
    SMat mat = mid * SMat::kron(tb.matrix, t.matrix);
    return checked(Intertwiner{d, c, std::move(mat),
                               "tr[eta=" + weight_str(eta) + ",mu=" + weight_str(mu) +
                                   ",lam=" + weight_str(lam) + "]"});
  });
}

const Intertwiner& build_R(Context& ctx, const ModKey& a, const ModKey& b) {
  return ctx.memo(ctx.r_, std::make_pair(a, b), [&] {
    ModulePtr u = ctx.module(a), v = ctx.module(b);
    ModulePtr d = ctx.tensor2(u, v);
    ModulePtr w = ctx.tensor2(v, u);
    SMat p = flip_matrix(u->dim(), v->dim());
    SMat q = flip_matrix(v->dim(), u->dim());
    // Same basis, opposite coproduct.
    auto op = std::make_shared<ModuleRep>();
    op->rd = d->rd;
    op->wts = d->wts;
    for (int i = 0; i < d->rd.rank(); ++i) {
      op->E.push_back(q * (w->E[i] * p));
      op->F.push_back(q * (w->F[i] * p));
    }
    int lw = lowest_weight_index(*u), hw = highest_weight_index(*v);
    for (int i = 0; i < u->rd.rank(); ++i)
      if (!column(u->F[i], lw).empty()) throw error("build_R: lowest weight vector not annihilated");
    int idx = lw * v->dim() + hw;
    Scalar norm = ctx.rd().q_pairing_pow(u->wts[lw], v->wts[hw]);
    Intertwiner r = extend_from_cyclic(d, ModulePtr(op), idx, SVec{{idx, norm}},
                                       "R[" + weight_str(a.w) + (a.conj ? "bar" : "") + "," +
                                           weight_str(b.w) + (b.conj ? "bar" : "") + "]");
    return checked(std::move(r));
  });
}

const Intertwiner& build_braiding(Context& ctx, const ModKey& a, const ModKey& b) {
  return ctx.memo(ctx.braid_, std::make_pair(a, b), [&] {
    const Intertwiner& r = build_R(ctx, a, b);
    ModulePtr u = ctx.module(a), v = ctx.module(b);
    ModulePtr d = ctx.tensor2(u, v);
    ModulePtr c = ctx.tensor2(v, u);
    SMat p = flip_matrix(u->dim(), v->dim());
    return checked(Intertwiner{d, c, p * r.matrix,
                               "sigma[" + weight_str(a.w) + (a.conj ? "bar" : "") + "," +
                                   weight_str(b.w) + (b.conj ? "bar" : "") + "]"});
  });
}

const Intertwiner& build_m(Context& ctx, const Weight& mu, const Weight& eta, const Weight& lam1,
                           const Weight& lam2) {
  return ctx.memo(ctx.m_, std::make_tuple(mu, eta, lam1, lam2), [&] {
    const RootDatum& rd = ctx.rd();
    Weight l1m = weight_add(lam1, mu), l2e = weight_add(lam2, eta);
    require_dominant(rd, mu, "build_m");
    require_dominant(rd, eta, "build_m");
    require_dominant(rd, l1m, "build_m");
    require_dominant(rd, l2e, "build_m");
    const Intertwiner& tb = build_Tbar(ctx, mu, eta);
    const Intertwiner& t = build_T(ctx, l1m, l2e);
    const Intertwiner& sig = build_braiding(ctx, ModKey{eta, true}, ModKey{l1m, false});
    ModulePtr vmu = ctx.conj_irrep(mu), v1 = ctx.irrep(l1m), veta = ctx.conj_irrep(eta),
              v2 = ctx.irrep(l2e);
    ModulePtr d = ctx.tensor2(ctx.conj_irrep(weight_add(mu, eta)),
                              ctx.irrep(weight_add(weight_add(lam1, lam2), weight_add(mu, eta))));
    ModulePtr c = ctx.tensor2(ctx.tensor2(ctx.tensor2(vmu, v1), veta), v2);
    SMat mid = SMat::kron(SMat::identity(vmu->dim()),
                          SMat::kron(sig.matrix, SMat::identity(v2->dim())));
    SMat mat = (mid * SMat::kron(tb.matrix, t.matrix)).scaled(rd.q_pairing_pow(l1m, eta));
    return checked(Intertwiner{d, c, std::move(mat),
                               "m[mu=" + weight_str(mu) + ",eta=" + weight_str(eta) +
                                   ",lam1=" + weight_str(lam1) + ",lam2=" + weight_str(lam2) + "]"});
  });
}

const Intertwiner& build_Psi(Context& ctx, int i, const Weight& eta, const Weight& mu,
                             const Weight& lam) {
  return ctx.memo(ctx.psi_, std::make_tuple(i, eta, mu, lam), [&] {
    const RootDatum& rd = ctx.rd();
    if (eta[i] < 1) throw error("build_Psi: needs eta(i) >= 1");
    Weight nu = weight_add(weight_add(lam, rd.simple_root(i)), mu);  // lam + alpha_i + mu
    require_dominant(rd, mu, "build_Psi");
    require_dominant(rd, nu, "build_Psi");
    const Intertwiner& tb = build_Tbar(ctx, mu, eta);
    const Intertwiner& tau = build_tau(ctx, i, eta, nu);
    const Intertwiner& s = build_S(ctx, eta);
    ModulePtr d = ctx.tensor2(ctx.conj_irrep(weight_add(mu, eta)),
                              ctx.irrep(weight_add(weight_add(lam, mu), eta)));
    ModulePtr c = ctx.tensor2(ctx.conj_irrep(mu), ctx.irrep(nu));
    int dmu = ctx.conj_irrep(mu)->dim(), dnu = ctx.irrep(nu)->dim();
    SMat mid = SMat::kron(SMat::identity(dmu), SMat::kron(s.matrix, SMat::identity(dnu)));
    SMat mat = (mid * SMat::kron(tb.matrix, tau.matrix)).scaled(rd.qint(i, eta[i]).inverse());
    return checked(Intertwiner{d, c, std::move(mat),
                               "Psi[i=" + std::to_string(i + 1) + ",eta=" + weight_str(eta) +
                                   ",mu=" + weight_str(mu) + ",lam=" + weight_str(lam) + "]"});
  });
}

const Intertwiner& build_Phi(Context& ctx, int i, const Weight& eta, const Weight& mu,
                             const Weight& lam) {
  return ctx.memo(ctx.phi_, std::make_tuple(i, eta, mu, lam), [&] {
    const RootDatum& rd = ctx.rd();
    if (eta[i] < 1) throw error("build_Phi: needs eta(i) >= 1");
    Weight mai = weight_add(mu, rd.simple_root(i));
    Weight lm = weight_add(lam, mu);
    require_dominant(rd, mai, "build_Phi");
    require_dominant(rd, lm, "build_Phi");
    const Intertwiner& tba = build_taubar(ctx, i, mai, eta);
    const Intertwiner& t = build_T(ctx, eta, lm);
    const Intertwiner& s = build_S(ctx, eta);
    ModulePtr d = ctx.tensor2(ctx.conj_irrep(weight_add(mu, eta)),
                              ctx.irrep(weight_add(lm, eta)));
    ModulePtr c = ctx.tensor2(ctx.conj_irrep(mai), ctx.irrep(lm));
    int dmai = ctx.conj_irrep(mai)->dim(), dlm = ctx.irrep(lm)->dim();
    SMat mid = SMat::kron(SMat::identity(dmai), SMat::kron(s.matrix, SMat::identity(dlm)));
    SMat mat = (mid * SMat::kron(tba.matrix, t.matrix)).scaled(rd.qint(i, eta[i]).inverse());
    return checked(Intertwiner{d, c, std::move(mat),
                               "Phi[i=" + std::to_string(i + 1) + ",eta=" + weight_str(eta) +
                                   ",mu=" + weight_str(mu) + ",lam=" + weight_str(lam) + "]"});
  });
}

DecompositionCertificate decompose(Context& ctx, const ModulePtr& v) {
  DecompositionCertificate cert;
  std::vector<Weight> doms;
  for (const auto& w : v->wts)
    if (v->rd.is_dominant(w) && std::find(doms.begin(), doms.end(), w) == doms.end())
      doms.push_back(w);
  std::sort(doms.begin(), doms.end());
  int total = 0;
  std::vector<std::pair<Weight, SMat>> blocks;  // (hw, embedding matrix)
  for (const auto& lam : doms) {
    SMat hwv = highest_weight_vectors(*v, lam);
    if (hwv.cols() == 0) continue;
    DecompositionCertificate::Summand s;
    s.hw = lam;
    ModulePtr irr = ctx.irrep(lam);
    for (int k = 0; k < hwv.cols(); ++k) {
      SVec image = column(hwv, k);
      Intertwiner emb = checked(extend_from_cyclic(
          irr, v, 0, image,
          "embed[lam=" + weight_str(lam) + ",copy=" + std::to_string(k) + "]"));
      blocks.emplace_back(lam, emb.matrix);
      s.embeddings.push_back(std::move(emb));
      total += irr->dim();
    }
    cert.summands.push_back(std::move(s));
  }
  if (total != v->dim()) throw error("decompose: dimension bookkeeping failed");
  // Invert the full change of basis to obtain projections.
  SMat p(v->dim(), 0);
  bool first = true;
  for (const auto& [lam, mat] : blocks) p = first ? mat : SMat::hstack(p, mat), first = false;
  SMat pinv = inverse(p);
  int off = 0;
  size_t bi = 0;
  for (auto& s : cert.summands) {
    ModulePtr irr = ctx.irrep(s.hw);
    for (size_t k = 0; k < s.embeddings.size(); ++k, ++bi) {
      SMat proj(irr->dim(), v->dim());
      for (int r = 0; r < irr->dim(); ++r)
        for (const auto& [cidx, val] : pinv.row(off + r)) proj.set(r, cidx, val);
      off += irr->dim();
      s.projections.push_back(checked(Intertwiner{
          v, irr, std::move(proj),
          "project[lam=" + weight_str(s.hw) + ",copy=" + std::to_string(k) + "]"}));
    }
  }
  return cert;
}

const DecompositionCertificate& Context::decomposition(const ModulePtr& v) {
  return memo(decomps_, v, [&] { return decompose(*this, v); });
}

const DecompositionCertificate& pair_decomposition(Context& ctx, const Weight& mu,
                                                   const Weight& eta) {
  return ctx.decomposition(ctx.tensor2(ctx.irrep(mu), ctx.irrep(eta)));
}

TauTReport verify_tauT_identities(Context& ctx, int i, const Weight& mu, const Weight& eta,
                                  const Weight& nu) {
  const RootDatum& rd = ctx.rd();
  Weight ai = rd.simple_root(i);
  Weight me = weight_add(mu, eta), en = weight_add(eta, nu);
  int dmu = ctx.irrep(mu)->dim(), dnu = ctx.irrep(nu)->dim();
  SMat lhs1 =
      SMat::kron(build_T(ctx, mu, eta).matrix, SMat::identity(dnu)) *
      build_tau(ctx, i, me, nu).matrix.scaled(rd.qint(i, eta[i]));
  SMat mid1 = SMat::kron(build_tau(ctx, i, mu, eta).matrix, SMat::identity(dnu)) *
              build_T(ctx, weight_sub(me, ai), nu).matrix.scaled(rd.qint(i, nu[i]));
  SMat rhs1 = SMat::kron(SMat::identity(dmu), build_tau(ctx, i, eta, nu).matrix) *
              build_T(ctx, mu, weight_sub(en, ai)).matrix.scaled(rd.qint(i, mu[i] + eta[i]));
  TauTReport rep;
  rep.residual1 = lhs1 - mid1 - rhs1;
  rep.identity1 = rep.residual1.is_zero();

  SMat lhs2 = SMat::kron(build_tau(ctx, i, mu, eta).matrix, SMat::identity(dnu)) *
              build_T(ctx, weight_sub(me, ai), nu).matrix.scaled(rd.qint(i, eta[i] + nu[i]));
  SMat a2 = SMat::kron(SMat::identity(dmu), build_T(ctx, eta, nu).matrix) *
            build_tau(ctx, i, mu, en).matrix.scaled(rd.qint(i, eta[i]));
  SMat b2 = SMat::kron(SMat::identity(dmu), build_tau(ctx, i, eta, nu).matrix) *
            build_T(ctx, mu, weight_sub(en, ai)).matrix.scaled(rd.qint(i, mu[i]));
  rep.residual2 = lhs2 - a2 + b2;
  rep.identity2 = rep.residual2.is_zero();
  return rep;
}

}  // namespace qct
