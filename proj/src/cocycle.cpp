#include "qct/cocycle.hpp"

#include <algorithm>

namespace qct {

namespace {

std::string pair_str(const Weight& mu, const Weight& eta) {
  return "(" + weight_str(mu) + "," + weight_str(eta) + ")";
}

// B commutes with the full module action on w: with every E_i, F_i, and with
// every K_i (the latter is exactly weight preservation of all entries).
bool commutes_with_action(const SMat& b, const ModuleRep& w) {
  for (int i = 0; i < w.rd.rank(); ++i) {
    if (b * w.E[i] != w.E[i] * b) return false;
    if (b * w.F[i] != w.F[i] * b) return false;
  }
  for (int r = 0; r < b.rows(); ++r)
    for (const auto& [c, val] : b.row(r))
      if (!val.is_zero() && w.wts[r] != w.wts[c]) return false;
  return true;
}

}  // namespace

const Scalar& CentralElement::value(const Weight& mu) const {
  auto it = values.find(mu);
  if (it == values.end())
    throw error("central element cutoff exceeded at weight " + weight_str(mu));
  if (it->second.is_zero())
    throw error("central element not invertible at weight " + weight_str(mu));
  return it->second;
}

CentralElement central_one(const std::vector<Weight>& support) {
  CentralElement c;
  for (const auto& w : support) c.values[w] = Scalar(1);
  return c;
}

CentralElement central_mul(const CentralElement& a, const CentralElement& b) {
  CentralElement r;
  for (const auto& [w, av] : a.values)
    if (b.covers(w)) r.values[w] = av * b.value(w);
  return r;
}

CentralElement central_inv(const CentralElement& a) {
  CentralElement r;
  for (const auto& [w, av] : a.values) r.values[w] = a.value(w).inverse();
  return r;
}

SMat central_action(Context& ctx, const CentralElement& c, const ModulePtr& m) {
  const DecompositionCertificate& cert = ctx.decomposition(m);
  SMat out(m->dim(), m->dim());
  for (const auto& s : cert.summands) {
    const Scalar& val = c.value(s.hw);
    for (size_t k = 0; k < s.embeddings.size(); ++k)
      out = out + s.embeddings[k].matrix.scaled(val) * s.projections[k].matrix;
  }
  return out;
}

const SMat& InvariantTwoCochain::block(const Weight& mu, const Weight& eta) const {
  auto it = blocks.find(WPair{mu, eta});
  if (it == blocks.end())
    throw error("cochain cutoff exceeded at pair " + pair_str(mu, eta));
  return it->second;
}

std::vector<WPair> InvariantTwoCochain::pairs() const {
  std::vector<WPair> out;
  out.reserve(blocks.size());
  for (const auto& [k, b] : blocks) out.push_back(k);
  return out;
}

InvariantTwoCochain make_invariant_cochain(Context& ctx, std::map<WPair, SMat> blocks) {
  for (const auto& [key, b] : blocks) {
    ModulePtr w = ctx.tensor2(ctx.irrep(key.first), ctx.irrep(key.second));
    if (b.rows() != w->dim() || b.cols() != w->dim())
      throw error("cochain block shape mismatch at pair " + pair_str(key.first, key.second));
    if (!commutes_with_action(b, *w))
      throw error("cochain block not invariant at pair " + pair_str(key.first, key.second));
    if (rank(b) != b.rows())
      throw error("cochain block singular at pair " + pair_str(key.first, key.second));
  }
  InvariantTwoCochain e;
  e.blocks = std::move(blocks);
  return e;
}

InvariantTwoCochain identity_cochain(Context& ctx, const std::vector<WPair>& pairs) {
  std::map<WPair, SMat> blocks;
  for (const auto& p : pairs) {
    int n = ctx.irrep(p.first)->dim() * ctx.irrep(p.second)->dim();
    blocks.emplace(p, SMat::identity(n));
  }
  InvariantTwoCochain e;
  e.blocks = std::move(blocks);
  return e;
}

InvariantTwoCochain coboundary_of_central(Context& ctx, const CentralElement& c,
                                          const std::vector<WPair>& pairs) {
  std::map<WPair, SMat> blocks;
  for (const auto& [mu, eta] : pairs) {
    const DecompositionCertificate& cert = pair_decomposition(ctx, mu, eta);
    Scalar outer = c.value(mu) * c.value(eta);
    int n = ctx.irrep(mu)->dim() * ctx.irrep(eta)->dim();
    SMat b(n, n);
    for (const auto& s : cert.summands) {
      Scalar val = outer / c.value(s.hw);
      for (size_t k = 0; k < s.embeddings.size(); ++k)
        b = b + s.embeddings[k].matrix.scaled(val) * s.projections[k].matrix;
    }
    blocks.emplace(WPair{mu, eta}, std::move(b));
  }
  return make_invariant_cochain(ctx, std::move(blocks));
}

SMat act_on_pair(Context& ctx, const InvariantTwoCochain& e, const ModulePtr& u,
                 const ModulePtr& v) {
  const DecompositionCertificate& cu = ctx.decomposition(u);
  const DecompositionCertificate& cv = ctx.decomposition(v);
  int n = u->dim() * v->dim();
  SMat out(n, n);
  for (const auto& su : cu.summands)
    for (const auto& sv : cv.summands) {
      const SMat& b = e.block(su.hw, sv.hw);
      for (size_t ku = 0; ku < su.embeddings.size(); ++ku)
        for (size_t kv = 0; kv < sv.embeddings.size(); ++kv) {
          // Embeddings/projections are one-leg module maps, so their Kronecker
          // products intertwine the two-leg action; conjugation transports the
          // stored block to this summand pair.
          out = out + SMat::kron(su.embeddings[ku].matrix, sv.embeddings[kv].matrix) * b *
                          SMat::kron(su.projections[ku].matrix, sv.projections[kv].matrix);
        }
    }
  return out;
}

bool CochainReport::all_pass() const {
  return std::all_of(entries.begin(), entries.end(), [](const Entry& e) { return e.pass; });
}

std::string CochainReport::first_failure() const {
  for (const auto& e : entries)
    if (!e.pass) return e.name + " " + e.params;
  return "";
}

CochainReport check_cocycle(Context& ctx, const InvariantTwoCochain& e,
                            const std::vector<std::array<Weight, 3>>& triples) {
  CochainReport rep;
  for (const auto& [mu, eta, nu] : triples) {
    ModulePtr vmu = ctx.irrep(mu), veta = ctx.irrep(eta), vnu = ctx.irrep(nu);
    ModulePtr tme = ctx.tensor2(vmu, veta);
    ModulePtr ten = ctx.tensor2(veta, vnu);
    SMat lhs = SMat::kron(e.block(mu, eta), SMat::identity(vnu->dim())) *
               act_on_pair(ctx, e, tme, vnu);
    SMat rhs = SMat::kron(SMat::identity(vmu->dim()), e.block(eta, nu)) *
               act_on_pair(ctx, e, vmu, ten);
    rep.entries.push_back({"cocycle",
                           "(" + weight_str(mu) + "," + weight_str(eta) + "," + weight_str(nu) +
                               ")",
                           lhs == rhs});
  }
  return rep;
}

CochainReport check_symmetric(Context& ctx, const InvariantTwoCochain& e) {
  CochainReport rep;
  for (const auto& [key, b] : e.blocks) {
    const auto& [mu, eta] = key;
    int dm = ctx.irrep(mu)->dim(), de = ctx.irrep(eta)->dim();
    const SMat& r = build_R(ctx, ModKey{mu}, ModKey{eta}).matrix;
    // E_21 on V_mu (x) V_eta is the (eta, mu) block conjugated by the flip.
    SMat e21 = flip_matrix(de, dm) * e.block(eta, mu) * flip_matrix(dm, de);
    rep.entries.push_back({"symmetric", pair_str(mu, eta), r * b == e21 * r});
  }
  return rep;
}

CochainReport check_invariant(Context& ctx, const InvariantTwoCochain& e) {
  CochainReport rep;
  for (const auto& [key, b] : e.blocks) {
    ModulePtr w = ctx.tensor2(ctx.irrep(key.first), ctx.irrep(key.second));
    rep.entries.push_back(
        {"invariant", pair_str(key.first, key.second), commutes_with_action(b, *w)});
  }
  return rep;
}

CochainReport check_counital(Context& ctx, const InvariantTwoCochain& e) {
  CochainReport rep;
  Weight zero = ctx.rd().zero();
  for (const auto& [key, b] : e.blocks) {
    if (key.first != zero && key.second != zero) continue;
    rep.entries.push_back(
        {"counital", pair_str(key.first, key.second), b == SMat::identity(b.rows())});
  }
  return rep;
}

InvariantTwoCochain cochain_mul(Context& ctx, const InvariantTwoCochain& a,
                                const InvariantTwoCochain& b) {
  std::map<WPair, SMat> blocks;
  for (const auto& [key, am] : a.blocks)
    blocks.emplace(key, am * b.block(key.first, key.second));
  if (blocks.size() != b.blocks.size()) throw error("cochain_mul: mismatched pair sets");
  return make_invariant_cochain(ctx, std::move(blocks));
}

InvariantTwoCochain cochain_inv(Context& ctx, const InvariantTwoCochain& a) {
  std::map<WPair, SMat> blocks;
  for (const auto& [key, am] : a.blocks) {
    try {
      blocks.emplace(key, inverse(am));
    } catch (const error&) {
      throw error("cochain block singular at pair " + pair_str(key.first, key.second));
    }
  }
  return make_invariant_cochain(ctx, std::move(blocks));
}

CochainReport check_eCoDhat(Context& ctx, const InvariantTwoCochain& e, const WPair& left,
                            const WPair& right) {
  const auto& [mu, eta] = left;
  const auto& [mup, etap] = right;
  ModulePtr vmu = ctx.irrep(mu), veta = ctx.irrep(eta);
  ModulePtr vmup = ctx.irrep(mup), vetap = ctx.irrep(etap);
  ModulePtr t12 = ctx.tensor2(vmu, veta);
  ModulePtr t34 = ctx.tensor2(vmup, vetap);
  ModulePtr t23 = ctx.tensor2(veta, vmup);
  ModulePtr t234 = ctx.tensor2(t23, vetap);

  SMat lhs = act_on_pair(ctx, e, t12, t34);
  SMat i1 = SMat::identity(vmu->dim());
  SMat i4 = SMat::identity(vetap->dim());
  SMat a1 = SMat::kron(i1, SMat::kron(e.block(eta, mup), i4));
  SMat a2 = SMat::kron(i1, act_on_pair(ctx, e, t23, vetap));
  SMat a3 = act_on_pair(ctx, e, vmu, t234);
  SMat a4 = SMat::kron(inverse(e.block(mu, eta)), inverse(e.block(mup, etap)));
  CochainReport rep;
  rep.entries.push_back({"eCoDhat", pair_str(mu, eta) + "x" + pair_str(mup, etap),
                         lhs == a1 * a2 * a3 * a4});
  return rep;
}

}  // namespace qct
