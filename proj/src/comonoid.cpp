#include "qct/comonoid.hpp"

#include "qct/normalize.hpp"

namespace qct {

namespace {

ModulePtr stage(Context& ctx, const Weight& mu, const Weight& hw) {
  return ctx.tensor2(ctx.conj_irrep(mu), ctx.irrep(hw));
}

// Index of the cyclic vector xi-bar (x) xi in a two-leg stage.
int cyclic(const ModulePtr& u, const ModulePtr& v) { return u->dist * v->dim() + v->dist; }

SMat column(const SMat& m, int j) {
  SMat c(m.rows(), 1);
  for (int i = 0; i < m.rows(); ++i) {
    auto it = m.row(i).find(j);
    if (it != m.row(i).end()) c.set(i, 0, it->second);
  }
  return c;
}

std::string wpar(std::initializer_list<std::pair<const char*, Weight>> ps) {
  std::string s;
  for (const auto& [k, w] : ps) {
    if (!s.empty()) s += ",";
    s += std::string(k) + "=" + weight_str(w);
  }
  return s;
}

void finish(CochainReport& rep, const char* name) {
  if (rep.entries.empty()) rep.entries.push_back({name, "vacuous", true});
}

}  // namespace

CochainReport check_tr_m_consistency(Context& ctx, const TruncationWindow& w) {
  const RootDatum& rd = ctx.rd();
  CochainReport rep;
  for (const Weight& mu : w.mus)
    for (const Weight& eta : w.mus)
      for (const Weight& nu : w.mus)
        for (const Weight& om : w.mus)
          for (const Weight& l1 : w.lambdas)
            for (const Weight& l2 : w.lambdas) {
              Weight l1mu = weight_add(l1, mu), l2eta = weight_add(l2, eta);
              Weight munu = weight_add(mu, nu), etaom = weight_add(eta, om);
              Weight l12 = weight_add(l1, l2);
              Weight mid = weight_add(l12, weight_add(mu, eta));
              Weight big = weight_add(mid, weight_add(nu, om));
              if (!rd.is_dominant(l1mu) || !rd.is_dominant(l2eta) ||
                  !rd.is_dominant(weight_add(l1mu, nu)) || !rd.is_dominant(weight_add(l2eta, om)) ||
                  !rd.is_dominant(mid) || !rd.is_dominant(big))
                continue;
              const Intertwiner& mbig = build_m(ctx, munu, etaom, l1, l2);
              const Intertwiner& tr1 = build_tr(ctx, nu, mu, l1);
              const Intertwiner& tr2 = build_tr(ctx, om, eta, l2);
              const Intertwiner& msm = build_m(ctx, mu, eta, l1, l2);
              const Intertwiner& trb = build_tr(ctx, weight_add(nu, om), weight_add(mu, eta), l12);
              bool pass = SMat::kron(tr1.matrix, tr2.matrix) * mbig.matrix ==
                          msm.matrix * trb.matrix;
              rep.entries.push_back({"tr-m",
                                     wpar({{"mu", mu},
                                           {"eta", eta},
                                           {"nu", nu},
                                           {"om", om},
                                           {"l1", l1},
                                           {"l2", l2}}),
                                     pass});
            }
  finish(rep, "tr-m");
  return rep;
}

CochainReport check_coassociativity(Context& ctx, const TruncationWindow& w) {
  const RootDatum& rd = ctx.rd();
  CochainReport rep;
  for (const Weight& m1 : w.mus)
    for (const Weight& m2 : w.mus)
      for (const Weight& m3 : w.mus)
        for (const Weight& l1 : w.lambdas)
          for (const Weight& l2 : w.lambdas)
            for (const Weight& l3 : w.lambdas) {
              Weight s1 = weight_add(l1, m1), s2 = weight_add(l2, m2), s3 = weight_add(l3, m3);
              Weight l12 = weight_add(l1, l2), l23 = weight_add(l2, l3);
              Weight m12 = weight_add(m1, m2), m23 = weight_add(m2, m3);
              Weight top = weight_add(weight_add(l12, l3), weight_add(m12, m3));
              if (!rd.is_dominant(s1) || !rd.is_dominant(s2) || !rd.is_dominant(s3) ||
                  !rd.is_dominant(weight_add(l12, m12)) ||
                  !rd.is_dominant(weight_add(l23, m23)) || !rd.is_dominant(top))
                continue;
              const Intertwiner& big1 = build_m(ctx, m12, m3, l12, l3);
              const Intertwiner& mtop = build_m(ctx, m1, m2, l1, l2);
              const Intertwiner& big2 = build_m(ctx, m1, m23, l1, l23);
              const Intertwiner& mbot = build_m(ctx, m2, m3, l2, l3);
              int tail = ctx.conj_irrep(m3)->dim() * ctx.irrep(s3)->dim();
              int head = ctx.conj_irrep(m1)->dim() * ctx.irrep(s1)->dim();
              SMat lhs = SMat::kron(mtop.matrix, SMat::identity(tail)) * big1.matrix;
              SMat rhs = SMat::kron(SMat::identity(head), mbot.matrix) * big2.matrix;
              rep.entries.push_back({"coassoc",
                                     wpar({{"mu1", m1},
                                           {"mu2", m2},
                                           {"mu3", m3},
                                           {"l1", l1},
                                           {"l2", l2},
                                           {"l3", l3}}),
                                     lhs == rhs});
            }
  finish(rep, "coassoc");
  return rep;
}

CochainReport check_counit(Context& ctx, const TruncationWindow& w) {
  const RootDatum& rd = ctx.rd();
  CochainReport rep;
  Weight zero = rd.zero();
  for (const Weight& mu : w.mus)
    for (const Weight& eta : w.mus)
      for (const Weight& lam : w.lambdas) {
        Weight le = weight_add(lam, eta), lm = weight_add(lam, mu);
        Weight lme = weight_add(lm, eta);
        if (!rd.is_dominant(lme)) continue;
        if (rd.is_dominant(le)) {
          const Intertwiner& m = build_m(ctx, mu, eta, zero, lam);
          const Intertwiner& s = build_S(ctx, mu);
          const Intertwiner& tr = build_tr(ctx, mu, eta, lam);
          int tail = ctx.conj_irrep(eta)->dim() * ctx.irrep(le)->dim();
          bool pass = SMat::kron(s.matrix, SMat::identity(tail)) * m.matrix == tr.matrix;
          rep.entries.push_back(
              {"counit-left", wpar({{"mu", mu}, {"eta", eta}, {"lam", lam}}), pass});
        }
        if (rd.is_dominant(lm)) {
          const Intertwiner& m = build_m(ctx, mu, eta, lam, zero);
          const Intertwiner& s = build_S(ctx, eta);
          const Intertwiner& tr = build_tr(ctx, eta, mu, lam);
          int head = ctx.conj_irrep(mu)->dim() * ctx.irrep(lm)->dim();
          bool pass = SMat::kron(SMat::identity(head), s.matrix) * m.matrix == tr.matrix;
          rep.entries.push_back(
              {"counit-right", wpar({{"mu", mu}, {"eta", eta}, {"lam", lam}}), pass});
        }
      }
  finish(rep, "counit");
  return rep;
}

int hom_dimension(Context& ctx, const ModulePtr& a, const ModulePtr& b) {
  const DecompositionCertificate& da = ctx.decomposition(a);
  const DecompositionCertificate& db = ctx.decomposition(b);
  int dim = 0;
  for (const auto& s : da.summands)
    dim += static_cast<int>(s.embeddings.size()) * db.multiplicity(s.hw);
  return dim;
}

CochainReport check_representing_iso(Context& ctx, const ModulePtr& v, const Weight& lam,
                                     const std::vector<Weight>& mus) {
  const RootDatum& rd = ctx.rd();
  CochainReport rep;
  auto wm = v->weight_multiplicities();
  int target = wm.count(lam) ? wm.at(lam) : 0;
  std::vector<bool> ok;
  std::vector<Weight> used;
  for (const Weight& mu : mus) {
    Weight lm = weight_add(lam, mu);
    if (!rd.is_dominant(lm)) continue;
    int hom = hom_dimension(ctx, stage(ctx, mu, lm), v);
    bool pass = hom == target;
    rep.entries.push_back({"remiso",
                           wpar({{"mu", mu}}) + ",hom=" + std::to_string(hom) +
                               ",weight-dim=" + std::to_string(target),
                           pass});
    ok.push_back(pass);
    used.push_back(mu);
  }
  int stab = -1;
  for (int k = 0; k < static_cast<int>(ok.size()); ++k) {
    bool all = true;
    for (int j = k; j < static_cast<int>(ok.size()); ++j) all = all && ok[j];
    if (all) {
      stab = k;
      break;
    }
  }
  rep.entries.push_back({"remiso-stabilized",
                         stab >= 0 ? "from " + wpar({{"mu", used[stab]}}) : "never",
                         stab >= 0});
  return rep;
}

CochainReport check_EF_lifts(Context& ctx, const TruncationWindow& w, int i) {
  const RootDatum& rd = ctx.rd();
  CochainReport rep;
  Weight alpha = rd.simple_root(i);
  for (const Weight& lam : w.lambdas)
    for (const Weight& mu : w.mus)
      for (const Weight& eta : w.mus) {
        if (eta[i] < 1) continue;
        Weight lme = weight_add(weight_add(lam, mu), eta);
        std::string base = wpar({{"lam", lam}, {"mu", mu}, {"eta", eta}});
        // Psi side: codomain stage (mu, lam + alpha_i).
        Weight lam_cod = weight_add(lam, alpha);
        if (rd.is_dominant(weight_add(lam_cod, mu)) && rd.is_dominant(lme)) {
          const Intertwiner& psi = build_Psi(ctx, i, eta, mu, lam);
          ModulePtr cm = psi.codomain;
          int cdom = cyclic(ctx.conj_irrep(weight_add(mu, eta)), ctx.irrep(lme));
          int ccod = cyclic(ctx.conj_irrep(mu), ctx.irrep(weight_add(lam_cod, mu)));
          rep.entries.push_back(
              {"psi-square", base, column(psi.matrix, cdom) == column(cm->F[i], ccod)});
          bool hom = true;
          for (const auto& s : ctx.decomposition(cm).summands)
            for (const auto& p : s.projections)
              hom = hom && ctx.irrep(s.hw)->F[i] * column(p.matrix, ccod) ==
                               p.matrix * column(psi.matrix, cdom);
          rep.entries.push_back({"psi-hom", base, hom});
          for (const Weight& nu : w.mus) {
            if (!rd.is_dominant(weight_add(lme, nu))) continue;
            const Intertwiner& big = build_Psi(ctx, i, weight_add(eta, nu), mu, lam);
            const Intertwiner& tr = build_tr(ctx, nu, weight_add(mu, eta), lam);
            rep.entries.push_back({"psi-tr-dom", base + "," + wpar({{"nu", nu}}),
                                   big.matrix == psi.matrix * tr.matrix});
            if (rd.is_dominant(weight_add(weight_add(lam_cod, mu), nu))) {
              const Intertwiner& shifted = build_Psi(ctx, i, eta, weight_add(mu, nu), lam);
              const Intertwiner& trc = build_tr(ctx, nu, mu, lam_cod);
              rep.entries.push_back({"psi-tr-cod", base + "," + wpar({{"nu", nu}}),
                                     big.matrix == trc.matrix * shifted.matrix});
            }
          }
        }
        // Phi side: codomain stage (mu + alpha_i, lam + mu).
        Weight mai = weight_add(mu, alpha);
        Weight lm = weight_add(lam, mu);
        if (rd.is_dominant(mai) && rd.is_dominant(lm) && rd.is_dominant(lme)) {
          const Intertwiner& phi = build_Phi(ctx, i, eta, mu, lam);
          ModulePtr cm = phi.codomain;
          int cdom = cyclic(ctx.conj_irrep(weight_add(mu, eta)), ctx.irrep(lme));
          int ccod = cyclic(ctx.conj_irrep(mai), ctx.irrep(lm));
          rep.entries.push_back(
              {"phi-square", base, column(phi.matrix, cdom) == column(cm->E[i], ccod)});
          bool hom = true;
          for (const auto& s : ctx.decomposition(cm).summands)
            for (const auto& p : s.projections)
              hom = hom && ctx.irrep(s.hw)->E[i] * column(p.matrix, ccod) ==
                               p.matrix * column(phi.matrix, cdom);
          rep.entries.push_back({"phi-hom", base, hom});
          for (const Weight& nu : w.mus) {
            if (!rd.is_dominant(weight_add(lme, nu))) continue;
            const Intertwiner& big = build_Phi(ctx, i, weight_add(eta, nu), mu, lam);
            const Intertwiner& tr = build_tr(ctx, nu, weight_add(mu, eta), lam);
            rep.entries.push_back({"phi-tr-dom", base + "," + wpar({{"nu", nu}}),
                                   big.matrix == phi.matrix * tr.matrix});
            const Intertwiner& shifted = build_Phi(ctx, i, eta, weight_add(mu, nu), lam);
            const Intertwiner& trc = build_tr(ctx, nu, mai, weight_sub(lam, alpha));
            rep.entries.push_back({"phi-tr-cod", base + "," + wpar({{"nu", nu}}),
                                   big.matrix == trc.matrix * shifted.matrix});
          }
        }
      }
  finish(rep, "ef-lifts");
  return rep;
}

Scalar chi_value(Context& ctx, const InvariantTwoCochain& e, const Weight& eta) {
  ModulePtr u = ctx.conj_irrep(eta), v = ctx.irrep(eta);
  const Intertwiner& s = build_S(ctx, eta);
  SMat se = s.matrix * act_on_pair(ctx, e, u, v);
  Scalar chi = se.at(0, cyclic(u, v));
  if (se != s.matrix.scaled(chi))
    throw error("chi extraction: non-scalar action at " + weight_str(eta));
  return chi;
}

namespace {

void require_highest_normalized(Context& ctx, const InvariantTwoCochain& e,
                                const std::vector<Weight>& mus) {
  for (const Weight& mu : mus)
    for (const Weight& eta : mus)
      if (!extract_highest_scalar(ctx, e, mu, eta).is_one())
        throw error("lemma precondition: highest-weight normalization fails at (" +
                    weight_str(mu) + "," + weight_str(eta) + ")");
}

}  // namespace

CochainReport lemma_characteristic(Context& ctx, const InvariantTwoCochain& e,
                                   const TruncationWindow& w) {
  const RootDatum& rd = ctx.rd();
  require_highest_normalized(ctx, e, w.mus);
  CochainReport rep;
  for (const Weight& mu : w.mus)
    for (const Weight& eta : w.mus) {
      const Intertwiner& tb = build_Tbar(ctx, mu, eta);
      SMat ebar = act_on_pair(ctx, e, ctx.conj_irrep(mu), ctx.conj_irrep(eta));
      rep.entries.push_back(
          {"tbar-high", wpar({{"mu", mu}, {"eta", eta}}), ebar * tb.matrix == tb.matrix});
      rep.entries.push_back({"chi-mult", wpar({{"mu", mu}, {"eta", eta}}),
                             chi_value(ctx, e, weight_add(mu, eta)) ==
                                 chi_value(ctx, e, mu) * chi_value(ctx, e, eta)});
    }
  for (const Weight& eta : w.mus) {
    Scalar chi = chi_value(ctx, e, eta);
    for (const Weight& mu : w.mus)
      for (const Weight& lam : w.lambdas) {
        Weight lm = weight_add(lam, mu), lme = weight_add(lm, eta);
        if (!rd.is_dominant(lm) || !rd.is_dominant(lme)) continue;
        const Intertwiner& tr = build_tr(ctx, eta, mu, lam);
        SMat lhs = tr.matrix * act_on_pair(ctx, e, ctx.conj_irrep(weight_add(mu, eta)),
                                           ctx.irrep(lme));
        SMat rhs = act_on_pair(ctx, e, ctx.conj_irrep(mu), ctx.irrep(lm)).scaled(chi) * tr.matrix;
        rep.entries.push_back(
            {"characteristic", wpar({{"eta", eta}, {"mu", mu}, {"lam", lam}}), lhs == rhs});
      }
  }
  return rep;
}

CochainReport lemma_commut(Context& ctx, const InvariantTwoCochain& e, const TruncationWindow& w,
                           int i) {
  const RootDatum& rd = ctx.rd();
  require_highest_normalized(ctx, e, w.mus);
  for (const Weight& mu : w.mus)
    for (const Weight& eta : w.mus)
      if (mu[i] >= 1 && eta[i] >= 1 && !extract_tau_scalar(ctx, e, i, mu, eta).is_one())
        throw error("lemma precondition: tau normalization fails at (" + weight_str(mu) + "," +
                    weight_str(eta) + ")");
  CochainReport rep;
  Weight alpha = rd.simple_root(i);
  for (const Weight& mu : w.mus)
    for (const Weight& eta : w.mus) {
      if (mu[i] < 1 || eta[i] < 1) continue;
      const Intertwiner& tb = build_taubar(ctx, i, mu, eta);
      SMat ebar = act_on_pair(ctx, e, ctx.conj_irrep(mu), ctx.conj_irrep(eta));
      rep.entries.push_back(
          {"taubar-norm", wpar({{"mu", mu}, {"eta", eta}}), ebar * tb.matrix == tb.matrix});
    }
  for (const Weight& eta : w.mus) {
    if (eta[i] < 1) continue;
    Scalar chi = chi_value(ctx, e, eta);
    for (const Weight& mu : w.mus)
      for (const Weight& lam : w.lambdas) {
        Weight lme = weight_add(weight_add(lam, mu), eta);
        if (!rd.is_dominant(lme)) continue;
        SMat ebig = act_on_pair(ctx, e, ctx.conj_irrep(weight_add(mu, eta)), ctx.irrep(lme));
        Weight lac = weight_add(weight_add(lam, alpha), mu);
        if (rd.is_dominant(lac)) {
          const Intertwiner& psi = build_Psi(ctx, i, eta, mu, lam);
          SMat rhs =
              act_on_pair(ctx, e, ctx.conj_irrep(mu), ctx.irrep(lac)).scaled(chi) * psi.matrix;
          rep.entries.push_back({"commut-psi", wpar({{"eta", eta}, {"mu", mu}, {"lam", lam}}),
                                 psi.matrix * ebig == rhs});
        }
        Weight mai = weight_add(mu, alpha), lm = weight_add(lam, mu);
        if (rd.is_dominant(mai) && rd.is_dominant(lm)) {
          const Intertwiner& phi = build_Phi(ctx, i, eta, mu, lam);
          SMat rhs =
              act_on_pair(ctx, e, ctx.conj_irrep(mai), ctx.irrep(lm)).scaled(chi) * phi.matrix;
          rep.entries.push_back({"commut-phi", wpar({{"eta", eta}, {"mu", mu}, {"lam", lam}}),
                                 phi.matrix * ebig == rhs});
        }
      }
  }
  finish(rep, "commut");
  return rep;
}

CochainReport lemma_delta(Context& ctx, const InvariantTwoCochain& e, const TruncationWindow& w) {
  const RootDatum& rd = ctx.rd();
  if (!check_symmetric(ctx, e).all_pass())
    throw error("lemma precondition: cochain not symmetric");
  require_highest_normalized(ctx, e, w.mus);
  CochainReport rep;
  for (const Weight& mu : w.mus)
    for (const Weight& eta : w.mus)
      for (const Weight& l1 : w.lambdas)
        for (const Weight& l2 : w.lambdas) {
          Weight s1 = weight_add(l1, mu), s2 = weight_add(l2, eta);
          Weight big = weight_add(weight_add(l1, l2), weight_add(mu, eta));
          if (!rd.is_dominant(s1) || !rd.is_dominant(s2) || !rd.is_dominant(big)) continue;
          const Intertwiner& m = build_m(ctx, mu, eta, l1, l2);
          SMat ebig = act_on_pair(ctx, e, ctx.conj_irrep(weight_add(mu, eta)), ctx.irrep(big));
          ModulePtr a = stage(ctx, mu, s1), b = stage(ctx, eta, s2);
          SMat e1 = act_on_pair(ctx, e, ctx.conj_irrep(mu), ctx.irrep(s1));
          SMat e2 = act_on_pair(ctx, e, ctx.conj_irrep(eta), ctx.irrep(s2));
          SMat rhs = act_on_pair(ctx, e, a, b) * (SMat::kron(e1, e2) * m.matrix);
          rep.entries.push_back({"delta",
                                 wpar({{"mu", mu}, {"eta", eta}, {"l1", l1}, {"l2", l2}}),
                                 m.matrix * ebig == rhs});
        }
  finish(rep, "delta");
  return rep;
}

}  // namespace qct
