// Acceptance gate: one pass/fail line per criterion, exact (zero-tolerance)
// equality over Q(v) throughout.  Exit status 0 iff every criterion passes.

#include <chrono>
#include <cstdio>
#include <random>

#include "oracles.hpp"
#include "qct/comonoid.hpp"
#include "qct/io.hpp"
#include "qct/normalize.hpp"

using namespace qct;

namespace {

bool g_ok = true;

#define REQUIRE_EQ(a, b)                                                   \
  do {                                                                     \
    if (!((a) == (b))) {                                                   \
      std::printf("    mismatch at %s:%d\n", __FILE__, __LINE__);          \
      return false;                                                       \
    }                                                                      \
  } while (0)

#define REQUIRE_TRUE(x)                                                    \
  do {                                                                     \
    if (!(x)) {                                                            \
      std::printf("    failed condition at %s:%d: %s\n", __FILE__,         \
                  __LINE__, #x);                                           \
      return false;                                                       \
    }                                                                      \
  } while (0)

std::vector<WPair> a1_pairs(int n) {
  std::vector<WPair> ps;
  for (int s = 0; s <= n; ++s)
    for (int t = 0; t <= n; ++t) ps.push_back({{s}, {t}});
  return ps;
}

std::vector<Weight> a2_sum_upto(int n) {
  std::vector<Weight> ws;
  for (int a = 0; a <= n; ++a)
    for (int b = 0; a + b <= n; ++b) ws.push_back({a, b});
  return ws;
}

CentralElement random_central(const RootDatum& rd, const Weight& cutoff, unsigned seed) {
  std::mt19937 rng(seed);
  std::uniform_int_distribution<int> num(1, 5), den(1, 5), exp(-3, 3), sign(0, 1);
  CentralElement c;
  for (const Weight& w : rd.dominant_up_to(cutoff)) {
    Scalar val = Scalar::rational(num(rng), den(rng)) * Scalar::v_pow(exp(rng));
    if (sign(rng)) val = -val;
    c.values[w] = val;
  }
  return c;
}

CentralElement mult_central(int n, const Scalar& a) {
  CentralElement c;
  Scalar cur(1);
  for (int s = 0; s <= n; ++s) {
    c.values[{s}] = cur;
    cur = cur * a;
  }
  return c;
}

PBWElement cas_poly(const std::vector<mpq_class>& coeffs, int cutoff) {
  PBWElement cas = PBWElement::casimir(cutoff);
  PBWElement p = PBWElement::one(1, cutoff), r(1, cutoff);
  for (size_t k = 0; k < coeffs.size(); ++k) {
    r = r + p.scaled(coeffs[k]);
    if (k + 1 < coeffs.size()) p = p * cas;
  }
  return r;
}

// --- criterion 1: defining relations on every constructed module ---

bool criterion_relations() {
  Context a1(RootDatum::A1());
  std::vector<ModulePtr> mods1;
  for (int s = 0; s <= 7; ++s) mods1.push_back(a1.irrep({s}));
  for (const ModulePtr& m : mods1) REQUIRE_TRUE(check_relations(*m).all_pass());
  for (size_t i = 0; i < mods1.size(); ++i)
    for (size_t j = i; j < mods1.size(); ++j)
      REQUIRE_TRUE(check_relations(*a1.tensor2(mods1[i], mods1[j])).all_pass());

  Context a2(RootDatum::A2());
  std::vector<ModulePtr> mods2;
  for (const Weight& w : a2_sum_upto(3)) mods2.push_back(a2.irrep(w));
  for (const ModulePtr& m : mods2) REQUIRE_TRUE(check_relations(*m).all_pass());
  for (size_t i = 0; i < mods2.size(); ++i)
    for (size_t j = i; j < mods2.size(); ++j)
      REQUIRE_TRUE(check_relations(*a2.tensor2(mods2[i], mods2[j])).all_pass());
  return true;
}

// --- criterion 2: fusion vs. the independent q=1 character-count oracle ---

bool fusion_matches_oracle(Context& ctx, const Weight& a, const Weight& b) {
  const DecompositionCertificate& cert = pair_decomposition(ctx, a, b);
  std::map<Weight, long> got;
  for (const auto& s : cert.summands)
    got[s.hw] = static_cast<long>(s.embeddings.size());
  std::map<Weight, long> want = oracle::classical_fusion(ctx.rd(), a, b);
  return got == want;
}

bool criterion_fusion() {
  Context a1(RootDatum::A1());
  for (int s = 0; s <= 7; ++s)
    for (int t = s; t <= 7; ++t) REQUIRE_TRUE(fusion_matches_oracle(a1, {s}, {t}));
  // V_{1/2} (x) V_s = V_{s+1/2} (+) V_{s-1/2} in half-integer-spin labels.
  for (int t = 1; t <= 6; ++t) {
    const auto& cert = pair_decomposition(a1, {1}, {t});
    REQUIRE_EQ(static_cast<int>(cert.summands.size()), 2);
    REQUIRE_EQ(cert.multiplicity({t + 1}), 1);
    REQUIRE_EQ(cert.multiplicity({t - 1}), 1);
  }

  Context a2(RootDatum::A2());
  std::vector<Weight> ws = a2_sum_upto(3);
  for (size_t i = 0; i < ws.size(); ++i)
    for (size_t j = i; j < ws.size(); ++j)
      REQUIRE_TRUE(fusion_matches_oracle(a2, ws[i], ws[j]));
  const auto& ff = pair_decomposition(a2, {1, 0}, {0, 1});
  REQUIRE_EQ(static_cast<int>(ff.summands.size()), 2);
  REQUIRE_EQ(ff.multiplicity({1, 1}), 1);
  REQUIRE_EQ(ff.multiplicity({0, 0}), 1);
  return true;
}

// --- criterion 3: R-matrix suite ---

bool rmatrix_pair_ok(Context& ctx, const Weight& a, const Weight& b) {
  const Intertwiner& r = build_R(ctx, ModKey{a}, ModKey{b});
  REQUIRE_TRUE(is_intertwiner(r));  // coproduct/opposite-coproduct exchange
  REQUIRE_TRUE(is_intertwiner(build_braiding(ctx, ModKey{a}, ModKey{b})));
  // Normalization on the lowest (x) highest line: scalar q^{(zeta wt, xi wt)}.
  ModulePtr va = ctx.irrep(a), vb = ctx.irrep(b);
  int low = lowest_weight_index(*va), high = highest_weight_index(*vb);
  int j0 = low * vb->dim() + high;
  Scalar expect = ctx.rd().q_pairing_pow(va->wts[low], vb->wts[high]);
  for (int i = 0; i < r.matrix.rows(); ++i)
    REQUIRE_EQ(r.matrix.at(i, j0), i == j0 ? expect : Scalar(0));
  // sigma T_{a,b} = q^{(a,b)} T_{b,a}.
  SMat sig = build_braiding(ctx, ModKey{a}, ModKey{b}).matrix;
  REQUIRE_EQ(sig * build_T(ctx, a, b).matrix,
             build_T(ctx, b, a).matrix.scaled(ctx.rd().q_pairing_pow(a, b)));
  return true;
}

bool criterion_rmatrix() {
  Context a1(RootDatum::A1());
  for (int s = 0; s <= 3; ++s)
    for (int t = 0; t <= 3; ++t) REQUIRE_TRUE(rmatrix_pair_ok(a1, {s}, {t}));
  // Yang-Baxter on V_{1/2}^{(x)3} via the braid relation.
  SMat sig = build_braiding(a1, ModKey{{1}}, ModKey{{1}}).matrix;
  SMat s12 = SMat::kron(sig, SMat::identity(2)), s23 = SMat::kron(SMat::identity(2), sig);
  REQUIRE_EQ(s12 * s23 * s12, s23 * s12 * s23);

  Context a2(RootDatum::A2());
  std::vector<Weight> fund = {{1, 0}, {0, 1}};
  for (const Weight& a : fund)
    for (const Weight& b : fund) REQUIRE_TRUE(rmatrix_pair_ok(a2, a, b));
  SMat u = build_braiding(a2, ModKey{{1, 0}}, ModKey{{1, 0}}).matrix;
  SMat u12 = SMat::kron(u, SMat::identity(3)), u23 = SMat::kron(SMat::identity(3), u);
  REQUIRE_EQ(u12 * u23 * u12, u23 * u12 * u23);
  return true;
}

// --- criterion 4: tau-T exchange identities plus a negative control ---

bool criterion_tau() {
  Context a1(RootDatum::A1());
  for (int mu = 1; mu <= 3; ++mu)
    for (int eta = 1; eta <= 3; ++eta)
      for (int nu = 1; nu <= 3; ++nu) {
        TauTReport rep = verify_tauT_identities(a1, 0, {mu}, {eta}, {nu});
        REQUIRE_TRUE(rep.identity1);
        REQUIRE_TRUE(rep.identity2);
      }
  Context a2(RootDatum::A2());
  for (int i : {0, 1}) {
    TauTReport rep = verify_tauT_identities(a2, i, {1, 1}, {1, 1}, {1, 1});
    REQUIRE_TRUE(rep.identity1);
    REQUIRE_TRUE(rep.identity2);
  }
  // Negative control: one corrupted coefficient is detected.
  Intertwiner bad = build_tau(a1, 0, {2}, {2});
  bad.matrix.set(0, 0, bad.matrix.at(0, 0) + Scalar(1));
  REQUIRE_TRUE(!is_intertwiner(bad));
  return true;
}

// --- criterion 5: comonoid stage identities and representing iso ---

// Final report entry states the stage from which the two dimensions agree;
// stages before the stabilization point may legitimately disagree.
bool report_stabilization(const CochainReport& rep, const char* label) {
  if (rep.entries.empty()) return false;
  const auto& stab = rep.entries.back();
  if (stab.name != "remiso-stabilized" || !stab.pass) return false;
  std::printf("    representing iso %s: stabilizes %s\n", label, stab.params.c_str());
  return true;
}

bool criterion_comonoid() {
  Context a1(RootDatum::A1());
  TruncationWindow w{{{0}, {1}}, {{0}, {1}, {2}}};
  REQUIRE_TRUE(check_tr_m_consistency(a1, w).all_pass());
  REQUIRE_TRUE(check_coassociativity(a1, w).all_pass());
  REQUIRE_TRUE(check_counit(a1, w).all_pass());
  REQUIRE_TRUE(check_EF_lifts(a1, w, 0).all_pass());
  auto iso1 = check_representing_iso(a1, a1.irrep({2}), {0}, {{0}, {1}, {2}, {3}});
  REQUIRE_TRUE(report_stabilization(iso1, "(V_2, lam=0)"));
  auto iso2 = check_representing_iso(a1, a1.irrep({1}), {1}, {{0}, {1}, {2}});
  REQUIRE_TRUE(iso2.all_pass());
  REQUIRE_TRUE(report_stabilization(iso2, "(V_1, lam=1)"));

  Context a2(RootDatum::A2());
  TruncationWindow w2{{{0, 0}}, {{0, 0}, {1, 0}}};
  REQUIRE_TRUE(check_tr_m_consistency(a2, w2).all_pass());
  REQUIRE_TRUE(check_coassociativity(a2, w2).all_pass());
  REQUIRE_TRUE(check_counit(a2, w2).all_pass());
  auto iso3 = check_representing_iso(a2, a2.irrep({1, 1}), {1, 1},
                                     {{0, 0}, {1, 0}, {1, 1}});
  REQUIRE_TRUE(report_stabilization(iso3, "(V_(1,1), lam=(1,1))"));
  return true;
}

// --- criterion 6: normalization roundtrip over seeded central elements ---

bool roundtrip_once(Context& ctx, const std::vector<WPair>& pairs,
                    const Weight& support, unsigned seed) {
  CentralElement c0 = random_central(ctx.rd(), support, seed);
  InvariantTwoCochain e = coboundary_of_central(ctx, c0, pairs);
  NormalizeResult res = normalize(ctx, e);
  REQUIRE_TRUE(verify_trivial(ctx, res.e_norm).all_pass());
  REQUIRE_TRUE(coboundary_of_central(ctx, res.c_total, pairs).blocks == e.blocks);
  CentralElement ratio = central_mul(res.c_total, central_inv(c0));
  REQUIRE_TRUE(is_pq_character(ctx.rd(), ratio).has_value());
  return true;
}

bool criterion_normalize_roundtrip() {
  Context a1(RootDatum::A1());
  for (unsigned seed = 1; seed <= 18; ++seed)
    REQUIRE_TRUE(roundtrip_once(a1, a1_pairs(3), {8}, seed));

  // The rank-2 roundtrip costs minutes per seed (exact arithmetic on the
  // full coordinate-sum <= 2 pair grid), so two seeds carry the A2 share.
  Context a2(RootDatum::A2());
  std::vector<WPair> pairs;
  for (const Weight& a : a2_sum_upto(2))
    for (const Weight& b : a2_sum_upto(2)) pairs.push_back({a, b});
  for (unsigned seed = 1; seed <= 2; ++seed)
    REQUIRE_TRUE(roundtrip_once(a2, pairs, {4, 4}, seed));
  return true;
}

// --- criterion 7: su2 induction vs. brute force ---

bool criterion_su2_induction() {
  Context ctx(RootDatum::A1());
  for (unsigned seed : {21u, 22u, 23u}) {
    CentralElement c0 = random_central(ctx.rd(), {8}, seed);
    InvariantTwoCochain e = coboundary_of_central(ctx, c0, a1_pairs(3));
    NormalizeResult res = normalize(ctx, e);
    // Triviality is reproduced step by step on the normalized cochain...
    REQUIRE_TRUE(su2_induction(ctx, res.e_norm).all_pass());
    REQUIRE_TRUE(verify_trivial(ctx, res.e_norm).all_pass());
    // ...and on the raw coboundary the induction verdict agrees with brute
    // force block for block even though both detect nontriviality.
    CochainReport ind = su2_induction(ctx, e);
    REQUIRE_TRUE(!ind.all_pass());
    REQUIRE_TRUE(!verify_trivial(ctx, e).all_pass());
    for (const auto& en : ind.entries)
      if (en.name == "su2-agree") REQUIRE_TRUE(en.pass);
  }
  return true;
}

// --- criterion 8: lemma suite, four-leg compatibility, chi multiplicative ---

bool criterion_lemmas() {
  Context ctx(RootDatum::A1());
  TruncationWindow w{{{0}, {1}}, {{0}, {1}}};
  WPair p{{1}, {1}};

  // Fully normalized coboundary: every lemma holds with chi = 1.
  CentralElement c0 = random_central(ctx.rd(), {8}, 31);
  InvariantTwoCochain raw = coboundary_of_central(ctx, c0, a1_pairs(4));
  NormalizeResult res = normalize(ctx, raw);
  const InvariantTwoCochain& en = res.e_norm;
  REQUIRE_TRUE(lemma_characteristic(ctx, en, w).all_pass());
  REQUIRE_TRUE(lemma_commut(ctx, en, w, 0).all_pass());
  REQUIRE_TRUE(lemma_delta(ctx, en, w).all_pass());
  REQUIRE_TRUE(check_eCoDhat(ctx, en, p, p).all_pass());
  REQUIRE_TRUE(chi_value(ctx, en, {1}).is_one());

  // Multiplicative central element: nontrivial chi, still multiplicative.
  Scalar a = Scalar::rational(2, 3) * Scalar::v_pow(1);
  InvariantTwoCochain e = coboundary_of_central(ctx, mult_central(8, a), a1_pairs(4));
  REQUIRE_TRUE(lemma_characteristic(ctx, e, w).all_pass());
  REQUIRE_TRUE(lemma_delta(ctx, e, w).all_pass());
  REQUIRE_TRUE(check_eCoDhat(ctx, e, p, p).all_pass());
  for (int s = 1; s <= 2; ++s)
    for (int t = 1; t <= 2; ++t)
      REQUIRE_EQ(chi_value(ctx, e, {s + t}),
                 chi_value(ctx, e, {s}) * chi_value(ctx, e, {t}));
  REQUIRE_EQ(chi_value(ctx, e, {1}), a * a);
  return true;
}

// --- criterion 9: formal deformation solver over seeded central series ---

bool criterion_defsolve() {
  const int cutoff = 6, n = 3;
  DeltaTable dh = DeltaTable::classical(cutoff, n);
  for (unsigned seed = 1; seed <= 10; ++seed) {
    std::mt19937 rng(seed);
    std::uniform_int_distribution<int> num(-4, 4), den(1, 3);
    FormalSeries c0;
    c0.orders.push_back(PBWElement::one(1, cutoff));
    for (int k = 1; k <= n; ++k) {
      std::vector<mpq_class> coeffs;
      for (int j = 0; j <= 1; ++j) {
        mpq_class q(num(rng), den(rng));
        q.canonicalize();
        coeffs.push_back(q);
      }
      c0.orders.push_back(cas_poly(coeffs, cutoff));
    }
    FormalCochain e = coboundary_series(dh, c0);
    REQUIRE_TRUE(!e.truncated);
    // deformation_solve asserts symmetry/invariance of each extracted phi.
    DefsolveResult res = deformation_solve(e, dh, n);
    REQUIRE_TRUE(!res.truncated);
    REQUIRE_TRUE(coboundary_series(dh, res.c) == e);
    for (int k = 0; k <= n; ++k) REQUIRE_TRUE(is_invariant(res.c.orders[k]));
  }
  return true;
}

// --- criterion 10: serialization round-trips and report determinism ---

std::string build_report_from_scratch() {
  Context ctx(RootDatum::A1());
  CentralElement c;
  for (int s = 0; s <= 4; ++s) c.values[{s}] = Scalar::v_pow(s * s);
  InvariantTwoCochain e = coboundary_of_central(ctx, c, a1_pairs(2));
  std::vector<std::array<Weight, 3>> triples;
  for (int a = 0; a <= 1; ++a)
    for (int b = 0; b <= 1; ++b)
      for (int cc = 0; cc <= 1; ++cc)
        triples.push_back({Weight{a}, Weight{b}, Weight{cc}});
  RunConfig cfg;
  cfg.depth = 1;
  return render_report(cfg, "verify cocycle",
                       {{"symmetric", check_symmetric(ctx, e)},
                        {"invariant", check_invariant(ctx, e)},
                        {"cocycle", check_cocycle(ctx, e, triples)}});
}

bool criterion_serialization() {
  Context ctx(RootDatum::A1());
  RootDatum rd = ctx.rd();

  CentralElement c = random_central(rd, {6}, 41);
  std::string sc = serialize_central(rd, c);
  REQUIRE_EQ(serialize_central(rd, parse_central(sc, rd)), sc);

  InvariantTwoCochain e = coboundary_of_central(ctx, c, a1_pairs(2));
  std::string se = serialize_cochain(rd, e);
  REQUIRE_EQ(serialize_cochain(rd, parse_cochain(se, rd)), se);

  std::string sm = serialize_module(*ctx.irrep({3}));
  REQUIRE_EQ(serialize_module(parse_module(sm)), sm);

  IntertwinerFile f{"T", "([1],[2])", "V[1]xV[2]", "V[3]", build_T(ctx, {1}, {2}).matrix};
  std::string si = serialize_intertwiner(f);
  REQUIRE_EQ(serialize_intertwiner(parse_intertwiner(si)), si);

  TruncationWindow w{{{0}, {1}}, {{0}, {2}}};
  std::string sw = serialize_window(w);
  REQUIRE_EQ(serialize_window(parse_window(sw)), sw);

  FormalSeries fs;
  fs.orders = {PBWElement::one(1, 6), PBWElement::casimir(6)};
  FormalSeries db = coboundary_series(DeltaTable::classical(6, 2), fs);
  for (const FormalSeries& s : {fs, db}) {
    std::string ss = serialize_formal_series(s, 6);
    REQUIRE_EQ(serialize_formal_series(parse_formal_series(ss), 6), ss);
  }

  DeltaTable t = DeltaTable::classical(6, 2);
  std::string st = serialize_delta_table(t);
  REQUIRE_EQ(serialize_delta_table(parse_delta_table(st)), st);

  // Identical run configuration => byte-identical reports, across two
  // independent builds of all participating objects.
  REQUIRE_EQ(build_report_from_scratch(), build_report_from_scratch());
  return true;
}

void run(int idx, const char* name, bool (*fn)()) {
  auto t0 = std::chrono::steady_clock::now();
  bool ok = false;
  try {
    ok = fn();
  } catch (const std::exception& ex) {
    std::printf("    exception: %s\n", ex.what());
  }
  double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::printf("criterion %2d %-42s %s  (%.1fs)\n", idx, name, ok ? "pass" : "FAIL", secs);
  std::fflush(stdout);
  g_ok = g_ok && ok;
}

}  // namespace

int main() {
  run(1, "relations suite", criterion_relations);
  run(2, "fusion vs classical character oracle", criterion_fusion);
  run(3, "R-matrix suite", criterion_rmatrix);
  run(4, "tau-T identities with negative control", criterion_tau);
  run(5, "comonoid stage suite", criterion_comonoid);
  run(6, "normalization roundtrip, 20 seeds", criterion_normalize_roundtrip);
  run(7, "su2 induction vs brute force", criterion_su2_induction);
  run(8, "lemma suite and multiplicative chi", criterion_lemmas);
  run(9, "deformation solver, 10 seeds", criterion_defsolve);
  run(10, "serialization and report determinism", criterion_serialization);
  std::printf("acceptance: %s\n", g_ok ? "pass" : "FAIL");
  return g_ok ? 0 : 1;
}
