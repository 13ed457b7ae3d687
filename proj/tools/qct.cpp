// Batch front-end: decomposition reports, verification suites, the
// normalization pipeline, and the formal-deformation solver.  Exit status 0
// iff every check passed; 1 when a check failed; 2 on usage/input errors.
// Reports are deterministic: identical configs produce byte-identical output.

#include <iostream>

#include "CLI11.hpp"
#include "qct/io.hpp"

namespace {

using namespace qct;

int coord_sum(const Weight& w) {
  int s = 0;
  for (int x : w) s += x;
  return s;
}

std::string module_label(const RootDatum& rd, const Weight& w, bool conj) {
  std::string s = conj ? "Vbar_" : "V_";
  return s + weight_str(w);
}

std::string cache_name(const RootDatum& rd, const Weight& w) {
  std::string s = "module_" + rd.type();
  for (int x : w) s += "_" + std::to_string(x);
  return s + ".json";
}

// Build-or-verify-against-cache: a cache hit must serialize identically to a
// fresh build, so hit and cold runs cannot diverge.
ModulePtr cached_irrep(Context& ctx, const RunConfig& cfg, const Weight& w) {
  ModulePtr m = ctx.irrep(w);
  if (cfg.cache_dir.empty()) return m;
  std::string path = cfg.cache_dir + "/" + cache_name(ctx.rd(), w);
  std::string fresh = serialize_module(*m);
  std::ifstream probe(path);
  if (probe.good()) {
    if (read_file(path) != fresh)
      throw error("cache incoherent for " + path + "; delete the cache and rerun");
  } else {
    write_file(path, fresh);
  }
  return m;
}

CochainReport from_relations(const RelationReport& r, const std::string& label) {
  CochainReport rep;
  for (const auto& en : r.entries) rep.entries.push_back({en.name, label, en.pass});
  return rep;
}

int finish(const RunConfig& cfg, const std::string& title,
           const std::vector<std::pair<std::string, CochainReport>>& sections) {
  std::string report = render_report(cfg, title, sections);
  if (cfg.out_path.empty())
    std::cout << report;
  else
    write_file(cfg.out_path, report);
  for (const auto& [suite, rep] : sections)
    if (!rep.all_pass()) return 1;
  return 0;
}

int cmd_decompose(const RunConfig& cfg, const std::string& mu_s, const std::string& eta_s) {
  RootDatum rd = RootDatum::from_type(cfg.root_datum);
  Weight mu = parse_weight(mu_s), eta = parse_weight(eta_s);
  for (const Weight& w : {mu, eta}) {
    if (static_cast<int>(w.size()) != rd.rank() || !rd.is_dominant(w))
      throw error("weight " + weight_str(w) + " is not dominant of rank " +
                  std::to_string(rd.rank()));
    for (size_t i = 0; i < w.size(); ++i)
      if (!cfg.cutoff.empty() && w[i] > cfg.cutoff[i])
        throw error("weight " + weight_str(w) + " exceeds cutoff " + weight_str(cfg.cutoff));
  }
  Context ctx(rd);
  cached_irrep(ctx, cfg, mu);
  cached_irrep(ctx, cfg, eta);
  ModulePtr t = ctx.tensor2(ctx.irrep(mu), ctx.irrep(eta));
  const DecompositionCertificate& cert = ctx.decomposition(t);

  CochainReport summands, projectors;
  SMat total(t->dim(), t->dim());
  for (const auto& s : cert.summands) {
    summands.entries.push_back(
        {"summand",
         "hw=" + weight_str(s.hw) + ",mult=" + std::to_string(s.embeddings.size()), true});
    for (size_t k = 0; k < s.embeddings.size(); ++k) {
      const SMat& e = s.embeddings[k].matrix;
      const SMat& p = s.projections[k].matrix;
      bool ok = is_intertwiner(s.embeddings[k]) && is_intertwiner(s.projections[k]) &&
                p * e == SMat::identity(e.cols());
      projectors.entries.push_back(
          {"proj-embed", "hw=" + weight_str(s.hw) + ",copy=" + std::to_string(k), ok});
      total = total + e * p;
    }
  }
  projectors.entries.push_back(
      {"completeness", "dim=" + std::to_string(t->dim()), total == SMat::identity(t->dim())});
  return finish(cfg, "decompose " + weight_str(mu) + " (x) " + weight_str(eta),
                {{"summands", summands}, {"certificates", projectors}});
}

CochainReport verify_relations(Context& ctx, const RunConfig& cfg) {
  RootDatum rd = ctx.rd();
  CochainReport rep;
  std::vector<Weight> doms = rd.dominant_up_to(cfg.cutoff);
  for (const Weight& w : doms) {
    auto r = from_relations(check_relations(*ctx.irrep(w)), module_label(rd, w, false));
    rep.entries.insert(rep.entries.end(), r.entries.begin(), r.entries.end());
  }
  for (const Weight& a : doms)
    for (const Weight& b : doms) {
      ModulePtr t = ctx.tensor2(ctx.irrep(a), ctx.irrep(b));
      auto r = from_relations(check_relations(*t),
                              module_label(rd, a, false) + "(x)" + module_label(rd, b, false));
      rep.entries.insert(rep.entries.end(), r.entries.begin(), r.entries.end());
    }
  return rep;
}

CochainReport verify_rmatrix(Context& ctx, const RunConfig& cfg) {
  RootDatum rd = ctx.rd();
  CochainReport rep;
  std::vector<Weight> doms = rd.dominant_up_to(cfg.cutoff);
  for (const Weight& a : doms)
    for (const Weight& b : doms) {
      std::string par = weight_str(a) + "," + weight_str(b);
      const Intertwiner& r = build_R(ctx, {a}, {b});
      rep.entries.push_back({"R-intertwines", par, is_intertwiner(r)});
      // Normalization on (lowest (x) highest).
      ModulePtr va = ctx.irrep(a), vb = ctx.irrep(b);
      int lw = lowest_weight_index(*va), hi = highest_weight_index(*vb);
      int col = lw * vb->dim() + hi;
      Scalar want = rd.q_pairing_pow(va->wts[lw], vb->wts[hi]);
      bool norm = true;
      for (int row = 0; row < r.matrix.rows(); ++row)
        norm = norm && (r.matrix.at(row, col) == (row == col ? want : Scalar(0)));
      rep.entries.push_back({"R-normalization", par, norm});
      // sigma T_{a,b} = q^{(a,b)} T_{b,a}.
      const Intertwiner& sg = build_braiding(ctx, {a}, {b});
      bool st = sg.matrix * build_T(ctx, a, b).matrix ==
                build_T(ctx, b, a).matrix.scaled(rd.q_pairing_pow(a, b));
      rep.entries.push_back({"sigma-T", par, st});
    }
  for (int i = 0; i < rd.rank(); ++i) {
    Weight f = rd.fundamental(i);
    SMat s = build_braiding(ctx, {f}, {f}).matrix;
    int d = ctx.irrep(f)->dim();
    SMat s1 = SMat::kron(s, SMat::identity(d)), s2 = SMat::kron(SMat::identity(d), s);
    rep.entries.push_back({"braid-relation", weight_str(f), s1 * s2 * s1 == s2 * s1 * s2});
  }
  return rep;
}

CochainReport verify_tau(Context& ctx, const RunConfig& cfg) {
  RootDatum rd = ctx.rd();
  CochainReport rep;
  std::vector<Weight> doms = rd.dominant_up_to(cfg.cutoff);
  for (int i = 0; i < rd.rank(); ++i)
    for (const Weight& mu : doms)
      for (const Weight& eta : doms)
        for (const Weight& nu : doms) {
          if (mu[i] < 1 || eta[i] < 1 || nu[i] < 1) continue;
          auto r = verify_tauT_identities(ctx, i, mu, eta, nu);
          std::string par = "i=" + std::to_string(i) + "," + weight_str(mu) + "," +
                            weight_str(eta) + "," + weight_str(nu);
          rep.entries.push_back({"tauT-1", par, r.identity1});
          rep.entries.push_back({"tauT-2", par, r.identity2});
        }
  if (rep.entries.empty()) rep.entries.push_back({"tauT", "vacuous", true});
  return rep;
}

std::vector<std::pair<std::string, CochainReport>> verify_comonoid(
    Context& ctx, const RunConfig& cfg, const std::string& window_file) {
  TruncationWindow w;
  if (!window_file.empty()) {
    w = parse_window(read_file(window_file));
  } else {
    // Default desk-scale window; pass --window for anything larger.
    w.lambdas = {ctx.rd().zero()};
    w.mus = {ctx.rd().zero(), ctx.rd().fundamental(0)};
  }
  std::vector<std::pair<std::string, CochainReport>> sections;
  sections.emplace_back("tr-m", check_tr_m_consistency(ctx, w));
  sections.emplace_back("coassoc", check_coassociativity(ctx, w));
  sections.emplace_back("counit", check_counit(ctx, w));
  for (int i = 0; i < ctx.rd().rank(); ++i)
    sections.emplace_back("EF-lifts-i" + std::to_string(i), check_EF_lifts(ctx, w, i));
  return sections;
}

std::vector<std::pair<std::string, CochainReport>> verify_cocycle_file(
    Context& ctx, const RunConfig& cfg, const std::string& path) {
  InvariantTwoCochain e = parse_cochain(read_file(path), ctx.rd());
  std::vector<std::pair<std::string, CochainReport>> sections;
  sections.emplace_back("symmetric", check_symmetric(ctx, e));
  sections.emplace_back("invariant", check_invariant(ctx, e));
  // Triples drawn from the stored support, bounded by --depth; triples whose
  // derived blocks fall outside the stored support are skipped.
  std::set<Weight> support;
  for (const auto& [p, m] : e.blocks) {
    support.insert(p.first);
    support.insert(p.second);
  }
  CochainReport coc;
  for (const Weight& a : support)
    for (const Weight& b : support)
      for (const Weight& c : support) {
        if (coord_sum(a) > cfg.depth || coord_sum(b) > cfg.depth || coord_sum(c) > cfg.depth)
          continue;
        try {
          auto r = check_cocycle(ctx, e, {{a, b, c}});
          coc.entries.insert(coc.entries.end(), r.entries.begin(), r.entries.end());
        } catch (const error&) {
          // outside the stored support
        }
      }
  if (coc.entries.empty()) coc.entries.push_back({"cocycle", "vacuous", true});
  sections.emplace_back("cocycle", coc);
  return sections;
}

int cmd_verify(const RunConfig& cfg, const std::string& suite, const std::string& window_file) {
  Context ctx(RootDatum::from_type(cfg.root_datum));
  std::vector<std::pair<std::string, CochainReport>> sections;
  if (suite == "relations")
    sections.emplace_back("relations", verify_relations(ctx, cfg));
  else if (suite == "rmatrix")
    sections.emplace_back("rmatrix", verify_rmatrix(ctx, cfg));
  else if (suite == "tau-identities")
    sections.emplace_back("tau-identities", verify_tau(ctx, cfg));
  else if (suite == "comonoid")
    sections = verify_comonoid(ctx, cfg, window_file);
  else if (suite.rfind("cocycle:", 0) == 0)
    sections = verify_cocycle_file(ctx, cfg, suite.substr(8));
  else
    throw error("unknown suite \"" + suite + "\"");
  return finish(cfg, "verify " + suite, sections);
}

int cmd_normalize(const RunConfig& cfg, const std::string& path) {
  Context ctx(RootDatum::from_type(cfg.root_datum));
  InvariantTwoCochain e = parse_cochain(read_file(path), ctx.rd());
  std::vector<std::pair<std::string, CochainReport>> sections;
  sections.emplace_back("precheck-symmetric", check_symmetric(ctx, e));
  sections.emplace_back("precheck-invariant", check_invariant(ctx, e));
  for (const auto& [name, rep] : sections)
    if (!rep.all_pass())
      throw error("normalize precondition failed at stage " + name + ": " +
                  rep.first_failure());
  NormalizeResult res = normalize(ctx, e);
  CochainReport verdict = verify_trivial(ctx, res.e_norm);
  bool trivial = verdict.all_pass();
  CochainReport vline;
  vline.entries.push_back({"triviality", trivial ? "trivial" : "nontrivial", trivial});
  sections.emplace_back("verify-trivial", verdict);
  sections.emplace_back("verdict", vline);

  std::string prefix = cfg.out_path.empty() ? "qct" : cfg.out_path;
  write_file(prefix + ".enorm.json", serialize_cochain(ctx.rd(), res.e_norm));
  write_file(prefix + ".central.json", serialize_central(ctx.rd(), res.c_total));
  return finish(cfg, "normalize " + path, sections);
}

int cmd_defsolve(const RunConfig& cfg, const std::string& path, const std::string& table_path,
                 int order) {
  FormalSeries e = parse_formal_series(read_file(path));
  if (e.orders.empty()) throw error("formal cochain file has no orders");
  int cutoff = e.orders[0].cutoff;
  DeltaTable dh = table_path.empty() ? DeltaTable::classical(cutoff, order)
                                     : parse_delta_table(read_file(table_path));
  DefsolveResult res = deformation_solve(e, dh, order);
  // Residual: E * (del c)^{-1} must be 1 at order 0 and vanish above.
  FormalCochain db = coboundary_series(dh, res.c);
  FormalCochain etr;
  etr.orders.assign(e.orders.begin(), e.orders.begin() + order + 1);
  FormalSeries resid = series_mul(etr, series_inverse(db));
  CochainReport rep;
  for (int n = 0; n <= order; ++n) {
    bool ok = n == 0 ? resid.orders[n].is_one() : resid.orders[n].is_zero();
    rep.entries.push_back({"residual", "order=" + std::to_string(n), ok});
  }
  rep.entries.push_back({"truncation", res.truncated ? "flagged" : "clean", !res.truncated});

  std::string prefix = cfg.out_path.empty() ? "qct" : cfg.out_path;
  write_file(prefix + ".solution.json", serialize_formal_series(res.c, cutoff));
  return finish(cfg, "defsolve " + path, {{"defsolve", rep}});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact computational engine for quantized enveloping algebras"};
  app.require_subcommand(1);
  app.fallthrough();  // global flags may follow the subcommand
  app.set_config("--config");

  RunConfig cfg;
  std::string cutoff_s;
  app.add_option("--root-datum", cfg.root_datum, "root datum type (A1 or A2)");
  app.add_option("--cutoff", cutoff_s, "dominant weight cutoff, e.g. [3] or [1,1]");
  app.add_option("--depth", cfg.depth, "triple/quadruple check depth");
  app.add_option("--cache", cfg.cache_dir, "module cache directory");
  app.add_option("--out", cfg.out_path, "report output path (default stdout)");
  app.add_option("--seed", cfg.seed, "random seed for sampled central elements");

  auto* dec = app.add_subcommand("decompose", "decompose a tensor product of irreducibles");
  std::string mu_s, eta_s;
  dec->add_option("--mu", mu_s, "first highest weight")->required();
  dec->add_option("--eta", eta_s, "second highest weight")->required();

  auto* ver = app.add_subcommand("verify", "run a verification suite");
  std::string suite, window_file;
  ver->add_option("suite", suite,
                  "relations | rmatrix | tau-identities | comonoid | cocycle:<file>")
      ->required();
  ver->add_option("--window", window_file, "truncation window file (comonoid suite)");

  auto* nrm = app.add_subcommand("normalize", "run the normalization pipeline on a cochain file");
  std::string cochain_path;
  nrm->add_option("file", cochain_path, "cochain file")->required();

  auto* dfs = app.add_subcommand("defsolve", "run the formal-deformation solver");
  std::string formal_path, table_path;
  int order = 3;
  dfs->add_option("file", formal_path, "formal cochain file")->required();
  dfs->add_option("--table", table_path, "coproduct table file (default classical)");
  dfs->add_option("--order", order, "h-adic order N");

  CLI11_PARSE(app, argc, argv);

  try {
    RootDatum rd = RootDatum::from_type(cfg.root_datum);
    cfg.cutoff = cutoff_s.empty()
                     ? (rd.rank() == 1 ? Weight{3} : Weight{1, 1})
                     : parse_weight(cutoff_s);
    if (static_cast<int>(cfg.cutoff.size()) != rd.rank())
      throw error("cutoff rank mismatch");
    if (dec->parsed()) return cmd_decompose(cfg, mu_s, eta_s);
    if (ver->parsed()) return cmd_verify(cfg, suite, window_file);
    if (nrm->parsed()) return cmd_normalize(cfg, cochain_path);
    if (dfs->parsed()) return cmd_defsolve(cfg, formal_path, table_path, order);
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 2;
  }
  return 2;
}
