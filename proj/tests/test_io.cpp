#include <doctest.h>

#include "qct/cocycle.hpp"
#include "qct/defsolve.hpp"
#include "qct/intertwine.hpp"
#include "qct/io.hpp"
#include "qct/normalize.hpp"

// Serialization round-trips must be bit-exact: serialize -> parse -> serialize
// yields identical bytes, and parsing recovers the exact object.

using namespace qct;

namespace {

InvariantTwoCochain sample_cochain(Context& ctx) {
  CentralElement c;
  for (int s = 0; s <= 4; ++s) c.values[{s}] = Scalar::v_pow(s * s) / Scalar(3);
  std::vector<WPair> pairs;
  for (int s = 0; s <= 2; ++s)
    for (int t = 0; t <= 2; ++t) pairs.push_back({{s}, {t}});
  return coboundary_of_central(ctx, c, pairs);
}

}  // namespace

TEST_CASE("central element round-trips bit-exactly") {
  RootDatum rd = RootDatum::A1();
  CentralElement c;
  c.values[{0}] = Scalar(1);
  c.values[{1}] = Scalar::v_pow(-3) / Scalar(7);
  c.values[{2}] = Scalar(2) + Scalar::v_pow(5);
  std::string text = serialize_central(rd, c);
  CentralElement back = parse_central(text, rd);
  CHECK(back.values == c.values);
  CHECK(serialize_central(rd, back) == text);
}

TEST_CASE("cochain round-trips bit-exactly") {
  Context ctx(RootDatum::A1());
  InvariantTwoCochain e = sample_cochain(ctx);
  std::string text = serialize_cochain(ctx.rd(), e);
  InvariantTwoCochain back = parse_cochain(text, ctx.rd());
  REQUIRE(back.blocks.size() == e.blocks.size());
  for (const auto& [p, m] : e.blocks) CHECK(back.blocks.at(p) == m);
  CHECK(serialize_cochain(ctx.rd(), back) == text);
}

TEST_CASE("module round-trips bit-exactly, both root data") {
  for (RootDatum rd : {RootDatum::A1(), RootDatum::A2()}) {
    Context ctx(rd);
    Weight lam = rd.rank() == 1 ? Weight{2} : Weight{1, 1};
    ModulePtr m = ctx.irrep(lam);
    std::string text = serialize_module(*m);
    ModuleRep back = parse_module(text);
    CHECK(back.wts == m->wts);
    CHECK(back.E == m->E);
    CHECK(back.F == m->F);
    CHECK(back.hw == m->hw);
    CHECK(back.dist == m->dist);
    CHECK(serialize_module(back) == text);
  }
}

TEST_CASE("intertwiner file round-trips bit-exactly") {
  Context ctx(RootDatum::A1());
  IntertwinerFile f;
  f.name = "T";
  f.params = "([1],[2])";
  f.domain = "V[1]xV[2]";
  f.codomain = "V[2]xV[1]";
  f.matrix = build_T(ctx, {1}, {2}).matrix;
  std::string text = serialize_intertwiner(f);
  IntertwinerFile back = parse_intertwiner(text);
  CHECK(back.name == f.name);
  CHECK(back.params == f.params);
  CHECK(back.domain == f.domain);
  CHECK(back.codomain == f.codomain);
  CHECK(back.matrix == f.matrix);
  CHECK(serialize_intertwiner(back) == text);
}

TEST_CASE("truncation window round-trips bit-exactly") {
  TruncationWindow w;
  w.lambdas = {{0}, {2}};
  w.mus = {{0}, {1}, {3}};
  std::string text = serialize_window(w);
  TruncationWindow back = parse_window(text);
  CHECK(back.lambdas == w.lambdas);
  CHECK(back.mus == w.mus);
  CHECK(serialize_window(back) == text);
}

TEST_CASE("formal series round-trips bit-exactly, one and two legs") {
  const int D = 6;
  FormalSeries one_leg;
  one_leg.orders = {PBWElement::one(1, D), PBWElement::casimir(D),
                    PBWElement::casimir(D) * PBWElement::casimir(D)};
  FormalSeries two_leg = coboundary_series(DeltaTable::classical(D, 3), one_leg);
  for (const FormalSeries& s : {one_leg, two_leg}) {
    std::string text = serialize_formal_series(s, D);
    FormalSeries back = parse_formal_series(text);
    REQUIRE(back.orders.size() == s.orders.size());
    for (size_t n = 0; n < s.orders.size(); ++n)
      CHECK(back.orders[n].coeffs == s.orders[n].coeffs);
    CHECK(serialize_formal_series(back, D) == text);
  }
}

TEST_CASE("delta table round-trips bit-exactly") {
  DeltaTable t = DeltaTable::classical(6, 2);
  Mono e{1, 0, 0};
  t.delta[1][e] = classical_coproduct(PBWElement::gen('E', 6)).scaled(3);
  std::string text = serialize_delta_table(t);
  DeltaTable back = parse_delta_table(text);
  CHECK(back.cutoff == t.cutoff);
  REQUIRE(back.delta.size() == t.delta.size());
  for (size_t n = 0; n < t.delta.size(); ++n) {
    REQUIRE(back.delta[n].size() == t.delta[n].size());
    for (const auto& [m, val] : t.delta[n])
      CHECK(back.delta[n].at(m).coeffs == val.coeffs);
  }
  CHECK(serialize_delta_table(back) == text);
}

TEST_CASE("parse errors are rejected") {
  RootDatum rd = RootDatum::A1();
  CHECK_THROWS_WITH_AS(parse_central("not json", rd),
                       doctest::Contains("parse error"), error);
  CHECK_THROWS_WITH_AS(parse_central(R"({"kind":"cochain","values":[]})", rd),
                       doctest::Contains("expected kind"), error);
  // Root datum mismatch.
  Context a2(RootDatum::A2());
  std::string mod = serialize_module(*a2.irrep({1, 0}));
  CHECK_THROWS_AS(parse_central(serialize_central(RootDatum::A2(), CentralElement{}), rd),
                  error);
  // Wrong-rank weight inside an A1 file.
  CHECK_THROWS_WITH_AS(
      parse_central(R"x({"kind":"central","root_datum":"A1","values":[[[1,2],"(1)/(1)"]]})x", rd),
      doctest::Contains("bad weight"), error);
  // Duplicate cochain block.
  CHECK_THROWS_WITH_AS(
      parse_cochain(R"x({"kind":"cochain","root_datum":"A1","blocks":[
        {"mu":[1],"eta":[1],"matrix":{"rows":1,"cols":1,"entries":[[0,0,"(1)/(1)"]]}},
        {"mu":[1],"eta":[1],"matrix":{"rows":1,"cols":1,"entries":[[0,0,"(1)/(1)"]]}}]})x",
                    rd),
      doctest::Contains("duplicate"), error);
  // Formal series term above its declared cutoff.
  CHECK_THROWS_WITH_AS(
      parse_formal_series(
          R"({"kind":"formal_series","legs":1,"cutoff":2,"orders":[[[[[3,0,0]],"1"]]]})"),
      doctest::Contains("exceeds"), error);
}

TEST_CASE("run config hash is deterministic and input-sensitive") {
  RunConfig a;
  a.root_datum = "A2";
  a.cutoff = {1, 1};
  a.depth = 3;
  a.seed = 42;
  RunConfig b = a;
  CHECK(a.hash() == b.hash());
  b.seed = 43;
  CHECK(a.hash() != b.hash());
  b = a;
  b.depth = 2;
  CHECK(a.hash() != b.hash());
  // Cache and output locations are run plumbing, not run identity.
  b = a;
  b.cache_dir = "/tmp/elsewhere";
  b.out_path = "/tmp/report.txt";
  CHECK(a.hash() == b.hash());
}

TEST_CASE("report rendering is deterministic with stable verdicts") {
  RunConfig cfg;
  CochainReport good, bad;
  good.entries = {{"alpha", "([1],[1])", true}, {"beta", "-", true}};
  bad.entries = {{"gamma", "([2],[1],[0])", false}};
  std::string r1 = render_report(cfg, "demo", {{"s1", good}});
  std::string r2 = render_report(cfg, "demo", {{"s1", good}});
  CHECK(r1 == r2);
  CHECK(r1.find("summary\t2 checks\tpass") != std::string::npos);
  std::string r3 = render_report(cfg, "demo", {{"s1", good}, {"s2", bad}});
  CHECK(r3.find("check\ts2\tgamma\t([2],[1],[0])\tFAIL") != std::string::npos);
  CHECK(r3.find("summary\t3 checks\tFAIL") != std::string::npos);
}
