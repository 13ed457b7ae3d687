#include "qct/io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace qct {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

json weight_json(const Weight& w) { return json(w); }

Weight weight_from(const json& j, int rank) {
  if (!j.is_array() || (rank >= 0 && static_cast<int>(j.size()) != rank))
    throw error("parse error: bad weight " + j.dump());
  return j.get<Weight>();
}

json smat_json(const SMat& m) {
  json entries = json::array();
  for (int i = 0; i < m.rows(); ++i)
    for (const auto& [j, v] : m.row(i))
      entries.push_back(json::array({i, j, to_string(v)}));
  return json{{"rows", m.rows()}, {"cols", m.cols()}, {"entries", entries}};
}

SMat smat_from(const json& j) {
  SMat m(j.at("rows").get<int>(), j.at("cols").get<int>());
  for (const auto& e : j.at("entries"))
    m.set(e.at(0).get<int>(), e.at(1).get<int>(), parse_scalar(e.at(2).get<std::string>()));
  return m;
}

json parse_text(const std::string& text, const std::string& kind) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& ex) {
    throw error("parse error: " + std::string(ex.what()));
  }
  if (j.value("kind", "") != kind)
    throw error("parse error: expected kind \"" + kind + "\"");
  return j;
}

void check_rd(const json& j, const RootDatum& rd) {
  if (j.value("root_datum", "") != rd.type())
    throw error("parse error: root datum mismatch, file has \"" +
                j.value("root_datum", "") + "\"");
}

json mono_json(const Mono& m) { return json::array({m.a, m.b, m.c}); }

Mono mono_from(const json& j) {
  if (!j.is_array() || j.size() != 3) throw error("parse error: bad monomial");
  return Mono{j.at(0).get<int>(), j.at(1).get<int>(), j.at(2).get<int>()};
}

json pbw_terms_json(const PBWElement& x) {
  json terms = json::array();
  for (const auto& [k, v] : x.coeffs) {
    json monos = json::array();
    for (const Mono& m : k) monos.push_back(mono_json(m));
    terms.push_back(json::array({monos, v.get_str()}));
  }
  return terms;
}

PBWElement pbw_from_terms(const json& terms, int legs, int cutoff) {
  PBWElement x(legs, cutoff);
  for (const auto& t : terms) {
    std::vector<Mono> key;
    for (const auto& mj : t.at(0)) key.push_back(mono_from(mj));
    mpq_class v(t.at(1).get<std::string>());
    v.canonicalize();
    x.add_term(key, v);
  }
  return x;
}

}  // namespace

std::string RunConfig::canonical() const {
  std::ostringstream os;
  os << "root_datum=" << root_datum << ";cutoff=" << weight_str(cutoff)
     << ";depth=" << depth << ";seed=" << seed;
  return os.str();
}

std::string RunConfig::hash() const {
  // FNV-1a, 64-bit.
  unsigned long long h = 14695981039346656037ull;
  for (unsigned char c : canonical()) {
    h ^= c;
    h *= 1099511628211ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

std::string serialize_central(const RootDatum& rd, const CentralElement& c) {
  json values = json::array();
  for (const auto& [w, v] : c.values)
    values.push_back(json::array({weight_json(w), to_string(v)}));
  json j{{"kind", "central"}, {"root_datum", rd.type()}, {"values", values}};
  return j.dump(2) + "\n";
}

CentralElement parse_central(const std::string& text, const RootDatum& rd) {
  json j = parse_text(text, "central");
  check_rd(j, rd);
  CentralElement c;
  for (const auto& e : j.at("values"))
    c.values[weight_from(e.at(0), rd.rank())] = parse_scalar(e.at(1).get<std::string>());
  return c;
}

std::string serialize_cochain(const RootDatum& rd, const InvariantTwoCochain& e) {
  json blocks = json::array();
  for (const auto& [p, m] : e.blocks)
    blocks.push_back(json{{"mu", weight_json(p.first)},
                          {"eta", weight_json(p.second)},
                          {"matrix", smat_json(m)}});
  json j{{"kind", "cochain"}, {"root_datum", rd.type()}, {"blocks", blocks}};
  return j.dump(2) + "\n";
}

InvariantTwoCochain parse_cochain(const std::string& text, const RootDatum& rd) {
  json j = parse_text(text, "cochain");
  check_rd(j, rd);
  InvariantTwoCochain e;
  for (const auto& b : j.at("blocks")) {
    WPair p{weight_from(b.at("mu"), rd.rank()), weight_from(b.at("eta"), rd.rank())};
    if (e.blocks.count(p))
      throw error("parse error: duplicate cochain block at (" + weight_str(p.first) +
                  "," + weight_str(p.second) + ")");
    e.blocks.emplace(p, smat_from(b.at("matrix")));
  }
  return e;
}

std::string serialize_module(const ModuleRep& m) {
  json wts = json::array();
  for (const Weight& w : m.wts) wts.push_back(weight_json(w));
  json es = json::array(), fs = json::array();
  for (const SMat& x : m.E) es.push_back(smat_json(x));
  for (const SMat& x : m.F) fs.push_back(smat_json(x));
  json j{{"kind", "module"},
         {"root_datum", m.rd.type()},
         {"dim", m.dim()},
         {"weights", wts},
         {"dist", m.dist},
         {"E", es},
         {"F", fs}};
  if (m.hw) j["hw"] = weight_json(*m.hw);
  return j.dump(2) + "\n";
}

ModuleRep parse_module(const std::string& text) {
  json j = parse_text(text, "module");
  ModuleRep m;
  m.rd = RootDatum::from_type(j.value("root_datum", ""));
  for (const auto& w : j.at("weights")) m.wts.push_back(weight_from(w, m.rd.rank()));
  if (static_cast<int>(m.wts.size()) != j.at("dim").get<int>())
    throw error("parse error: module dimension mismatch");
  m.dist = j.at("dist").get<int>();
  if (j.count("hw")) m.hw = weight_from(j.at("hw"), m.rd.rank());
  for (const auto& x : j.at("E")) m.E.push_back(smat_from(x));
  for (const auto& x : j.at("F")) m.F.push_back(smat_from(x));
  if (static_cast<int>(m.E.size()) != m.rd.rank() ||
      static_cast<int>(m.F.size()) != m.rd.rank())
    throw error("parse error: module generator count mismatch");
  return m;
}

std::string serialize_intertwiner(const IntertwinerFile& f) {
  json j{{"kind", "intertwiner"}, {"name", f.name},     {"params", f.params},
         {"domain", f.domain},    {"codomain", f.codomain}, {"matrix", smat_json(f.matrix)}};
  return j.dump(2) + "\n";
}

IntertwinerFile parse_intertwiner(const std::string& text) {
  json j = parse_text(text, "intertwiner");
  IntertwinerFile f;
  f.name = j.at("name").get<std::string>();
  f.params = j.at("params").get<std::string>();
  f.domain = j.at("domain").get<std::string>();
  f.codomain = j.at("codomain").get<std::string>();
  f.matrix = smat_from(j.at("matrix"));
  return f;
}

std::string serialize_window(const TruncationWindow& w) {
  json ls = json::array(), ms = json::array();
  for (const Weight& l : w.lambdas) ls.push_back(weight_json(l));
  for (const Weight& m : w.mus) ms.push_back(weight_json(m));
  json j{{"kind", "window"}, {"lambdas", ls}, {"mus", ms}};
  return j.dump(2) + "\n";
}

TruncationWindow parse_window(const std::string& text) {
  json j = parse_text(text, "window");
  TruncationWindow w;
  for (const auto& l : j.at("lambdas")) w.lambdas.push_back(weight_from(l, -1));
  for (const auto& m : j.at("mus")) w.mus.push_back(weight_from(m, -1));
  return w;
}

std::string serialize_formal_series(const FormalSeries& s, int cutoff) {
  json orders = json::array();
  int legs = 1;
  for (const PBWElement& x : s.orders) {
    legs = x.legs;
    orders.push_back(pbw_terms_json(x));
  }
  json j{{"kind", "formal_series"}, {"legs", legs}, {"cutoff", cutoff}, {"orders", orders}};
  return j.dump(2) + "\n";
}

FormalSeries parse_formal_series(const std::string& text) {
  json j = parse_text(text, "formal_series");
  int legs = j.at("legs").get<int>(), cutoff = j.at("cutoff").get<int>();
  FormalSeries s;
  for (const auto& terms : j.at("orders"))
    s.orders.push_back(pbw_from_terms(terms, legs, cutoff));
  for (const PBWElement& x : s.orders)
    if (x.truncated)
      throw error("parse error: formal series entry exceeds its own cutoff");
  return s;
}

std::string serialize_delta_table(const DeltaTable& t) {
  json orders = json::array();
  for (const auto& per_order : t.delta) {
    json entries = json::array();
    for (const auto& [m, val] : per_order)
      entries.push_back(json::array({mono_json(m), pbw_terms_json(val)}));
    orders.push_back(entries);
  }
  json j{{"kind", "delta_table"}, {"cutoff", t.cutoff}, {"orders", orders}};
  return j.dump(2) + "\n";
}

DeltaTable parse_delta_table(const std::string& text) {
  json j = parse_text(text, "delta_table");
  DeltaTable t;
  t.cutoff = j.at("cutoff").get<int>();
  for (const auto& entries : j.at("orders")) {
    std::map<Mono, PBWElement> per_order;
    for (const auto& e : entries)
      per_order.emplace(mono_from(e.at(0)), pbw_from_terms(e.at(1), 2, t.cutoff));
    t.delta.push_back(std::move(per_order));
  }
  return t;
}

std::string render_report(const RunConfig& cfg, const std::string& title,
                          const std::vector<std::pair<std::string, CochainReport>>& sections) {
  std::ostringstream os;
  os << "qct report 1.0\n";
  os << "config\t" << cfg.hash() << "\n";
  os << "title\t" << title << "\n";
  bool all = true;
  size_t checks = 0;
  for (const auto& [suite, rep] : sections)
    for (const auto& en : rep.entries) {
      os << "check\t" << suite << "\t" << en.name << "\t"
         << (en.params.empty() ? "-" : en.params) << "\t"
         << (en.pass ? "pass" : "FAIL") << "\n";
      all = all && en.pass;
      ++checks;
    }
  os << "summary\t" << checks << " checks\t" << (all ? "pass" : "FAIL") << "\n";
  return os.str();
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw error("cannot read file " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw error("cannot write file " + path);
  out << content;
}

}  // namespace qct
