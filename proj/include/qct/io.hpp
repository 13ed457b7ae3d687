#pragma once

#include <string>
#include <utility>
#include <vector>

#include "qct/comonoid.hpp"
#include "qct/defsolve.hpp"
#include "qct/normalize.hpp"

// Text serialization of every persistent artifact, plus deterministic
// line-oriented reports.  All formats are JSON with scalars in their exact
// text form; serialization is canonical (sorted keys, fixed entry order), so
// round-trips are bit-exact and identical inputs yield identical bytes.

namespace qct {

// Everything that determines a batch run.  Identical configs must produce
// byte-identical reports; the canonical form is hashed into report headers.
struct RunConfig {
  std::string root_datum = "A1";
  Weight cutoff;          // empty: per-root-datum default
  int depth = 2;          // triple/quadruple check depth
  std::string cache_dir;  // empty: no cache
  std::string out_path;   // empty: stdout
  unsigned long seed = 1;

  std::string canonical() const;
  std::string hash() const;  // 64-bit FNV-1a of canonical(), hex
};

// --- module-owned file formats (exact round-trip) ---

std::string serialize_central(const RootDatum& rd, const CentralElement& c);
CentralElement parse_central(const std::string& text, const RootDatum& rd);

std::string serialize_cochain(const RootDatum& rd, const InvariantTwoCochain& e);
InvariantTwoCochain parse_cochain(const std::string& text, const RootDatum& rd);

std::string serialize_module(const ModuleRep& m);
ModuleRep parse_module(const std::string& text);

struct IntertwinerFile {
  std::string name;    // morphism name, e.g. "T" or "tr"
  std::string params;  // parameter string, e.g. weights
  std::string domain;
  std::string codomain;
  SMat matrix;
};
std::string serialize_intertwiner(const IntertwinerFile& f);
IntertwinerFile parse_intertwiner(const std::string& text);

std::string serialize_window(const TruncationWindow& w);
TruncationWindow parse_window(const std::string& text);

// Works for any leg count; per-order terms are (monomial per leg, rational).
std::string serialize_formal_series(const FormalSeries& s, int cutoff);
FormalSeries parse_formal_series(const std::string& text);

std::string serialize_delta_table(const DeltaTable& t);
DeltaTable parse_delta_table(const std::string& text);

// --- reports ---

// Stable header (tool version, config hash, title), then one line per check:
// "check<TAB>suite<TAB>name<TAB>params<TAB>pass|FAIL", then a summary line.
std::string render_report(const RunConfig& cfg, const std::string& title,
                          const std::vector<std::pair<std::string, CochainReport>>& sections);

// --- file helpers ---

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qct
