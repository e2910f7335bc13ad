#pragma once

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "cayley/autoequiv.hpp"
#include "cayley/constructions.hpp"
#include "cayley/recognizer.hpp"

namespace cayley {

using json = nlohmann::json;

// ---- poset JSON: {"n": int, "labels": [str], "covers": [[i,j], ...]} ----

inline json poset_to_json(const Poset& p) {
  json j;
  j["n"] = p.n();
  if (p.has_labels()) j["labels"] = p.labels();
  json covers = json::array();
  for (auto [a, b] : hasse(p)) covers.push_back(json::array({a, b}));
  j["covers"] = std::move(covers);
  return j;
}

inline Poset poset_from_json(const json& j) {
  if (!j.is_object() || !j.contains("n") || !j["n"].is_number_integer())
    throw SchemaError("poset object needs an integer field \"n\"");
  int n = j["n"].get<int>();
  if (n <= 0) throw SchemaError("\"n\" must be positive");
  std::vector<std::string> labels;
  if (j.contains("labels")) {
    if (!j["labels"].is_array()) throw SchemaError("\"labels\" must be an array");
    for (auto& l : j["labels"]) {
      if (!l.is_string()) throw SchemaError("labels must be strings");
      labels.push_back(l.get<std::string>());
    }
  }
  std::vector<std::pair<int, int>> covers;
  if (j.contains("covers")) {
    if (!j["covers"].is_array()) throw SchemaError("\"covers\" must be an array");
    for (auto& c : j["covers"]) {
      if (!c.is_array() || c.size() != 2 || !c[0].is_number_integer() ||
          !c[1].is_number_integer())
        throw SchemaError("covers must be [i, j] integer pairs");
      int a = c[0].get<int>(), b = c[1].get<int>();
      if (a < 0 || a >= n || b < 0 || b >= n)
        throw SchemaError("cover index out of range");
      covers.push_back({a, b});
    }
  }
  return build_poset_indices(n, covers, std::move(labels));
}

inline Poset parse_poset_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw SchemaError(path + ": " + e.what());
  }
  return poset_from_json(j);
}

// ---- certificate JSON (bit-exact schema used by the census and the CLI) ----

inline json certificate_to_json(const Certificate& c) {
  json j;
  j["kind"] = kind_name(c.kind);
  j["identity"] = c.identity ? json(*c.identity) : json(nullptr);
  j["s_subset"] = c.s_subset.to_vector();
  json table = json::array();
  for (int r = 0; r < c.table.n; ++r) {
    json row = json::array();
    for (int x = 0; x < c.table.n; ++x) row.push_back(c.table.at(r, x));
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  return j;
}

inline CertKind kind_from_string(const std::string& s) {
  if (s == "semigroup") return CertKind::semigroup;
  if (s == "monoid") return CertKind::monoid;
  if (s == "full") return CertKind::full;
  if (s == "full_monoid" || s == "full-monoid") return CertKind::full_monoid;
  throw SchemaError("unknown kind: " + s);
}

inline Certificate certificate_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.contains("table") ||
      !j.contains("s_subset"))
    throw SchemaError("certificate needs kind, s_subset and table");
  CertKind kind = kind_from_string(j["kind"].get<std::string>());
  const json& tj = j["table"];
  if (!tj.is_array() || tj.empty()) throw SchemaError("table must be a nonempty array");
  int n = (int)tj.size();
  std::vector<int> t;
  for (auto& row : tj) {
    if (!row.is_array() || (int)row.size() != n) throw SchemaError("table must be square");
    for (auto& v : row) {
      if (!v.is_number_integer()) throw SchemaError("table entries must be integers");
      t.push_back(v.get<int>());
    }
  }
  for (int v : t)
    if (v < 0 || v >= n) throw SchemaError("table entry out of range");
  Mask s(n);
  for (auto& v : j["s_subset"]) {
    int x = v.get<int>();
    if (x < 0 || x >= n) throw SchemaError("s_subset entry out of range");
    s.set(x);
  }
  std::optional<int> id;
  if (j.contains("identity") && !j["identity"].is_null()) id = j["identity"].get<int>();
  return Certificate{OpTable(n, std::move(t)), s, kind, id};
}

// ---- monoid presentation JSON ----

inline json presentation_to_json(const MonoidPresentation& p) {
  json j;
  j["free_rank"] = p.free_rank;
  j["torsion"] = p.torsion;
  j["generators"] = p.generators;
  return j;
}

inline MonoidPresentation presentation_from_json(const json& j) {
  if (!j.is_object() || !j.contains("free_rank") || !j.contains("generators"))
    throw SchemaError("presentation needs free_rank and generators");
  std::vector<Int> torsion;
  if (j.contains("torsion")) torsion = j["torsion"].get<std::vector<Int>>();
  return make_presentation(j["free_rank"].get<int>(), std::move(torsion),
                           j["generators"].get<std::vector<Vec>>());
}

inline json truncation_to_json(const TruncatedPoset& t) {
  json j;
  j["presentation"] = presentation_to_json(t.presentation);
  j["window"] = t.window;
  j["elements"] = t.elements;
  j["poset"] = poset_to_json(t.poset);
  return j;
}

inline json certified_to_json(const CertifiedPoset& cp) {
  json j;
  j["poset"] = poset_to_json(cp.poset);
  j["certificate"] = certificate_to_json(cp.cert);
  return j;
}

// ---- DOT export: deterministic bytes, Hasse edges drawn upward ----

inline std::string export_dot(const Poset& p, const Certificate* cert = nullptr) {
  std::ostringstream out;
  out << "digraph poset {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (int x = 0; x < p.n(); ++x) {
    out << "  n" << x << " [label=\"" << p.label(x) << "\"";
    if (cert && cert->s_subset.test(x)) out << ", peripheries=2";
    out << "];\n";
  }
  for (auto [a, b] : hasse(p)) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << text;
}

// FNV-1a, for input digests in run records
inline std::string digest_hex(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace cayley
