// Command-line front end: recognition, classification, censuses, certified
// constructions, numerical-semigroup truncations and DOT export.
//
// Machine-readable run records go to stdout (or --out) as JSON lines; the
// human summary goes to stderr.  Exit codes: 0 decided/success, 1 input
// error, 2 budget exhausted, 3 internal invariant breach.

#include <chrono>
#include <cstdlib>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cayley/io.hpp"

using namespace cayley;

namespace {

constexpr const char* kVersion = "0.1.0";

struct CommonOpts {
  std::string in, out;
  std::uint64_t budget = 0;  // 0: default or env
  bool deterministic = false;
  int threads = 1;
  std::uint64_t seed = 0;
};

SearchOptions search_options(const CommonOpts& c) {
  SearchOptions o;
  o.budget = 100'000'000;
  if (const char* env = std::getenv("CAYLEY_POSET_BUDGET")) o.budget = std::strtoull(env, nullptr, 10);
  if (c.budget) o.budget = c.budget;
  o.deterministic = c.deterministic;
  o.threads = c.threads;
  return o;
}

void emit(const CommonOpts& c, const json& record) {
  if (c.out.empty()) {
    std::cout << record.dump() << "\n";
  } else {
    write_file(c.out, record.dump() + "\n");
  }
}

json stats_json(const SearchStats& s) {
  return json{{"nodes", s.nodes},
              {"units", s.units},
              {"wall_ms", s.wall_ms},
              {"closed", json{{"domain", s.closed_domain},
                              {"coverage", s.closed_coverage},
                              {"associativity", s.closed_assoc},
                              {"idempotent", s.closed_idempotent},
                              {"monotone", s.closed_monotone}}}};
}

json run_record(const std::string& command, const CommonOpts& c,
                const std::string& input_digest) {
  json j;
  j["tool"] = "cayley";
  j["version"] = kVersion;
  j["command"] = command;
  j["input_digest"] = input_digest;
  j["seed"] = c.seed;
  j["threads"] = c.threads;
  return j;
}

std::vector<Int> parse_gens(const std::string& s) {
  std::vector<Int> out;
  std::string cur;
  for (char ch : s + ",") {
    if (ch == ',') {
      if (!cur.empty()) out.push_back(std::stol(cur));
      cur.clear();
    } else {
      cur += ch;
    }
  }
  if (out.empty()) throw SchemaError("--gens expects a comma-separated list");
  return out;
}

ClassQuery query_from_string(const std::string& s) {
  if (s == "semigroup") return ClassQuery::semigroup;
  if (s == "monoid") return ClassQuery::monoid;
  if (s == "full") return ClassQuery::full;
  if (s == "full-monoid" || s == "full_monoid") return ClassQuery::full_monoid;
  if (s == "act") return ClassQuery::act;
  throw SchemaError("unknown class: " + s);
}

int cmd_recognize(const CommonOpts& c, const std::string& cls) {
  std::string bytes = read_file(c.in);
  Poset p = parse_poset_file(c.in);
  ClassQuery q = query_from_string(cls);
  Recognition r = recognize(p, q, search_options(c));
  json rec = run_record("recognize", c, digest_hex(bytes));
  rec["class"] = cls;
  rec["verdict"] = verdict_name(r.verdict);
  rec["stats"] = stats_json(r.stats);
  if (r.cert) rec["certificate"] = certificate_to_json(*r.cert);
  emit(c, rec);
  std::cerr << "recognize " << cls << ": " << verdict_name(r.verdict) << " ("
            << r.stats.nodes << " nodes, " << r.stats.wall_ms << " ms)\n";
  return r.verdict == Verdict::unknown ? 2 : 0;
}

json labels_json(const ClassLabelSet& l) {
  json j;
  for (auto q : {ClassQuery::semigroup, ClassQuery::monoid, ClassQuery::full,
                 ClassQuery::full_monoid}) {
    const Recognition& r = l.get(q);
    json e;
    e["verdict"] = verdict_name(r.verdict);
    e["stats"] = stats_json(r.stats);
    if (r.cert) e["certificate"] = certificate_to_json(*r.cert);
    j[query_name(q)] = std::move(e);
  }
  j["act"] = json{{"verdict", "yes"}};
  return j;
}

int cmd_classify(const CommonOpts& c) {
  std::string bytes = read_file(c.in);
  Poset p = parse_poset_file(c.in);
  ClassLabelSet labels = classify(p, search_options(c));
  if (!labels.consistent()) throw CertificateInvalid("class label set inconsistent");
  json rec = run_record("classify", c, digest_hex(bytes));
  rec["labels"] = labels_json(labels);
  emit(c, rec);
  bool unknown = false;
  std::cerr << "classify:";
  for (auto q : {ClassQuery::semigroup, ClassQuery::monoid, ClassQuery::full,
                 ClassQuery::full_monoid}) {
    std::cerr << " " << query_name(q) << "=" << verdict_name(labels.get(q).verdict);
    unknown |= labels.get(q).verdict == Verdict::unknown;
  }
  std::cerr << "\n";
  return unknown ? 2 : 0;
}

int cmd_census(const CommonOpts& c, int n_max) {
  CensusReport rep = census(n_max, search_options(c));
  json rec = run_record("census", c, "-");
  rec["n_max"] = rep.n_max;
  json entries = json::array();
  for (auto& e : rep.entries) {
    json je;
    je["poset"] = poset_to_json(e.poset);
    je["labels"] = labels_json(e.labels);
    entries.push_back(std::move(je));
  }
  rec["classes"] = std::move(entries);
  json cells = json::array();
  for (auto& [key, cell] : rep.cells) {
    json jc;
    jc["semigroup"] = (key & 1) != 0;
    jc["monoid"] = (key & 2) != 0;
    jc["full"] = (key & 4) != 0;
    jc["full_monoid"] = (key & 8) != 0;
    jc["count"] = cell.count;
    if (cell.min_witness) jc["min_witness"] = poset_to_json(rep.entries[*cell.min_witness].poset);
    cells.push_back(std::move(jc));
  }
  rec["cells"] = std::move(cells);
  rec["unknown_count"] = rep.unknown_count;
  emit(c, rec);
  std::cerr << "census n<=" << n_max << ": " << rep.entries.size() << " classes, "
            << rep.cells.size() << " diagram cells, " << rep.unknown_count
            << " unknown\n";
  return rep.unknown_count ? 2 : 0;
}

SPExpression sp_from_json(const json& j) {
  if (j.is_string() && (j == "leaf" || j == ".")) return SPExpression::leaf();
  if (j.is_array() && j.size() >= 3 && j[0].is_string()) {
    std::vector<SPExpression> children;
    for (size_t i = 1; i < j.size(); ++i) children.push_back(sp_from_json(j[i]));
    if (j[0] == "series") return SPExpression::series(std::move(children));
    if (j[0] == "parallel") return SPExpression::parallel(std::move(children));
  }
  throw SchemaError("sp expression: \"leaf\" or [\"series\"|\"parallel\", e1, e2, ...]");
}

int cmd_construct(const CommonOpts& c, const std::string& pipeline_path) {
  json steps;
  {
    std::string bytes = read_file(pipeline_path);
    steps = json::parse(bytes, nullptr, true);
  }
  if (!steps.is_array()) throw SchemaError("pipeline must be an array of steps");
  std::map<std::string, CertifiedPoset> env;
  auto arg = [&](const json& step, const char* key) -> const CertifiedPoset& {
    if (!step.contains(key) || !step[key].is_string())
      throw SchemaError(std::string("step needs a \"") + key + "\" reference");
    auto it = env.find(step[key].get<std::string>());
    if (it == env.end())
      throw SchemaError("unknown result name: " + step[key].get<std::string>());
    return it->second;
  };
  for (const json& step : steps) {
    if (!step.contains("name") || !step.contains("op"))
      throw SchemaError("each step needs \"name\" and \"op\"");
    std::string op = step["op"].get<std::string>();
    CertifiedPoset result = [&]() -> CertifiedPoset {
      if (op == "singleton") return singleton_cert();
      if (op == "antichain") return antichain_cert(step.at("size").get<int>());
      if (op == "chain")
        return weak_order_cert(std::vector<int>(step.at("length").get<int>(), 1));
      if (op == "weak_order") return weak_order_cert(step.at("levels").get<std::vector<int>>());
      if (op == "weak_order_monoid") {
        auto r = weak_order_monoid_cert(step.at("levels").get<std::vector<int>>());
        if (!r) throw SchemaError("weak_order_monoid needs equal level sizes");
        return *r;
      }
      if (op == "sp") return series_parallel_cert(sp_from_json(step.at("expr")));
      if (op == "adjoin_min") return adjoin_extremum(arg(step, "of"), Extremum::min);
      if (op == "adjoin_max") return adjoin_extremum(arg(step, "of"), Extremum::max);
      if (op == "product") return product_cert(arg(step, "a"), arg(step, "b"));
      if (op == "series") return compose_cert(arg(step, "a"), arg(step, "b"), Composition::series);
      if (op == "parallel") {
        std::optional<std::vector<int>> sigma;
        if (step.contains("sigma")) {
          if (step["sigma"].is_string() && step["sigma"] == "search") {
            sigma = find_parallel_sigma(arg(step, "a"), arg(step, "b"));
            if (!sigma) throw SchemaError("no parallel sigma found");
          } else {
            sigma = step["sigma"].get<std::vector<int>>();
          }
        }
        return compose_cert(arg(step, "a"), arg(step, "b"), Composition::parallel, sigma);
      }
      if (op == "blowup")
        return blowup_cert(arg(step, "of"), step.at("at").get<int>(), arg(step, "by"));
      if (op == "k_blowup") return k_blowup_monoid(arg(step, "of"), step.at("k").get<int>());
      if (op == "retract") {
        std::vector<int> sigma;
        if (step.contains("sigma") && step["sigma"].is_array())
          sigma = step["sigma"].get<std::vector<int>>();
        else {
          auto found = find_retract(arg(step, "of"));
          if (!found) throw SchemaError("no retract found");
          sigma = *found;
        }
        return retract_to_full(arg(step, "of"), sigma);
      }
      if (op == "semilattice_blowup") {
        Poset p = poset_from_json(step.at("poset"));
        std::map<int, int> replace;
        if (step.contains("replace"))
          for (auto& pair : step["replace"])
            replace[pair[0].get<int>()] = pair[1].get<int>();
        return antichain_blowup_semilattice(p, replace);
      }
      throw SchemaError("unknown op: " + op);
    }();
    env.insert_or_assign(step["name"].get<std::string>(), std::move(result));
  }
  json out;
  out["tool"] = "cayley";
  out["version"] = kVersion;
  out["command"] = "construct";
  json results;
  for (auto& [name, cp] : env) results[name] = certified_to_json(cp);
  out["results"] = std::move(results);
  emit(c, out);
  std::cerr << "construct: " << env.size() << " certified posets\n";
  return 0;
}

MonoidPresentation presentation_from_opts(const CommonOpts& c, const std::string& gens) {
  if (!c.in.empty()) {
    json j = json::parse(read_file(c.in));
    return presentation_from_json(j);
  }
  if (gens.empty()) throw SchemaError("need --gens or --in presentation.json");
  std::vector<Vec> gvecs;
  for (Int g : parse_gens(gens)) gvecs.push_back({g});
  return make_presentation(1, {}, std::move(gvecs));
}

int cmd_numsem(const CommonOpts& c, const std::string& gens, Int window) {
  MonoidPresentation p = presentation_from_opts(c, gens);
  std::vector<Int> win(p.free_rank, window);
  TruncatedPoset t = truncated_cayley(p, win);
  json j = truncation_to_json(t);
  std::string dot = export_dot(t.poset);
  if (!c.out.empty()) {
    write_file(c.out, j.dump(2) + "\n");
    std::string dot_path = c.out;
    auto pos = dot_path.rfind('.');
    dot_path = (pos == std::string::npos ? dot_path : dot_path.substr(0, pos)) + ".dot";
    write_file(dot_path, dot);
    std::cerr << "numsem: " << t.poset.n() << " elements -> " << c.out << ", " << dot_path
              << "\n";
  } else {
    std::cout << j.dump() << "\n";
    std::cerr << "numsem: " << t.poset.n() << " elements\n";
  }
  return 0;
}

int cmd_autoequiv(const CommonOpts& c, const std::string& gens, Int window, bool roundtrip,
                  Int bound) {
  MonoidPresentation p = presentation_from_opts(c, gens);
  std::vector<Int> win(p.free_rank, window);
  TruncatedPoset t = truncated_cayley(p, win);
  AutoEquivReport rep = check_auto_equivalent(t);
  json j;
  j["tool"] = "cayley";
  j["version"] = kVersion;
  j["command"] = "autoequiv";
  j["window"] = win;
  j["checks"] = json{{"order_preserving", rep.order_preserving},
                     {"commuting", rep.commuting},
                     {"injective", rep.injective},
                     {"into_upset", rep.into_upset},
                     {"order_reflecting", rep.order_reflecting},
                     {"total", rep.total},
                     {"onto_upsets", rep.onto_upsets}};
  j["window_consistent"] = rep.ok();
  j["violations"] = rep.violations;
  json atoms = json::array();
  for (int a : rep.atoms) atoms.push_back(t.poset.label(a));
  j["atoms"] = std::move(atoms);
  if (roundtrip) j["roundtrip"] = roundtrip_check(p, bound);
  emit(c, j);
  std::cerr << "autoequiv: checks " << (rep.ok() ? "pass" : "FAIL");
  if (roundtrip) std::cerr << ", roundtrip " << (j["roundtrip"].get<bool>() ? "true" : "false");
  std::cerr << "\n";
  return 0;
}

int cmd_export(const CommonOpts& c, const std::string& cert_path) {
  Poset p = parse_poset_file(c.in);
  std::optional<Certificate> cert;
  if (!cert_path.empty()) cert = certificate_from_json(json::parse(read_file(cert_path)));
  std::string dot = export_dot(p, cert ? &*cert : nullptr);
  if (c.out.empty()) std::cout << dot;
  else write_file(c.out, dot);
  std::cerr << "export: " << p.n() << " nodes\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Cayley poset toolkit"};
  app.require_subcommand(1);
  CommonOpts c;

  auto add_common = [&](CLI::App* sub, bool needs_in) {
    if (needs_in) sub->add_option("--in", c.in, "input file")->required();
    else sub->add_option("--in", c.in, "input file");
    sub->add_option("--out", c.out, "output file (default: stdout)");
    sub->add_option("--budget", c.budget, "search node budget");
    sub->add_flag("--deterministic", c.deterministic,
                  "single-threaded, lexicographically least certificate");
    sub->add_option("--threads", c.threads, "worker threads");
    sub->add_option("--seed", c.seed, "seed recorded for randomized sweeps");
  };

  std::string cls, gens, pipeline, cert_path;
  int n_max = 5;
  Int window = 13, bound = 20;
  bool roundtrip = false;

  CLI::App* rec = app.add_subcommand("recognize", "decide one Cayley class");
  add_common(rec, true);
  rec->add_option("--class", cls, "semigroup|monoid|full|full-monoid|act")->required();

  CLI::App* cls_cmd = app.add_subcommand("classify", "decide all classes");
  add_common(cls_cmd, true);

  CLI::App* cen = app.add_subcommand("census", "classify all posets up to n");
  add_common(cen, false);
  cen->add_option("--n", n_max, "maximum element count");

  CLI::App* con = app.add_subcommand("construct", "run a certified construction pipeline");
  add_common(con, false);
  con->add_option("--pipeline", pipeline, "pipeline JSON file")->required();

  CLI::App* num = app.add_subcommand("numsem", "truncated Cayley poset of a monoid");
  add_common(num, false);
  num->add_option("--gens", gens, "numerical semigroup generators, e.g. 3,5");
  num->add_option("--window", window, "bound on the free coordinates");

  CLI::App* aeq = app.add_subcommand("autoequiv", "auto-equivalence checks on a window");
  add_common(aeq, false);
  aeq->add_option("--gens", gens, "numerical semigroup generators");
  aeq->add_option("--window", window, "bound on the free coordinates");
  aeq->add_option("--bound", bound, "factorization degree bound");
  aeq->add_flag("--roundtrip", roundtrip, "reconstruct the monoid and compare");

  CLI::App* exp = app.add_subcommand("export", "write the Hasse diagram as DOT");
  add_common(exp, true);
  exp->add_option("--cert", cert_path, "certificate JSON to annotate S");

  CLI11_PARSE(app, argc, argv);

  try {
    if (rec->parsed()) return cmd_recognize(c, cls);
    if (cls_cmd->parsed()) return cmd_classify(c);
    if (cen->parsed()) return cmd_census(c, n_max);
    if (con->parsed()) return cmd_construct(c, pipeline);
    if (num->parsed()) return cmd_numsem(c, gens, window);
    if (aeq->parsed()) return cmd_autoequiv(c, gens, window, roundtrip, bound);
    if (exp->parsed()) return cmd_export(c, cert_path);
  } catch (const CertificateInvalid& e) {
    std::cerr << "internal invariant breach: " << e.what() << "\n";
    return 3;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const json::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}
