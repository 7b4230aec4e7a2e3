#include "enriques/report.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include "json.hpp"

namespace enriques {

using json = nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> files_with_extension(const fs::path& dir, const std::string& ext) {
  std::vector<std::string> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& e : fs::directory_iterator(dir))
    if (e.is_regular_file() && e.path().extension() == ext) out.push_back(e.path().string());
  std::sort(out.begin(), out.end());
  return out;
}

void append(std::vector<CheckResult>& out, const std::string& prefix, const std::vector<CheckResult>& in) {
  for (const auto& c : in) out.push_back({prefix + c.name, c.pass, c.detail});
}

std::string fiber_options(const DiagramClass& t) {
  std::string s;
  for (const auto& f : affine_to_fibers(t)) s += (s.empty() ? "" : "|") + f.name();
  return s;
}

}  // namespace

// ---------------------------------------------------------------- reports

int RunReport::exit_code() const {
  for (const auto& c : checks)
    if (!c.pass) return 1;
  return 0;
}

std::string RunReport::text() const {
  std::ostringstream os;
  os << command;
  for (const auto& i : inputs) os << " " << i;
  os << "\n";
  for (const auto& n : notes) os << "  " << n << "\n";
  int failed = 0;
  for (const auto& c : checks) {
    os << (c.pass ? "  PASS " : "  FAIL ") << c.name;
    if (!c.detail.empty()) os << ": " << c.detail;
    os << "\n";
    failed += c.pass ? 0 : 1;
  }
  os << (failed ? "FAIL" : "PASS") << " (" << checks.size() - failed << "/" << checks.size() << " checks)\n";
  return os.str();
}

std::string RunReport::structured() const {
  json j;
  j["command"] = command;
  j["inputs"] = inputs;
  j["notes"] = notes;
  j["checks"] = json::array();
  for (const auto& c : checks) j["checks"].push_back({{"name", c.name}, {"pass", c.pass}, {"witness", c.detail}});
  j["exit_code"] = exit_code();
  return j.dump(2) + "\n";
}

// ---------------------------------------------------------------- expectations

Expectations load_expectations(const std::string& path) {
  const json j = json::parse(read_file(path));
  if (j.value("version", 0) != 1) throw std::runtime_error("unsupported expectations version in " + path);
  Expectations e;
  for (const auto& g : j.at("graphs")) {
    GraphExpectation x;
    x.file = g.at("file").get<std::string>();
    x.type = g.value("type", std::string());
    x.census = g.value("census", std::map<std::string, int>{});
    x.census_types = g.value("census_types", std::vector<std::string>{});
    x.census_contains = g.value("census_contains", std::vector<std::string>{});
    if (g.contains("symmetry_order")) x.symmetry_order = g["symmetry_order"].get<std::uint64_t>();
    x.symmetry_frozen = g.value("symmetry_frozen", false);
    e.graphs.push_back(x);
  }
  for (const auto& b : j.value("broken", json::array()))
    e.broken.push_back({b.at("file").get<std::string>(), b.value("mutation", std::string())});
  return e;
}

// ---------------------------------------------------------------- graphs

std::vector<std::string> census_lines(const CurveGraph& g, int target_rank) {
  std::map<std::string, std::pair<int, std::string>> rows;
  for (const auto& d : full_rank_parabolics(g, target_rank)) {
    auto& row = rows[d.type_key()];
    ++row.first;
    if (row.second.empty()) {
      auto comps = d.components;
      std::sort(comps.begin(), comps.end(), [](const ParabolicComponent& a, const ParabolicComponent& b) {
        return a.type.rank > b.type.rank;
      });
      for (const auto& c : comps) row.second += (row.second.empty() ? "" : ", ") + fiber_options(c.type);
    }
  }
  std::vector<std::string> out;
  for (const auto& [key, row] : rows)
    out.push_back(key + ": " + std::to_string(row.first) + "  fibers (" + row.second + ")");
  return out;
}

std::string witness_text(const CurveGraph& g, const VinbergReport& r) {
  if (!r.nondegenerate) return "Gram matrix is not hyperbolic of full rank";
  if (!r.no_triple_lines) return "multiplicity " + std::to_string(g.max_multiplicity()) + " edge";
  if (r.failures.empty()) return "";
  const auto& f = r.failures.front();
  std::string s = f.type.name() + " on {";
  for (std::size_t i = 0; i < f.vertices.size(); ++i) s += (i ? ", " : "") + g.labels[f.vertices[i]];
  return s + "} lies in no parabolic subdiagram of maximal rank";
}

std::vector<CheckResult> graph_checks(const CurveGraph& g, const GraphExpectation& e, int ambient_rank) {
  std::vector<CheckResult> out;
  const VinbergReport r = vinberg_check(g, ambient_rank);
  out.push_back({"vinberg", r.pass,
                 r.pass ? std::to_string(r.connected_parabolic_count) + " connected parabolic subdiagrams, all extend"
                        : witness_text(g, r)});
  if (!r.pass) return out;
  const auto census = maximal_parabolic_census(g, ambient_rank - 2);
  const std::string got = format_census(census);
  if (!e.census.empty()) out.push_back({"census", census == e.census, got});
  if (!e.census_types.empty()) {
    std::set<std::string> have, want(e.census_types.begin(), e.census_types.end());
    for (const auto& [k, _] : census) have.insert(k);
    out.push_back({"census types", have == want, got});
  }
  if (!e.census_contains.empty()) {
    bool ok = true;
    for (const auto& k : e.census_contains) ok = ok && census.count(k);
    out.push_back({"census contains", ok, got});
  }
  if (e.symmetry_order) {
    const auto sym = symmetry_group(g);
    out.push_back({e.symmetry_frozen ? "symmetry order (regression)" : "symmetry order", sym.order == *e.symmetry_order,
                   std::to_string(sym.order) + " (expected " + std::to_string(*e.symmetry_order) + ")"});
  }
  return out;
}

CheckResult negative_control(const CurveGraph& g, const std::string& mutation, int ambient_rank) {
  const VinbergReport r = vinberg_check(g, ambient_rank);
  const std::string w = witness_text(g, r);
  return {"negative control " + g.name + " (" + mutation + ")", !r.pass && !w.empty(),
          r.pass ? "unexpectedly passes" : "fails: " + w};
}

// ---------------------------------------------------------------- algebra suites

std::vector<CheckResult> aut_checks(const AutSpec& spec, std::uint64_t seed, int trials) {
  std::vector<CheckResult> out;
  for (int i = 0; i < trials; ++i) {
    const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
    const AutRun run = run_aut_spec(spec, s);
    append(out, "seed " + std::to_string(s) + " ", run.checks);
  }
  return out;
}

std::vector<CheckResult> extremality_checks(const std::vector<TypeFibrations>& types) {
  std::vector<CheckResult> out;
  for (const auto& t : types)
    for (const auto& c : t.fibrations) {
      const std::string label = c.name() + " " + kind_name(c.kind);
      out.push_back({"extremal " + t.type + " " + label, is_extremal(c), ""});
    }
  for (const char* text : {"(I2*)", "(I0*)"}) {
    const auto c = parse_configuration(text, FibrationKind::Elliptic);
    out.push_back({std::string("not extremal ") + text + " elliptic", !is_extremal(c), ""});
  }
  return out;
}

std::vector<CheckResult> conductrix_checks(const std::vector<ConductrixTable>& tables) {
  std::vector<CheckResult> out;
  for (const auto& t : tables)
    for (const auto& r : t.rows) {
      if (r.empty()) continue;
      const long long a2 = r.self_pairing();
      out.push_back({"conductrix " + r.config.name() + " " + kind_name(t.kind) + " A^2", a2 == -2,
                     std::to_string(a2)});
    }
  return out;
}

// ---------------------------------------------------------------- whole corpus

RunReport verify_all(const SuiteOptions& opt) {
  RunReport rep;
  rep.command = "verify-all";
  rep.inputs = {opt.data_dir};
  const fs::path root(opt.data_dir);
  const Expectations ex = load_expectations((root / "expectations.json").string());

  std::set<std::string> covered;
  rep.notes.push_back("type | census | symmetries");
  for (const auto& e : ex.graphs) {
    const fs::path p = root / e.file;
    covered.insert(fs::weakly_canonical(p).string());
    const CurveGraph g = load_graph(p.string());
    const auto checks = graph_checks(g, e, opt.ambient_rank);
    append(rep.checks, "graph " + g.name + " ", checks);
    std::string census = "-", sym = "-";
    for (const auto& c : checks) {
      if (c.name.rfind("census", 0) == 0) census = c.detail;
      if (c.name.rfind("symmetry", 0) == 0) sym = c.detail.substr(0, c.detail.find(' '));
    }
    rep.notes.push_back(e.type + " | " + census + " | " + sym);
  }
  for (const auto& b : ex.broken) {
    const fs::path p = root / b.file;
    covered.insert(fs::weakly_canonical(p).string());
    rep.checks.push_back(negative_control(load_graph(p.string()), b.mutation, opt.ambient_rank));
  }
  std::vector<std::string> uncovered;
  for (const auto& dir : {root / "graphs", root / "graphs" / "broken"})
    for (const auto& f : files_with_extension(dir, ".graph"))
      if (!covered.count(fs::weakly_canonical(f).string())) uncovered.push_back(fs::path(f).filename().string());
  {
    std::string d;
    for (const auto& u : uncovered) d += (d.empty() ? "" : ", ") + u;
    rep.checks.push_back({"coverage: every shipped graph has an expectation", uncovered.empty(),
                          uncovered.empty() ? std::to_string(covered.size()) + " graphs" : "missing " + d});
  }

  rep.notes.push_back("derivation | status");
  const auto dfiles = files_with_extension(root / "derivations", ".json");
  for (const auto& f : dfiles) {
    const DerivationSpec s = load_derivation_spec(f);
    const auto checks = verify_derivation_spec(s);
    append(rep.checks, "derivation " + s.name + " ", checks);
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    rep.notes.push_back(s.name + " | " + (ok ? "verified" : "FAILED") + " (" + checks.front().detail + ")");
  }
  rep.notes.push_back("automorphisms | realized group | stated group");
  const auto afiles = files_with_extension(root / "automorphisms", ".json");
  for (const auto& f : afiles) {
    const AutSpec s = load_aut_spec(f);
    const auto checks = aut_checks(s, opt.seed, opt.trials);
    append(rep.checks, "automorphisms " + s.name + " ", checks);
    const bool ok = std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.pass; });
    rep.notes.push_back(s.name + " | " + (ok ? s.expected_group : "FAILED") + " | " +
                        (s.stated_group.empty() ? s.expected_group : s.stated_group));
  }
  rep.checks.push_back({"coverage: derivation and automorphism specs", !dfiles.empty() && !afiles.empty(),
                        std::to_string(dfiles.size()) + " derivation specs, " + std::to_string(afiles.size()) +
                            " automorphism specs"});

  const fs::path tables = root / "tables";
  append(rep.checks, "", extremality_checks(load_type_fibrations((tables / "type_fibrations.json").string())));
  std::vector<ConductrixTable> ct;
  for (const auto& f : files_with_extension(tables, ".json"))
    if (fs::path(f).filename().string().rfind("conductrix", 0) == 0) ct.push_back(load_conductrix_table(f));
  append(rep.checks, "", conductrix_checks(ct));
  rep.checks.push_back({"blow-up table p_a = 0", enumerate_blowup_rows(0).size() == 6,
                        std::to_string(enumerate_blowup_rows(0).size()) + " rows"});
  rep.checks.push_back({"blow-up table p_a = 1", enumerate_blowup_rows(1).size() == 9,
                        std::to_string(enumerate_blowup_rows(1).size()) + " rows"});
  return rep;
}

}  // namespace enriques
