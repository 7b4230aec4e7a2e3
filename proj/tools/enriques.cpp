#include <filesystem>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "enriques/report.hpp"

#ifndef ENRIQUES_DATA_DIR
#define ENRIQUES_DATA_DIR "data"
#endif

using namespace enriques;

namespace {

struct Options {
  std::string format = "text";
  std::string data_dir = ENRIQUES_DATA_DIR;
  std::uint64_t seed = 1;
  int trials = 3;
  int ambient_rank = 10;
  bool census = false;
  std::string file;
  std::string text;
  int pa = 0;
};

std::string cycles(const CurveGraph& g, const Permutation& p) {
  std::vector<bool> seen(p.size());
  std::string out;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (seen[i] || p[i] == static_cast<int>(i)) continue;
    out += "(";
    for (std::size_t j = i; !seen[j]; j = static_cast<std::size_t>(p[j])) {
      seen[j] = true;
      out += (out.back() == '(' ? "" : " ") + g.labels[j];
    }
    out += ")";
  }
  return out.empty() ? "()" : out;
}

std::vector<ConductrixTable> conductrix_tables(const std::string& data_dir) {
  const std::filesystem::path t = std::filesystem::path(data_dir) / "tables";
  return {load_conductrix_table((t / "conductrix_elliptic.json").string()),
          load_conductrix_table((t / "conductrix_quasi_elliptic.json").string())};
}

RunReport check_vinberg(const Options& o) {
  RunReport r{"check-vinberg", {o.file}, {}, {}};
  const CurveGraph g = load_graph(o.file);
  const VinbergReport v = vinberg_check(g, o.ambient_rank);
  r.notes.push_back(g.name + ": " + std::to_string(g.size()) + " vertices, " +
                    std::to_string(v.connected_parabolic_count) + " connected parabolic subdiagrams");
  r.checks.push_back({"nondegenerate", v.nondegenerate, v.nondegenerate ? "" : witness_text(g, v)});
  r.checks.push_back({"no edge of multiplicity above 2", v.no_triple_lines,
                      v.no_triple_lines ? "" : "multiplicity " + std::to_string(g.max_multiplicity())});
  if (v.nondegenerate && v.no_triple_lines)
    r.checks.push_back({"every connected parabolic subdiagram extends to rank " + std::to_string(o.ambient_rank - 2),
                        v.failures.empty(), witness_text(g, v)});
  if (o.census && v.pass)
    for (const auto& line : census_lines(g, o.ambient_rank - 2)) r.notes.push_back(line);
  return r;
}

RunReport census(const Options& o) {
  RunReport r{"census", {o.file}, {}, {}};
  const CurveGraph g = load_graph(o.file);
  const auto lines = census_lines(g, o.ambient_rank - 2);
  r.notes = lines;
  r.checks.push_back({"parabolic subdiagrams of rank " + std::to_string(o.ambient_rank - 2), !lines.empty(),
                      format_census(maximal_parabolic_census(g, o.ambient_rank - 2))});
  return r;
}

RunReport symmetries(const Options& o) {
  RunReport r{"symmetries", {o.file}, {}, {}};
  const CurveGraph g = load_graph(o.file);
  const SymmetryGroup s = symmetry_group(g);
  r.notes.push_back("order " + std::to_string(s.order));
  bool ok = true;
  for (const auto& p : s.generators) {
    r.notes.push_back("generator " + cycles(g, p));
    ok = ok && is_automorphism(g, p);
  }
  r.checks.push_back({"generators preserve the graph", ok, std::to_string(s.generators.size()) + " generators"});
  return r;
}

RunReport fibrations(const Options& o) {
  RunReport r{"fibrations", {}, {}, {}};
  const std::string path = (std::filesystem::path(o.data_dir) / "tables" / "type_fibrations.json").string();
  r.inputs.push_back(path);
  auto types = load_type_fibrations(path);
  if (!o.text.empty()) {
    std::erase_if(types, [&](const TypeFibrations& t) { return t.type != o.text; });
    if (types.empty()) throw FibrationError("unknown type " + o.text);
  }
  for (const auto& t : types)
    for (const auto& c : t.fibrations) r.notes.push_back(t.type + ": " + c.name() + " " + kind_name(c.kind));
  r.checks = extremality_checks(types);
  if (!o.text.empty()) std::erase_if(r.checks, [](const CheckResult& c) { return c.name.rfind("not ", 0) == 0; });
  return r;
}

RunReport conductrix(const Options& o) {
  RunReport r{"conductrix", {o.text}, {}, {}};
  const FiberConfiguration c = parse_configuration(o.text);
  const auto tables = conductrix_tables(o.data_dir);
  const ConductrixRecord& rec = conductrix_lookup(tables, c);
  std::istringstream lines(rec.format());
  for (std::string line; std::getline(lines, line);) r.notes.push_back(line);
  if (!rec.empty()) {
    const long long a2 = rec.self_pairing();
    r.checks.push_back({"A^2 = -2", a2 == -2, std::to_string(a2)});
  }
  r.checks.push_back({"singularities", !rec.singularities.empty(), rec.singularities});
  return r;
}

RunReport blowup_table(const Options& o) {
  RunReport r{"blowup-table", {std::to_string(o.pa)}, {}, {}};
  if (o.pa != 0 && o.pa != 1) throw FibrationError("arithmetic genus must be 0 or 1");
  const auto rows = enumerate_blowup_rows(o.pa);
  std::istringstream lines(format_blowup_rows(rows, o.pa));
  for (std::string line; std::getline(lines, line);) r.notes.push_back(line);
  const std::size_t want = o.pa == 0 ? 6 : 9;
  r.checks.push_back({"row count", rows.size() == want, std::to_string(rows.size())});
  return r;
}

RunReport verify_derivation(const Options& o) {
  RunReport r{"verify-derivation", {o.file}, {}, {}};
  const DerivationSpec s = load_derivation_spec(o.file);
  r.notes.push_back(s.name + (s.source.empty() ? "" : " (" + s.source + ")"));
  r.checks = verify_derivation_spec(s);
  return r;
}

RunReport verify_aut(const Options& o) {
  RunReport r{"verify-aut", {o.file}, {}, {}};
  const AutSpec s = load_aut_spec(o.file);
  for (int i = 0; i < o.trials; ++i) {
    const AutRun run = run_aut_spec(s, o.seed + static_cast<std::uint64_t>(i));
    std::string consts;
    for (const auto& [k, v] : run.constants) consts += (consts.empty() ? "" : ", ") + k + " = " + std::to_string(v);
    r.notes.push_back("seed " + std::to_string(run.seed) + ": GF(2^" + std::to_string(s.field_degree) + ") " + consts +
                      "; group " + (run.group_name.empty() ? "?" : run.group_name) + " " +
                      format_invariants(run.group));
    for (const auto& c : run.checks) r.checks.push_back({"seed " + std::to_string(run.seed) + " " + c.name, c.pass, c.detail});
  }
  if (!s.stated_group.empty()) r.notes.push_back("realized subgroup of " + s.stated_group);
  return r;
}

RunReport verify_all_cmd(const Options& o) {
  return verify_all({o.data_dir, o.seed, o.trials, o.ambient_rank});
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Enriques surface verification toolkit"};
  app.require_subcommand(1);
  app.fallthrough();
  Options o;
  app.add_option("--format", o.format, "text or structured")->check(CLI::IsMember({"text", "structured"}));
  app.add_option("--data-dir", o.data_dir, "shipped data directory");
  app.add_option("--seed", o.seed, "first specialization seed");
  app.add_option("--trials", o.trials, "number of seeds")->check(CLI::PositiveNumber);
  app.add_option("--ambient-rank", o.ambient_rank, "rank of Num")->check(CLI::Range(3, 24));

  std::vector<std::pair<CLI::App*, RunReport (*)(const Options&)>> commands;
  auto graph_cmd = [&](const char* name, const char* help, RunReport (*fn)(const Options&)) {
    auto* c = app.add_subcommand(name, help);
    c->add_option("graph", o.file)->required();
    commands.emplace_back(c, fn);
    return c;
  };
  graph_cmd("check-vinberg", "finite-index criterion for a dual graph", check_vinberg)
      ->add_flag("--census", o.census, "list parabolic subdiagrams of maximal rank");
  graph_cmd("census", "parabolic subdiagrams of maximal rank with fiber types", census);
  graph_cmd("symmetries", "symmetry group of a dual graph", symmetries);
  auto* fib = app.add_subcommand("fibrations", "genus one fibrations per type and extremality");
  fib->add_option("type", o.text);
  commands.emplace_back(fib, fibrations);
  auto* con = app.add_subcommand("conductrix", "conductrix table lookup");
  con->add_option("config", o.text)->required();
  commands.emplace_back(con, conductrix);
  auto* blow = app.add_subcommand("blowup-table", "blow-up invariants for curves of genus 0 or 1");
  blow->add_option("pa", o.pa)->required();
  commands.emplace_back(blow, blowup_table);
  auto* vd = app.add_subcommand("verify-derivation", "check a vector field construction");
  vd->add_option("spec", o.file)->required()->check(CLI::ExistingFile);
  commands.emplace_back(vd, verify_derivation);
  auto* va = app.add_subcommand("verify-aut", "check explicit automorphisms and their group");
  va->add_option("spec", o.file)->required()->check(CLI::ExistingFile);
  commands.emplace_back(va, verify_aut);
  commands.emplace_back(app.add_subcommand("verify-all", "run the whole shipped corpus"), verify_all_cmd);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  for (const auto& [cmd, fn] : commands) {
    if (!cmd->parsed()) continue;
    RunReport r;
    try {
      r = fn(o);
    } catch (const std::exception& e) {
      std::cerr << "error: " << e.what() << "\n";
      return 2;
    }
    std::cout << (o.format == "structured" ? r.structured() : r.text());
    return r.exit_code();
  }
  return 2;
}
