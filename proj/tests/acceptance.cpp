// One line per acceptance criterion; exit status 1 if any criterion fails.

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <set>
#include <sstream>

#include "enriques/report.hpp"

using namespace enriques;

namespace {

const std::string kData = ENRIQUES_DATA_DIR;
using Census = std::map<std::string, int>;

CurveGraph graph(const std::string& name) { return load_graph(kData + "/graphs/" + name + ".graph"); }

struct Outcome {
  bool pass = true;
  std::vector<std::string> problems;
  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      problems.push_back(what);
    }
  }
};

std::set<std::string> keys(const Census& c) {
  std::set<std::string> s;
  for (const auto& [k, _] : c) s.insert(k);
  return s;
}

Outcome vinberg_suite() {
  Outcome o;
  for (const char* n : {"e8", "e7a1_supersingular", "e7a1_classical1", "e7a1_classical2", "e6a2", "d8", "d4d4",
                        "viii", "vii"}) {
    const CurveGraph g = graph(n);
    const VinbergReport r = vinberg_check(g);
    o.expect(r.pass, std::string(n) + " fails the criterion: " + witness_text(g, r));
    if (!r.pass) continue;
    const Census c = maximal_parabolic_census(g);
    const std::string name = n;
    if (name == "e8") o.expect(c == Census{{"E~8", 1}}, "e8 census " + format_census(c));
    if (name.rfind("e7a1", 0) == 0)
      o.expect(c.count("E~7+A~1") && c.count("E~8"), name + " census " + format_census(c));
    if (name == "e6a2") o.expect(c == Census{{"E~6+A~2", 1}, {"E~7+A~1", 3}}, "e6a2 census " + format_census(c));
    if (name == "d8") o.expect(c == Census{{"D~8", 1}, {"E~8", 2}}, "d8 census " + format_census(c));
    if (name == "d4d4")
      o.expect(keys(c) == std::set<std::string>{"D~4+D~4", "D~8"}, "d4d4 census " + format_census(c));
    if (name == "viii")
      o.expect(c == Census{{"D~5+A~3", 3}, {"D~6+A~1+A~1", 3}, {"E~6+A~2", 8}}, "viii census " + format_census(c));
    if (name == "vii")
      o.expect(keys(c) == std::set<std::string>{"A~8", "A~7+A~1", "A~4+A~4", "A~5+A~2+A~1"},
               "vii census " + format_census(c));
  }
  return o;
}

Outcome negative_controls() {
  Outcome o;
  int n = 0;
  for (const char* f : {"e8_leaf_deleted", "e8_edge_flipped", "e8_triple_edge"}) {
    const CurveGraph g = load_graph(kData + "/graphs/broken/" + f + ".graph");
    const VinbergReport r = vinberg_check(g);
    o.expect(!r.pass && !witness_text(g, r).empty(), std::string(f) + " is not rejected with a witness");
    ++n;
  }
  o.expect(n >= 3, "fewer than three mutated graphs");
  return o;
}

Outcome symmetry_suite() {
  Outcome o;
  const std::vector<std::pair<const char*, std::uint64_t>> want{
      {"e8", 1}, {"e7a1_supersingular", 2}, {"e7a1_classical1", 2}, {"e7a1_classical2", 1},
      {"viii", 24}, {"vii", 120}, {"d4d4", 72}, {"e6a2", 6},
  };
  for (const auto& [n, order] : want) {
    const std::uint64_t got = symmetry_group(graph(n)).order;
    o.expect(got == order, std::string(n) + " has " + std::to_string(got) + " symmetries, expected " +
                               std::to_string(order));
  }
  return o;
}

Outcome extremality_suite() {
  Outcome o;
  for (const auto& c : extremality_checks(load_type_fibrations(kData + "/tables/type_fibrations.json")))
    o.expect(c.pass, c.name);
  return o;
}

Outcome blowup_suite() {
  Outcome o;
  const std::vector<BlowupRow> rational{
      {"", 0, 0, 1, 1, -1, 0}, {"", 0, 0, 2, -1, -4, 0}, {"", 1, 1, 2, -2, -6, 0},
      {"", 2, 1, 1, 0, -2, 0}, {"", 4, 1, 1, -1, -3, 0}, {"", 6, 1, 1, -2, -4, 0},
  };
  const std::vector<BlowupRow> genus_one{
      {"sm", 0, 0, 1, 0, 0, 1}, {"sm", 0, 0, 2, 0, 0, 1}, {"n", 1, 2, 1, 0, -2, 0},
      {"c", 0, 0, 1, 0, 0, 1},  {"c", 0, 0, 1, 2, 0, 0},  {"c", 0, 0, 2, 0, 0, 1},
      {"c", 1, 2, 1, 0, -2, 0}, {"c", 2, 1, 1, 1, -1, 0}, {"c", 4, 1, 1, 0, -2, 0},
  };
  const auto r0 = enumerate_blowup_rows(0), r1 = enumerate_blowup_rows(1);
  o.expect(r0 == rational, "p_a = 0 table has " + std::to_string(r0.size()) + " rows or differs");
  o.expect(r1 == genus_one, "p_a = 1 table has " + std::to_string(r1.size()) + " rows or differs");
  const BlowupRow key{"", 6, 1, 1, -2, -4, 0};
  o.expect(std::find(r0.begin(), r0.end(), key) != r0.end(), "row r = 6, s = 1, A.C = -2 missing");
  return o;
}

Outcome conductrix_suite() {
  Outcome o;
  const std::vector<ConductrixTable> t{load_conductrix_table(kData + "/tables/conductrix_elliptic.json"),
                                       load_conductrix_table(kData + "/tables/conductrix_quasi_elliptic.json")};
  for (const auto& c : conductrix_checks(t)) o.expect(c.pass, c.name + " = " + c.detail);
  const std::vector<std::tuple<std::string, FibrationKind, std::string>> lookups{
      {"(I4*)", FibrationKind::Elliptic, "4A1"},
      {"(2III, I8)", FibrationKind::Elliptic, "12A1"},
      {"(III, I8)", FibrationKind::Elliptic, "D4, 8A1"},
      {"(2II*)", FibrationKind::QuasiElliptic, "4A1 or D4"},
      {"(2I0*, 2I0*)", FibrationKind::QuasiElliptic, "4A1"},
  };
  for (const auto& [cfg, kind, sing] : lookups) {
    const auto& rec = conductrix_lookup(t, parse_configuration(cfg, kind));
    o.expect(rec.singularities == sing, cfg + " gives " + rec.singularities);
  }
  const auto& i4 = conductrix_lookup(t, parse_configuration("(I4*)", FibrationKind::Elliptic));
  std::vector<int> s;
  for (const auto& n : i4.nodes) s.push_back(n.cover_selfint);
  o.expect(s == std::vector<int>{-4, -2, -2, -2, -4}, "(I4*) conductrix components differ");
  return o;
}

Outcome derivation_suite() {
  Outcome o;
  const std::map<std::string, std::string> pclosed{
      {"e6a2_supersingular", "additive"}, {"e8_supersingular", "additive"}, {"e7a1_supersingular", "additive"},
      {"d8_supersingular", "additive"},   {"e6a2_classical", "1"},          {"viii", "1"},
      {"e7a1_classical1", "a"},           {"d4d4", "b"},                    {"d8_classical", "a"},
  };
  int files = 0;
  for (const auto& e : std::filesystem::directory_iterator(kData + "/derivations")) {
    const DerivationSpec s = load_derivation_spec(e.path().string());
    const std::string stem = e.path().stem().string();
    if (auto it = pclosed.find(stem); it != pclosed.end())
      o.expect(s.expected_pclosed && *s.expected_pclosed == it->second, stem + " declares a different p-closed type");
    for (const auto& c : verify_derivation_spec(s)) o.expect(c.pass, stem + " " + c.name + ": " + c.detail);
    ++files;
  }
  o.expect(files >= 12, std::to_string(files) + " derivation specs");
  DivisorBookkeeping b;
  b.D2 = -12, b.KD = -4, b.c2 = 16;
  o.expect(rs_deg_isolated(b).deg == 0, "deg of isolated singularities is not 0");
  return o;
}

Outcome automorphism_suite() {
  Outcome o;
  const std::map<std::string, std::string> groups{
      {"e8_supersingular", "Z/11"},          {"e8_classical", "1"},
      {"e7a1_supersingular_generic", "Z/2"}, {"e7a1_supersingular_a7", "Z/14"},
      {"e7a1_classical1", "Z/2"},            {"e7a1_classical2", "Z/2"},
      {"d8_supersingular", "Q8"},            {"d8_classical", "Z/2"},
      {"d4d4", "(Z/2)^3"},                   {"e6a2_supersingular", "Z/10"},
  };
  for (const auto& [file, group] : groups) {
    const AutSpec spec = load_aut_spec(kData + "/automorphisms/" + file + ".json");
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const AutRun run = run_aut_spec(spec, seed);
      for (const auto& c : run.checks) o.expect(c.pass, file + " seed " + std::to_string(seed) + " " + c.name);
      o.expect(run.group_name == group, file + " seed " + std::to_string(seed) + " gives " + run.group_name);
    }
  }
  return o;
}

// Exact inertia oracle for small symmetric matrices: the characteristic
// polynomial has only real roots, so Descartes' rule of signs is exact.
Inertia descartes_inertia(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  // Faddeev-LeVerrier: coefficients c[n] = 1, ..., c[0] of det(x I - m).
  std::vector<long long> c(n + 1, 0);
  c[n] = 1;
  IntMatrix mk(n, std::vector<long long>(n, 0)), prod;
  for (int k = 1; k <= n; ++k) {
    // mk = m * (mk_prev + c[n-k+1] I)
    IntMatrix t = mk;
    for (int i = 0; i < n; ++i) t[i][i] += c[n - k + 1];
    prod.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        for (int l = 0; l < n; ++l) prod[i][j] += m[i][l] * t[l][j];
    mk = prod;
    long long tr = 0;
    for (int i = 0; i < n; ++i) tr += mk[i][i];
    c[n - k] = -tr / k;
  }
  int zero = 0;
  while (zero <= n && c[zero] == 0) ++zero;
  auto changes = [&](bool negate) {
    int count = 0, last = 0;
    for (int i = zero; i <= n; ++i) {
      long long v = c[i];
      if (negate && (i % 2)) v = -v;
      const int s = v > 0 ? 1 : v < 0 ? -1 : 0;
      if (!s) continue;
      if (last && s != last) ++count;
      last = s;
    }
    return count;
  };
  return {changes(false), changes(true), zero};
}

Outcome oracle_suite() {
  Outcome o;
  for (const auto& e : std::filesystem::directory_iterator(kData + "/graphs")) {
    if (e.path().extension() != ".graph") continue;
    const CurveGraph g = load_graph(e.path().string());
    if (g.size() > 13) continue;
    std::set<std::vector<int>> fast, slow;
    for (const auto& c : enumerate_connected_parabolics(g)) fast.insert(c.vertices);
    for (const auto& v : brute_force_connected_parabolics(g)) slow.insert(v);
    o.expect(fast == slow, g.name + ": parabolic enumeration differs from the brute-force oracle");
  }
  for (int k = 1; k <= 12; ++k) {
    const FiniteField& f = *gf(k);
    for (Elem a = 0; a < f.size(); ++a)
      if (f.square(f.sqrt(a)) != a) o.expect(false, "sqrt in GF(2^" + std::to_string(k) + ")");
    const std::uint64_t q = f.size() - 1;
    for (std::uint64_t n = 1; n <= q; ++n) {
      if (q % n) continue;
      const Elem z = f.root_of_unity(n);
      std::uint64_t ord = 1;
      for (Elem p = z; p != 1; p = f.mul(p, z)) ++ord;
      if (ord != n) o.expect(false, "root of unity of order " + std::to_string(n) + " in GF(2^" + std::to_string(k) + ")");
    }
  }
  for (int n = 1; n <= 3; ++n) {
    const int cells = n * (n + 1) / 2;
    long long total = 1;
    for (int i = 0; i < cells; ++i) total *= 5;
    for (long long code = 0; code < total; ++code) {
      IntMatrix m(n, std::vector<long long>(n));
      long long x = code;
      for (int i = 0; i < n; ++i)
        for (int j = i; j < n; ++j) {
          m[i][j] = m[j][i] = x % 5 - 2;
          x /= 5;
        }
      if (!(signature(m) == descartes_inertia(m))) {
        o.expect(false, "inertia differs on a " + std::to_string(n) + "x" + std::to_string(n) + " matrix");
        break;
      }
    }
  }
  return o;
}

}  // namespace

int main() {
  const std::vector<std::tuple<int, std::string, double, std::function<Outcome()>>> criteria{
      {1, "Vinberg suite", 60, vinberg_suite},
      {2, "negative controls", 10, negative_controls},
      {3, "symmetry suite", 60, symmetry_suite},
      {4, "extremality suite", 60, extremality_suite},
      {5, "blow-up tables", 1, blowup_suite},
      {6, "conductrix suite", 60, conductrix_suite},
      {7, "derivation suite", 30, derivation_suite},
      {8, "automorphism suite", 60, automorphism_suite},
      {9, "oracle equivalence", 60, oracle_suite},
  };
  int failed = 0;
  for (const auto& [id, name, budget, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.expect(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    o.expect(secs < budget, "runtime above " + std::to_string(static_cast<int>(budget)) + " s");
    std::string why;
    for (const auto& p : o.problems) why += (why.empty() ? "; " : ", ") + p;
    std::printf("[%s] %d %s (%.2f s)%s\n", o.pass ? "PASS" : "FAIL", id, name.c_str(), secs, why.c_str());
    failed += o.pass ? 0 : 1;
  }
  return failed ? 1 : 0;
}
