#include <algorithm>
#include <filesystem>
#include <set>

#include "doctest.h"
#include "enriques/report.hpp"

using namespace enriques;

namespace {

const std::string kData = ENRIQUES_DATA_DIR;

CurveGraph shipped(const std::string& name) { return load_graph(kData + "/graphs/" + name + ".graph"); }

std::vector<std::string> shipped_names() {
  std::vector<std::string> out;
  for (const auto& e : std::filesystem::directory_iterator(kData + "/graphs"))
    if (e.path().extension() == ".graph") out.push_back(e.path().stem().string());
  std::sort(out.begin(), out.end());
  return out;
}

CurveGraph path_graph(int n, bool cycle) {
  std::vector<std::string> labels;
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i) labels.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1});
  if (cycle && n > 2) edges.push_back({0, n - 1, 1});
  if (cycle && n == 2) edges = {{0, 1, 2}};
  return CurveGraph::from_edges(cycle ? "cycle" : "path", labels, edges);
}

// Oracle: count label-free automorphisms by plain backtracking with degree
// and adjacency pruning only.
std::uint64_t count_automorphisms(const CurveGraph& g) {
  const int n = g.size();
  std::vector<int> img(n, -1);
  std::vector<bool> used(n, false);
  std::vector<int> deg(n, 0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) deg[i] += static_cast<int>(g.m(i, j));
  std::uint64_t count = 0;
  auto rec = [&](auto&& self, int v) -> void {
    if (v == n) {
      ++count;
      return;
    }
    for (int w = 0; w < n; ++w) {
      if (used[w] || deg[w] != deg[v]) continue;
      bool ok = true;
      for (int u = 0; u < v && ok; ++u) ok = g.m(u, v) == g.m(img[u], w);
      if (!ok) continue;
      used[w] = true;
      img[v] = w;
      self(self, v + 1);
      used[w] = false;
    }
  };
  rec(rec, 0);
  return count;
}

}  // namespace

TEST_SUITE("curvegraph") {
  TEST_CASE("graph files round-trip through the canonical format") {
    for (const auto& name : shipped_names()) {
      const CurveGraph g = shipped(name);
      const CurveGraph h = parse_graph(format_graph(g));
      CHECK(h.labels == g.labels);
      CHECK(h.mult == g.mult);
    }
  }

  TEST_CASE("malformed graphs are rejected") {
    CHECK_THROWS_AS(parse_graph("{"), GraphError);
    CHECK_THROWS_AS(parse_graph(R"({"name":"x","vertices":["a"],"edges":[[0,0,1]]})"), GraphError);
    CHECK_THROWS_AS(parse_graph(R"({"name":"x","vertices":["a","b"],"edges":[[0,2,1]]})"), GraphError);
    CHECK_THROWS_AS(parse_graph(R"({"name":"x","vertices":["a","b"],"edges":[[0,1,1],[1,0,1]]})"), GraphError);
    CHECK_THROWS_AS(load_graph(kData + "/graphs/missing.graph"), GraphError);
  }

  TEST_CASE("edges of multiplicity 3 are representable") {
    const CurveGraph g = CurveGraph::from_edges("t", {"a", "b"}, {{0, 1, 3}});
    CHECK(g.max_multiplicity() == 3);
  }

  TEST_CASE("ADE classification") {
    CHECK(classify_subdiagram(path_graph(8, false), {0, 1, 2, 3, 4, 5, 6, 7}).name() == "A8");
    CHECK(classify_subdiagram(path_graph(9, true), {0, 1, 2, 3, 4, 5, 6, 7, 8}).name() == "A~8");
    CHECK(classify_subdiagram(path_graph(2, true), {0, 1}).name() == "A~1");
    const CurveGraph e8 = shipped("e8");
    std::vector<int> all(e8.size());
    for (int i = 0; i < e8.size(); ++i) all[i] = i;
    CHECK(classify_subdiagram(e8, all).kind == DiagramKind::Indefinite);
    // D~4: a star with four leaves
    const CurveGraph d4 = CurveGraph::from_edges("d4", {"o", "a", "b", "c", "d"}, {{0, 1, 1}, {0, 2, 1}, {0, 3, 1}, {0, 4, 1}});
    CHECK(classify_subdiagram(d4, {0, 1, 2, 3, 4}).name() == "D~4");
    CHECK(classify_subdiagram(d4, {0, 1, 2, 3}).name() == "D4");
    CHECK_THROWS_AS(classify_subdiagram(d4, {1, 2}), GraphError);
  }

  TEST_CASE("nondegeneracy") {
    CHECK(is_nondegenerate(shipped("e8")));
    CHECK_FALSE(is_nondegenerate(load_graph(kData + "/graphs/broken/e8_leaf_deleted.graph")));
  }

  TEST_CASE("symmetry orders agree with the backtracking oracle") {
    for (const auto& name : shipped_names()) {
      const CurveGraph g = shipped(name);
      const SymmetryGroup s = symmetry_group(g);
      CAPTURE(name);
      CHECK(s.order == count_automorphisms(g));
      for (const auto& p : s.generators) CHECK(is_automorphism(g, p));
    }
    CHECK(symmetry_group(path_graph(9, true)).order == 18);
    CHECK(symmetry_group(path_graph(5, false)).order == 2);
  }

  TEST_CASE("symmetry orders of the classification graphs") {
    CHECK(symmetry_group(shipped("e8")).order == 1);
    CHECK(symmetry_group(shipped("e7a1_supersingular")).order == 2);
    CHECK(symmetry_group(shipped("e7a1_classical1")).order == 2);
    CHECK(symmetry_group(shipped("e7a1_classical2")).order == 1);
    CHECK(symmetry_group(shipped("vii")).order == 120);
    CHECK(symmetry_group(shipped("d4d4")).order == 72);
    CHECK(symmetry_group(shipped("e6a2")).order == 6);
  }
}

TEST_SUITE("vinberg") {
  TEST_CASE("connected parabolic enumeration equals the brute-force oracle") {
    int compared = 0;
    for (const auto& name : shipped_names()) {
      const CurveGraph g = shipped(name);
      if (g.size() > 13) continue;
      std::set<std::vector<int>> fast, slow;
      for (const auto& c : enumerate_connected_parabolics(g)) fast.insert(c.vertices);
      for (const auto& v : brute_force_connected_parabolics(g)) slow.insert(v);
      CAPTURE(name);
      CHECK(fast == slow);
      ++compared;
    }
    for (const auto& f : std::filesystem::directory_iterator(kData + "/graphs/broken")) {
      const CurveGraph g = load_graph(f.path().string());
      std::set<std::vector<int>> fast, slow;
      for (const auto& c : enumerate_connected_parabolics(g)) fast.insert(c.vertices);
      for (const auto& v : brute_force_connected_parabolics(g)) slow.insert(v);
      CHECK(fast == slow);
      ++compared;
    }
    CHECK(compared >= 9);
  }

  TEST_CASE("every shipped graph passes the criterion") {
    for (const auto& name : shipped_names()) {
      CAPTURE(name);
      CHECK(vinberg_check(shipped(name)).pass);
    }
  }

  TEST_CASE("maximal parabolic subdiagrams have full rank") {
    for (const auto& name : shipped_names()) {
      const CurveGraph g = shipped(name);
      CAPTURE(name);
      for (const auto& d : maximal_by_inclusion(g)) CHECK(d.rank == 8);
    }
  }

  TEST_CASE("censuses") {
    using C = std::map<std::string, int>;
    CHECK(maximal_parabolic_census(shipped("e8")) == C{{"E~8", 1}});
    CHECK(maximal_parabolic_census(shipped("e6a2")) == C{{"E~6+A~2", 1}, {"E~7+A~1", 3}});
    CHECK(maximal_parabolic_census(shipped("d8")) == C{{"D~8", 1}, {"E~8", 2}});
    CHECK(maximal_parabolic_census(shipped("viii")) == C{{"D~5+A~3", 3}, {"D~6+A~1+A~1", 3}, {"E~6+A~2", 8}});
    for (const char* n : {"e7a1_supersingular", "e7a1_classical1", "e7a1_classical2"}) {
      const C c = maximal_parabolic_census(shipped(n));
      CHECK(c.count("E~7+A~1"));
      CHECK(c.count("E~8"));
    }
    std::set<std::string> vii, d4d4;
    for (const auto& [k, _] : maximal_parabolic_census(shipped("vii"))) vii.insert(k);
    for (const auto& [k, _] : maximal_parabolic_census(shipped("d4d4"))) d4d4.insert(k);
    CHECK(vii == std::set<std::string>{"A~8", "A~7+A~1", "A~4+A~4", "A~5+A~2+A~1"});
    CHECK(d4d4 == std::set<std::string>{"D~4+D~4", "D~8"});
  }

  TEST_CASE("negative controls fail with a witness") {
    const CurveGraph leaf = load_graph(kData + "/graphs/broken/e8_leaf_deleted.graph");
    const CurveGraph flip = load_graph(kData + "/graphs/broken/e8_edge_flipped.graph");
    const CurveGraph triple = load_graph(kData + "/graphs/broken/e8_triple_edge.graph");
    const VinbergReport a = vinberg_check(leaf), b = vinberg_check(flip), c = vinberg_check(triple);
    CHECK_FALSE(a.pass);
    CHECK_FALSE(a.nondegenerate);
    CHECK_FALSE(b.pass);
    REQUIRE_FALSE(b.failures.empty());
    CHECK(b.failures.front().type.name() == "E~7");
    CHECK_FALSE(c.pass);
    CHECK_FALSE(c.no_triple_lines);
    for (const auto* g : {&leaf, &flip, &triple}) CHECK(negative_control(*g, "mutation").pass);
  }

  TEST_CASE("deleting any single edge of the E8 graph is detected") {
    // The remaining forest is a union of finite and affine diagrams, so its
    // Gram matrix is never hyperbolic.
    const CurveGraph g = shipped("e8");
    for (const auto& e : g.edges()) {
      std::vector<Edge> rest;
      for (const auto& f : g.edges())
        if (!(f == e)) rest.push_back(f);
      const CurveGraph h = CurveGraph::from_edges("cut", g.labels, rest);
      CHECK_FALSE(vinberg_check(h).pass);
    }
  }

  TEST_CASE("oversized graphs are refused") {
    const CurveGraph big = path_graph(kMaxEnumerationVertices + 1, false);
    CHECK_THROWS_AS(enumerate_connected_parabolics(big), GraphError);
  }
}
