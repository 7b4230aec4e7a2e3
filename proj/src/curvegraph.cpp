#include "enriques/curvegraph.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <optional>
#include <sstream>

#include "json.hpp"

namespace enriques {

using json = nlohmann::json;

// ---------------------------------------------------------------- graph data

std::vector<Edge> CurveGraph::edges() const {
  std::vector<Edge> out;
  for (int i = 0; i < size(); ++i)
    for (int j = i + 1; j < size(); ++j)
      if (mult[i][j]) out.push_back({i, j, static_cast<int>(mult[i][j])});
  return out;
}

std::uint64_t CurveGraph::neighbours(int v) const {
  std::uint64_t m = 0;
  for (int u = 0; u < size(); ++u)
    if (u != v && mult[v][u]) m |= std::uint64_t{1} << u;
  return m;
}

int CurveGraph::max_multiplicity() const {
  long long m = 0;
  for (const auto& row : mult)
    for (auto x : row) m = std::max(m, x);
  return static_cast<int>(m);
}

void CurveGraph::validate() const {
  const int n = size();
  if (n > kMaxGraphVertices) throw GraphError("graph has more than 64 vertices");
  if (static_cast<int>(mult.size()) != n) throw GraphError("multiplicity matrix size mismatch");
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(mult[i].size()) != n) throw GraphError("multiplicity matrix is not square");
    if (mult[i][i] != 0) throw GraphError("nonzero diagonal multiplicity");
    for (int j = 0; j < n; ++j) {
      if (mult[i][j] < 0) throw GraphError("negative edge multiplicity");
      if (mult[i][j] != mult[j][i]) throw GraphError("asymmetric multiplicities");
    }
  }
}

CurveGraph CurveGraph::from_edges(std::string name, std::vector<std::string> labels, const std::vector<Edge>& edges) {
  CurveGraph g;
  g.name = std::move(name);
  g.labels = std::move(labels);
  const int n = g.size();
  if (n > kMaxGraphVertices) throw GraphError("graph has more than 64 vertices");
  g.mult.assign(n, std::vector<long long>(n, 0));
  for (const auto& e : edges) {
    if (e.i < 0 || e.j < 0 || e.i >= n || e.j >= n) throw GraphError("edge index out of range");
    if (e.i == e.j) throw GraphError("loop edge");
    if (e.m < 1) throw GraphError("edge multiplicity must be >= 1");
    if (g.mult[e.i][e.j]) throw GraphError("edge listed twice");
    g.mult[e.i][e.j] = g.mult[e.j][e.i] = e.m;
  }
  return g;
}

CurveGraph parse_graph(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw GraphError(std::string("graph file is not valid JSON: ") + e.what());
  }
  try {
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw GraphError("edge entries must be [i, j, multiplicity]");
      edges.push_back({e[0].get<int>(), e[1].get<int>(), e[2].get<int>()});
    }
    return CurveGraph::from_edges(j.at("name").get<std::string>(), j.at("vertices").get<std::vector<std::string>>(),
                                  edges);
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed graph file: ") + e.what());
  }
}

CurveGraph load_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("cannot open graph file " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_graph(ss.str());
}

std::string format_graph(const CurveGraph& g) {
  std::ostringstream os;
  os << "{\n  \"name\": " << json(g.name).dump() << ",\n  \"vertices\": [";
  for (int i = 0; i < g.size(); ++i) os << (i ? ", " : "") << json(g.labels[i]).dump();
  os << "],\n  \"edges\": [";
  auto es = g.edges();
  for (std::size_t k = 0; k < es.size(); ++k)
    os << (k ? ",\n    " : "\n    ") << "[" << es[k].i << ", " << es[k].j << ", " << es[k].m << "]";
  os << (es.empty() ? "]\n}\n" : "\n  ]\n}\n");
  return os.str();
}

void save_graph(const CurveGraph& g, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw GraphError("cannot write graph file " + path);
  out << format_graph(g);
}

IntMatrix gram_of(const CurveGraph& g) {
  IntMatrix m = g.mult;
  for (int i = 0; i < g.size(); ++i) m[i][i] = -2;
  return m;
}

IntMatrix induced_gram(const CurveGraph& g, const std::vector<int>& vs) {
  const int k = static_cast<int>(vs.size());
  IntMatrix m(k, std::vector<long long>(k));
  for (int a = 0; a < k; ++a)
    for (int b = 0; b < k; ++b) m[a][b] = a == b ? -2 : g.mult[vs[a]][vs[b]];
  return m;
}

bool is_nondegenerate(const CurveGraph& g, int ambient_rank) {
  if (g.size() < ambient_rank) return false;
  const Inertia in = signature(gram_of(g));
  return in.positive == 1 && in.negative == ambient_rank - 1;
}

bool is_connected(const CurveGraph& g, const std::vector<int>& vs) {
  if (vs.empty()) return false;
  std::vector<int> seen{vs[0]};
  std::vector<bool> in(vs.size(), false);
  in[0] = true;
  for (std::size_t h = 0; h < seen.size(); ++h)
    for (std::size_t k = 0; k < vs.size(); ++k)
      if (!in[k] && g.mult[seen[h]][vs[k]]) {
        in[k] = true;
        seen.push_back(vs[k]);
      }
  return seen.size() == vs.size();
}

bool verify_embedding(const CurveGraph& g, const std::vector<LatticeVector>& vectors) {
  return verify_embedding(g.mult, vectors);
}

// ---------------------------------------------------------------- ADE types

std::string DiagramClass::name() const {
  if (kind == DiagramKind::Indefinite) return "indefinite";
  std::string s(1, family);
  if (kind == DiagramKind::Affine) s += "~";
  return s + std::to_string(index);
}

namespace {

DiagramClass make_class(DiagramKind kind, char family, int index, int vertices) {
  return {kind, family, index, kind == DiagramKind::Affine ? vertices - 1 : vertices};
}

// Arm lengths (vertex counts) from a branch vertex of a tree.
std::vector<int> arms(const std::vector<std::vector<int>>& adj, int centre) {
  std::vector<int> out;
  for (int start : adj[centre]) {
    int prev = centre, cur = start, len = 1;
    while (adj[cur].size() == 2) {
      int nxt = adj[cur][0] == prev ? adj[cur][1] : adj[cur][0];
      prev = cur;
      cur = nxt;
      ++len;
    }
    out.push_back(len);
  }
  std::sort(out.begin(), out.end());
  return out;
}

DiagramClass match_template(const CurveGraph& g, const std::vector<int>& vs, bool affine) {
  const int k = static_cast<int>(vs.size());
  const DiagramKind kind = affine ? DiagramKind::Affine : DiagramKind::Finite;
  std::vector<std::vector<int>> adj(k);
  int edges = 0;
  bool multiple = false;
  for (int a = 0; a < k; ++a)
    for (int b = a + 1; b < k; ++b) {
      long long m = g.mult[vs[a]][vs[b]];
      if (!m) continue;
      multiple = multiple || m > 1;
      adj[a].push_back(b);
      adj[b].push_back(a);
      ++edges;
    }
  if (multiple) {
    if (affine && k == 2 && g.mult[vs[0]][vs[1]] == 2) return make_class(kind, 'A', 1, 2);
    return {};
  }
  std::vector<int> branch;
  int max_deg = 0;
  for (int a = 0; a < k; ++a) {
    max_deg = std::max<int>(max_deg, static_cast<int>(adj[a].size()));
    if (adj[a].size() >= 3) branch.push_back(a);
  }
  if (affine && edges == k && max_deg == 2 && k >= 3) return make_class(kind, 'A', k - 1, k);
  if (edges != k - 1) return {};
  if (!affine) {
    if (max_deg <= 2) return make_class(kind, 'A', k, k);
    if (branch.size() != 1 || max_deg != 3) return {};
    auto a = arms(adj, branch[0]);
    if (a[0] == 1 && a[1] == 1) return make_class(kind, 'D', k, k);
    if (a[0] == 1 && a[1] == 2 && a[2] >= 2 && a[2] <= 4) return make_class(kind, 'E', k, k);
    return {};
  }
  if (k == 5 && max_deg == 4) return make_class(kind, 'D', 4, k);
  if (max_deg != 3) return {};
  if (branch.size() == 2) return make_class(kind, 'D', k - 1, k);
  if (branch.size() != 1) return {};
  auto a = arms(adj, branch[0]);
  if (a == std::vector<int>{2, 2, 2}) return make_class(kind, 'E', 6, k);
  if (a == std::vector<int>{1, 3, 3}) return make_class(kind, 'E', 7, k);
  if (a == std::vector<int>{1, 2, 5}) return make_class(kind, 'E', 8, k);
  return {};
}

}  // namespace

DiagramClass classify_subdiagram(const CurveGraph& g, const std::vector<int>& vs) {
  for (int v : vs)
    if (v < 0 || v >= g.size()) throw GraphError("subdiagram vertex out of range");
  {
    auto s = vs;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw GraphError("repeated subdiagram vertex");
  }
  if (!is_connected(g, vs)) throw GraphError("subdiagram is not connected");
  const Inertia in = signature(induced_gram(g, vs));
  if (in.positive != 0 || in.zero > 1) return {};
  return match_template(g, vs, in.zero == 1);
}

DiagramClass classify_subdiagram(const Subdiagram& s) {
  if (!s.parent) throw GraphError("subdiagram without parent graph");
  return classify_subdiagram(*s.parent, s.vertices);
}

// ---------------------------------------------------------------- symmetries

bool is_automorphism(const CurveGraph& g, const Permutation& p) {
  const int n = g.size();
  if (static_cast<int>(p.size()) != n) return false;
  std::vector<bool> hit(n, false);
  for (int v : p) {
    if (v < 0 || v >= n || hit[v]) return false;
    hit[v] = true;
  }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (g.mult[i][j] != g.mult[p[i]][p[j]]) return false;
  return true;
}

namespace {

using Colouring = std::vector<int>;

// Jointly refines the left and right colourings so that colour names agree;
// returns false as soon as the colour histograms differ.
bool refine(const CurveGraph& g, Colouring& left, Colouring& right) {
  const int n = g.size();
  using Sig = std::pair<int, std::vector<std::pair<long long, int>>>;
  auto signature = [&](const Colouring& c, int v) {
    Sig s{c[v], {}};
    for (int u = 0; u < n; ++u)
      if (u != v && g.mult[v][u]) s.second.push_back({g.mult[v][u], c[u]});
    std::sort(s.second.begin(), s.second.end());
    return s;
  };
  int classes = -1;
  for (;;) {
    std::vector<Sig> ls(n), rs(n);
    for (int v = 0; v < n; ++v) {
      ls[v] = signature(left, v);
      rs[v] = signature(right, v);
    }
    std::map<Sig, int> ids;
    for (const auto& s : ls) ids.emplace(s, 0);
    for (const auto& s : rs)
      if (!ids.count(s)) return false;
    int next = 0;
    for (auto& [s, id] : ids) id = next++;
    std::vector<int> hl(next, 0), hr(next, 0);
    for (int v = 0; v < n; ++v) {
      left[v] = ids[ls[v]];
      right[v] = ids[rs[v]];
      ++hl[left[v]];
      ++hr[right[v]];
    }
    if (hl != hr) return false;
    if (next == classes) return true;
    classes = next;
  }
}

void individualize(Colouring& c, int v) {
  c[v] = *std::max_element(c.begin(), c.end()) + 1;
}

// Smallest non-singleton colour class of c, first vertex in it; -1 if discrete.
int target_cell(const Colouring& c) {
  std::map<int, int> count;
  for (int x : c) ++count[x];
  int best = -1, best_size = 0;
  for (auto& [col, sz] : count)
    if (sz > 1 && (best < 0 || sz < best_size)) {
      best = col;
      best_size = sz;
    }
  return best;
}

std::optional<Permutation> search(const CurveGraph& g, Colouring left, Colouring right) {
  if (!refine(g, left, right)) return std::nullopt;
  const int n = g.size();
  const int cell = target_cell(left);
  if (cell < 0) {
    Permutation p(n);
    std::vector<int> where(n + 1, -1);
    for (int u = 0; u < n; ++u) where[right[u]] = u;
    for (int v = 0; v < n; ++v) p[v] = where[left[v]];
    if (is_automorphism(g, p)) return p;
    return std::nullopt;
  }
  int v = static_cast<int>(std::find(left.begin(), left.end(), cell) - left.begin());
  for (int u = 0; u < n; ++u) {
    if (right[u] != cell) continue;
    Colouring l = left, r = right;
    individualize(l, v);
    individualize(r, u);
    if (auto p = search(g, l, r)) return p;
  }
  return std::nullopt;
}

std::vector<int> orbit(int v, const std::vector<Permutation>& gens, int n) {
  std::vector<bool> in(n, false);
  std::vector<int> out{v};
  in[v] = true;
  for (std::size_t h = 0; h < out.size(); ++h)
    for (const auto& p : gens)
      if (!in[p[out[h]]]) {
        in[p[out[h]]] = true;
        out.push_back(p[out[h]]);
      }
  return out;
}

}  // namespace

SymmetryGroup symmetry_group(const CurveGraph& g) {
  const int n = g.size();
  SymmetryGroup out;
  Colouring base(n, 0);
  {
    Colouring copy = base;
    refine(g, base, copy);
  }
  for (;;) {
    const int cell = target_cell(base);
    if (cell < 0) break;
    const int b = static_cast<int>(std::find(base.begin(), base.end(), cell) - base.begin());
    std::vector<Permutation> level;
    std::vector<int> orb = orbit(b, level, n);
    for (int u = 0; u < n; ++u) {
      if (base[u] != cell || std::find(orb.begin(), orb.end(), u) != orb.end()) continue;
      Colouring l = base, r = base;
      individualize(l, b);
      individualize(r, u);
      if (auto p = search(g, l, r)) {
        level.push_back(*p);
        orb = orbit(b, level, n);
      }
    }
    out.order *= orb.size();
    out.generators.insert(out.generators.end(), level.begin(), level.end());
    individualize(base, b);
    Colouring copy = base;
    refine(g, base, copy);
  }
  return out;
}

}  // namespace enriques
