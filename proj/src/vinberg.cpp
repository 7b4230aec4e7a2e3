#include "enriques/vinberg.hpp"

#include <algorithm>
#include <bit>
#include <functional>
#include <sstream>

namespace enriques {

namespace {

void check_size(const CurveGraph& g) {
  if (g.size() > kMaxEnumerationVertices)
    throw GraphError("graph has " + std::to_string(g.size()) + " vertices; parabolic enumeration is capped at " +
                     std::to_string(kMaxEnumerationVertices));
}

std::vector<int> bits_of(std::uint64_t m) {
  std::vector<int> out;
  while (m) {
    out.push_back(std::countr_zero(m));
    m &= m - 1;
  }
  return out;
}

std::uint64_t bit(int v) { return std::uint64_t{1} << v; }

int family_rank(char f) { return f == 'E' ? 2 : f == 'D' ? 1 : 0; }

// Two components are compatible when disjoint and joined by no edge.
struct Compat {
  std::vector<std::uint64_t> closed;  // vertex set plus neighbourhood

  Compat(const CurveGraph& g, const std::vector<ParabolicComponent>& comps) {
    for (const auto& c : comps) {
      std::uint64_t m = c.mask;
      for (int v : c.vertices) m |= g.neighbours(v);
      closed.push_back(m);
    }
  }
};

// Depth-first search over sets of pairwise compatible components taken in
// increasing index order. visit(chosen, rank) returns false to stop early.
void search_unions(const std::vector<ParabolicComponent>& comps, const Compat& cp, int target,
                   std::vector<int>& chosen, std::uint64_t blocked, int rank, std::size_t from,
                   const std::function<bool(const std::vector<int>&, int)>& visit, bool& stop) {
  if (!visit(chosen, rank)) {
    stop = true;
    return;
  }
  for (std::size_t i = from; i < comps.size() && !stop; ++i) {
    if (comps[i].mask & blocked) continue;
    if (rank + comps[i].rank() > target) continue;
    chosen.push_back(static_cast<int>(i));
    search_unions(comps, cp, target, chosen, blocked | cp.closed[i], rank + comps[i].rank(), i + 1, visit, stop);
    chosen.pop_back();
  }
}

ParabolicDiagram make_diagram(const std::vector<ParabolicComponent>& comps, const std::vector<int>& chosen) {
  ParabolicDiagram d;
  for (int i : chosen) {
    d.components.push_back(comps[i]);
    d.rank += comps[i].rank();
  }
  return d;
}

}  // namespace

std::string ParabolicDiagram::type_key() const {
  std::vector<DiagramClass> ts;
  for (const auto& c : components) ts.push_back(c.type);
  std::sort(ts.begin(), ts.end(), [](const DiagramClass& a, const DiagramClass& b) {
    if (a.family != b.family) return family_rank(a.family) > family_rank(b.family);
    return a.index > b.index;
  });
  std::string out;
  for (const auto& t : ts) out += (out.empty() ? "" : "+") + t.name();
  return out;
}

std::uint64_t ParabolicDiagram::mask() const {
  std::uint64_t m = 0;
  for (const auto& c : components) m |= c.mask;
  return m;
}

std::vector<ParabolicComponent> enumerate_connected_parabolics(const CurveGraph& g) {
  check_size(g);
  const int n = g.size();
  std::vector<std::uint64_t> nb(n);
  for (int v = 0; v < n; ++v) nb[v] = g.neighbours(v);
  std::vector<ParabolicComponent> out;

  // ESU: each connected set is generated once, from its smallest vertex.
  std::function<void(std::uint64_t, std::uint64_t, std::uint64_t, int)> grow =
      [&](std::uint64_t sub, std::uint64_t closed, std::uint64_t ext, int root) {
        const auto vs = bits_of(sub);
        const Inertia in = signature(induced_gram(g, vs));
        if (in.positive > 0 || in.zero > 1) return;
        if (in.zero == 1) {
          DiagramClass t = classify_subdiagram(g, vs);
          if (t.kind != DiagramKind::Affine)
            throw GraphError("semidefinite subdiagram without an affine template");
          out.push_back({vs, t, sub});
          return;
        }
        while (ext) {
          const int w = std::countr_zero(ext);
          ext &= ext - 1;
          std::uint64_t fresh = nb[w] & ~closed & ~bit(w);
          fresh &= ~((bit(root) << 1) - 1);  // only vertices above the root
          grow(sub | bit(w), closed | nb[w] | bit(w), ext | fresh, root);
        }
      };
  for (int v = 0; v < n; ++v) {
    const std::uint64_t above = ~((bit(v) << 1) - 1);
    grow(bit(v), bit(v) | nb[v], nb[v] & above, v);
  }
  std::sort(out.begin(), out.end(),
            [](const ParabolicComponent& a, const ParabolicComponent& b) { return a.vertices < b.vertices; });
  return out;
}

std::vector<std::vector<int>> brute_force_connected_parabolics(const CurveGraph& g) {
  const int n = g.size();
  if (n > 20) throw GraphError("brute-force oracle is limited to 20 vertices");
  std::vector<std::vector<int>> out;
  for (std::uint64_t m = 1; m < (std::uint64_t{1} << n); ++m) {
    auto vs = bits_of(m);
    if (!is_connected(g, vs)) continue;
    const Inertia in = signature(induced_gram(g, vs));
    if (in.positive == 0 && in.zero == 1) out.push_back(vs);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool extends_to_rank(const CurveGraph& g, const std::vector<int>& component, int target_rank) {
  const DiagramClass t = classify_subdiagram(g, component);
  if (t.kind != DiagramKind::Affine) throw GraphError("subdiagram is not parabolic");
  const auto comps = enumerate_connected_parabolics(g);
  auto sorted = component;
  std::sort(sorted.begin(), sorted.end());
  auto it = std::find_if(comps.begin(), comps.end(),
                         [&](const ParabolicComponent& c) { return c.vertices == sorted; });
  const Compat cp(g, comps);
  const std::size_t self = static_cast<std::size_t>(it - comps.begin());
  std::vector<int> chosen{static_cast<int>(self)};
  bool found = false, stop = false;
  search_unions(comps, cp, target_rank, chosen, cp.closed[self], t.rank, 0,
                [&](const std::vector<int>&, int rank) {
                  found = rank == target_rank;
                  return !found;
                },
                stop);
  return found;
}

VinbergReport vinberg_check(const CurveGraph& g, int ambient_rank) {
  VinbergReport r;
  r.nondegenerate = is_nondegenerate(g, ambient_rank);
  r.no_triple_lines = g.max_multiplicity() <= 2;
  const int target = ambient_rank - 2;
  const auto comps = enumerate_connected_parabolics(g);
  r.connected_parabolic_count = static_cast<int>(comps.size());
  const Compat cp(g, comps);
  std::vector<bool> extends(comps.size(), false);
  // One pass over all full-rank unions marks every component occurring in one.
  std::vector<int> chosen;
  bool stop = false;
  search_unions(comps, cp, target, chosen, 0, 0, 0,
                [&](const std::vector<int>& ch, int rank) {
                  if (rank == target)
                    for (int i : ch) extends[i] = true;
                  return true;
                },
                stop);
  for (std::size_t i = 0; i < comps.size(); ++i)
    if (!extends[i]) r.failures.push_back(comps[i]);
  r.pass = r.nondegenerate && r.no_triple_lines && r.failures.empty();
  return r;
}

std::vector<ParabolicDiagram> full_rank_parabolics(const CurveGraph& g, int target_rank) {
  const auto comps = enumerate_connected_parabolics(g);
  const Compat cp(g, comps);
  std::vector<ParabolicDiagram> out;
  std::vector<int> chosen;
  bool stop = false;
  search_unions(comps, cp, target_rank, chosen, 0, 0, 0,
                [&](const std::vector<int>& ch, int rank) {
                  if (rank == target_rank) out.push_back(make_diagram(comps, ch));
                  return true;
                },
                stop);
  return out;
}

std::map<std::string, int> maximal_parabolic_census(const CurveGraph& g, int target_rank) {
  std::map<std::string, int> census;
  for (const auto& d : full_rank_parabolics(g, target_rank)) ++census[d.type_key()];
  return census;
}

std::vector<ParabolicDiagram> maximal_by_inclusion(const CurveGraph& g) {
  const auto comps = enumerate_connected_parabolics(g);
  const Compat cp(g, comps);
  std::vector<ParabolicDiagram> out;
  std::vector<int> chosen;
  bool stop = false;
  const int unbounded = 1 << 20;
  search_unions(comps, cp, unbounded, chosen, 0, 0, 0,
                [&](const std::vector<int>& ch, int) {
                  if (ch.empty()) return true;
                  std::uint64_t blocked = 0;
                  for (int i : ch) blocked |= cp.closed[i];
                  for (const auto& c : comps)
                    if (!(c.mask & blocked)) return true;
                  out.push_back(make_diagram(comps, ch));
                  return true;
                },
                stop);
  return out;
}

std::string format_census(const std::map<std::string, int>& census) {
  std::vector<std::pair<std::string, int>> rows(census.begin(), census.end());
  std::ostringstream os;
  os << "{";
  bool first = true;
  for (const auto& [k, v] : rows) {
    os << (first ? "" : ", ") << k << ": " << v;
    first = false;
  }
  os << "}";
  return os.str();
}

}  // namespace enriques
