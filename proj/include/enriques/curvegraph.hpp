#pragma once

// Dual graphs of (-2)-curves: vertices are curve classes, m_ij >= 0 is the
// intersection number of distinct curves, the diagonal is -2 implicitly.

#include <cstdint>
#include <string>
#include <vector>

#include "enriques/lattice.hpp"

namespace enriques {

constexpr int kMaxGraphVertices = 64;

struct GraphError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Edge {
  int i, j, m;
  bool operator==(const Edge&) const = default;
};

struct CurveGraph {
  std::string name;
  std::vector<std::string> labels;
  IntMatrix mult;  // symmetric, zero diagonal

  int size() const { return static_cast<int>(labels.size()); }
  long long m(int i, int j) const { return mult[i][j]; }
  std::vector<Edge> edges() const;  // i < j, sorted lexicographically
  std::uint64_t neighbours(int v) const;
  int max_multiplicity() const;

  static CurveGraph from_edges(std::string name, std::vector<std::string> labels, const std::vector<Edge>& edges);
  void validate() const;
};

CurveGraph parse_graph(const std::string& text);
CurveGraph load_graph(const std::string& path);
// Canonical form: vertices in given order, edges sorted, fixed layout.
std::string format_graph(const CurveGraph& g);
void save_graph(const CurveGraph& g, const std::string& path);

IntMatrix gram_of(const CurveGraph& g);
IntMatrix induced_gram(const CurveGraph& g, const std::vector<int>& vertices);
// The Gram matrix has signature (1, ambient_rank - 1), i.e. the classes span
// Num up to finite index; then the cone they generate is strictly convex.
bool is_nondegenerate(const CurveGraph& g, int ambient_rank = 10);
bool is_connected(const CurveGraph& g, const std::vector<int>& vertices);
bool verify_embedding(const CurveGraph& g, const std::vector<LatticeVector>& vectors);

enum class DiagramKind { Finite, Affine, Indefinite };

struct DiagramClass {
  DiagramKind kind = DiagramKind::Indefinite;
  char family = '?';  // 'A', 'D', 'E'
  int index = 0;      // subscript n of A_n, D~_n, ...
  int rank = 0;       // finite: vertex count; affine: vertex count - 1
  std::string name() const;  // "A3", "D~4", "E~8", "indefinite"
  bool operator==(const DiagramClass&) const = default;
};

struct Subdiagram {
  const CurveGraph* parent = nullptr;
  std::vector<int> vertices;
};

// Inertia pre-filter, then template match on the induced graph.
DiagramClass classify_subdiagram(const CurveGraph& g, const std::vector<int>& vertices);
DiagramClass classify_subdiagram(const Subdiagram& s);

using Permutation = std::vector<int>;

struct SymmetryGroup {
  std::uint64_t order = 1;
  std::vector<Permutation> generators;
};

// Individualization-refinement search along a stabilizer chain; the order is
// the product of the basic orbit lengths.
SymmetryGroup symmetry_group(const CurveGraph& g);
bool is_automorphism(const CurveGraph& g, const Permutation& p);

}  // namespace enriques
