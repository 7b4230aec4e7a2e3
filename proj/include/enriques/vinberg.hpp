#pragma once

// Parabolic subdiagrams of a dual graph and the finite-index criterion for
// the reflection group: every connected parabolic subdiagram must be a
// component of a parabolic subdiagram of maximal rank (ambient rank - 2).

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "enriques/curvegraph.hpp"

namespace enriques {

// Enumeration is exponential in the worst case; graphs above this size are
// rejected rather than left to run for hours.
constexpr int kMaxEnumerationVertices = 24;

struct ParabolicComponent {
  std::vector<int> vertices;  // sorted
  DiagramClass type;          // affine
  std::uint64_t mask = 0;
  int rank() const { return type.rank; }
};

struct ParabolicDiagram {
  std::vector<ParabolicComponent> components;
  int rank = 0;
  // Component types sorted E > D > A, larger index first: "E~7+A~1".
  std::string type_key() const;
  std::uint64_t mask() const;
};

struct VinbergReport {
  bool nondegenerate = false;
  bool no_triple_lines = false;
  int connected_parabolic_count = 0;
  std::vector<ParabolicComponent> failures;  // do not extend to full rank
  bool pass = false;
};

// Connected subset growth; indefinite subsets are pruned, affine ones are
// recorded and not grown. Sorted lexicographically by vertex set.
std::vector<ParabolicComponent> enumerate_connected_parabolics(const CurveGraph& g);
// Independent oracle: every subset of at most 20 vertices, inertia test only.
std::vector<std::vector<int>> brute_force_connected_parabolics(const CurveGraph& g);

bool extends_to_rank(const CurveGraph& g, const std::vector<int>& component, int target_rank);
inline bool extends_to_rank8(const CurveGraph& g, const std::vector<int>& component) {
  return extends_to_rank(g, component, 8);
}

VinbergReport vinberg_check(const CurveGraph& g, int ambient_rank = 10);

// All parabolic subdiagrams of rank exactly target_rank.
std::vector<ParabolicDiagram> full_rank_parabolics(const CurveGraph& g, int target_rank = 8);
// type_key -> number of rank-target parabolic subdiagrams of that type.
std::map<std::string, int> maximal_parabolic_census(const CurveGraph& g, int target_rank = 8);
// Parabolic subdiagrams to which no further compatible component can be added.
std::vector<ParabolicDiagram> maximal_by_inclusion(const CurveGraph& g);

std::string format_census(const std::map<std::string, int>& census);

}  // namespace enriques
