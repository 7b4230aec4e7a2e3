#pragma once

// Rational vector fields in characteristic 2: action on rational functions,
// p-closedness, invariants, quotient relations and the divisor bookkeeping
// c2 = deg<D> - K.(D) - (D)^2 for a field with divisorial part (D).

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "enriques/algebra.hpp"

namespace enriques {

struct DerivationError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// D = prefactor * sum coeffs[v] d/dv over the independent variables. When
// `dependent` is set, the field lives on the surface relation(v..., y) = 0,
// which must be monic of degree 2 in y, and D(y) is implicit.
struct VectorField {
  RingPtr ring;
  std::vector<int> vars;
  std::map<int, RationalFunction> coeffs;
  RationalFunction prefactor;
  int dependent = -1;
  MultiPoly relation;

  RationalFunction image(int v) const;  // D(v), including v = dependent
  RationalFunction apply(const RationalFunction& f) const;
  // Zero as a function on the surface (numerator reduced modulo the relation).
  bool vanishes(const RationalFunction& f) const;
  bool equal(const RationalFunction& f, const RationalFunction& g) const { return vanishes(f - g); }
};

enum class PClosedKind { Additive, Multiplicative, NotPClosed };

struct PClosedType {
  PClosedKind kind = PClosedKind::NotPClosed;
  std::optional<RationalFunction> c;  // D^2 = c D when Multiplicative
  std::string describe() const;
};

PClosedType p_closed_type(const VectorField& d);
bool verify_invariant(const VectorField& d, const RationalFunction& f);

// Substitutes all listed variables simultaneously into `relation` and tests
// the result for zero (modulo the surface relation of `surface` if given).
// Every variable of `relation` outside `parameters` must be substituted.
bool verify_relation(const std::map<int, RationalFunction>& substitutions, const MultiPoly& relation,
                     const std::vector<int>& parameters, const VectorField* surface = nullptr);

struct DivisorBookkeeping {
  std::vector<std::string> curves;
  std::vector<std::vector<int>> intersections;  // empty when only scalars are known
  std::vector<int> D;
  std::vector<int> K;
  int c2 = 0;
  std::optional<int> D2;  // claimed (D)^2
  std::optional<int> KD;  // claimed K.(D)
};

struct RsDegree {
  int D2 = 0;
  int KD = 0;
  int deg = 0;
  bool matrix_matches_claims = true;
};

// deg<D> = c2 + K.(D) + (D)^2, computed from the matrix when present.
RsDegree rs_deg_isolated(const DivisorBookkeeping& book);

// Self-intersection of the image of a curve C in the quotient by a p-closed
// field with p = 2: C^2/2 for integral curves, 2 C^2 otherwise.
int quotient_selfint(int C2, bool integral);

// ---------------------------------------------------------------- data files

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
};

struct QuotientImage {
  std::string curve;
  int C2 = 0;
  bool integral = false;
  int expected = 0;
};

struct DerivationSpec {
  std::string name;
  std::string source;  // file path, for reports
  RingPtr ring;
  std::vector<int> parameters;
  Bindings definitions;  // parameters' derived constants and auxiliary functions
  VectorField field;
  std::optional<std::string> expected_pclosed;  // "additive" or the expression c
  std::vector<std::pair<std::string, RationalFunction>> invariants;
  std::map<int, RationalFunction> substitutions;
  std::optional<MultiPoly> relation;
  std::string relation_text;
  std::optional<DivisorBookkeeping> bookkeeping;
  std::vector<QuotientImage> images;
};

DerivationSpec parse_derivation_spec(const std::string& json_text, const std::string& source = "");
DerivationSpec load_derivation_spec(const std::string& path);

std::vector<CheckResult> verify_derivation_spec(const DerivationSpec& spec);

}  // namespace enriques
