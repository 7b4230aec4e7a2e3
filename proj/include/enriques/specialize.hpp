#pragma once

// Realizing named constants of a data file in an explicit GF(2^k): random
// parameters, roots of unity, roots of auxiliary polynomials and derived
// expressions, drawn from a seeded generator so every run is reproducible.

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "enriques/algebra.hpp"

namespace enriques {

enum class ConstantKind { Param, RootOfUnity, RootOf, Expr };

struct ConstantDef {
  std::string name;
  ConstantKind kind = ConstantKind::Param;
  std::uint64_t order = 0;  // RootOfUnity: exact multiplicative order
  std::string text;         // RootOf: polynomial in z; Expr: expression
};

struct Specialization {
  FieldPtr field;
  std::map<std::string, Elem> values;  // in definition order of the caller
  // Constants as bindings in `ring`, which must share the field.
  Bindings bindings(const RingPtr& ring) const;
};

// Univariate ring {z} over the field, used for auxiliary polynomials.
RingPtr constant_ring(const FieldPtr& field);

// Distinct roots in the field of a polynomial in z whose coefficients may
// mention already bound constants.
std::vector<Elem> roots_in_field(const std::string& poly_in_z, const Specialization& s);

// Draws all constants in order. `nonzero` expressions must not vanish and
// `split` polynomials must have as many distinct roots as their degree;
// otherwise the draw is repeated (at most `attempts` times).
Specialization specialize(const std::vector<ConstantDef>& defs, int field_degree, std::mt19937_64& rng,
                          const std::vector<std::string>& nonzero = {},
                          const std::vector<std::string>& split = {}, int attempts = 4000);

}  // namespace enriques
