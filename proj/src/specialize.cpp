#include "enriques/specialize.hpp"

namespace enriques {

namespace {

Elem constant_of(const RationalFunction& f, const std::string& what) {
  if (!f.is_constant()) throw AlgebraError("'" + what + "' does not evaluate to a constant");
  return f.constant_value();
}

}  // namespace

Bindings Specialization::bindings(const RingPtr& ring) const {
  if (ring->field != field) throw AlgebraError("ring and specialization use different fields");
  Bindings b;
  for (const auto& [name, v] : values) b.emplace(name, RationalFunction(MultiPoly::constant(ring, v)));
  return b;
}

RingPtr constant_ring(const FieldPtr& field) { return make_ring({"z"}, field); }

std::vector<Elem> roots_in_field(const std::string& poly_in_z, const Specialization& s) {
  const RingPtr ring = constant_ring(s.field);
  const MultiPoly p = parse_poly(poly_in_z, ring, s.bindings(ring));
  if (p.is_zero()) throw AlgebraError("polynomial '" + poly_in_z + "' is zero");
  std::vector<Elem> coeffs;
  for (const auto& c : p.coefficients_in(0)) coeffs.push_back(c.is_zero() ? 0 : c.constant_value());
  return s.field->roots(coeffs);
}

Specialization specialize(const std::vector<ConstantDef>& defs, int field_degree, std::mt19937_64& rng,
                          const std::vector<std::string>& nonzero, const std::vector<std::string>& split,
                          int attempts) {
  const FieldPtr field = gf(field_degree);
  const RingPtr ring = constant_ring(field);
  for (int attempt = 0; attempt < attempts; ++attempt) {
    Specialization s;
    s.field = field;
    bool ok = true;
    for (const auto& d : defs) {
      switch (d.kind) {
        case ConstantKind::Param:
          s.values[d.name] = field->random_nonzero(rng);
          break;
        case ConstantKind::RootOfUnity: {
          // A random primitive root: the fixed one raised to a unit exponent.
          const Elem z = field->root_of_unity(d.order);
          Elem pick = z;
          for (;;) {
            const std::uint64_t e = 1 + rng() % d.order;
            pick = field->pow(z, e);
            if (field->order_of(pick) == d.order) break;
          }
          s.values[d.name] = pick;
          break;
        }
        case ConstantKind::RootOf: {
          const auto roots = roots_in_field(d.text, s);
          if (roots.empty()) {
            ok = false;
            break;
          }
          s.values[d.name] = roots[rng() % roots.size()];
          break;
        }
        case ConstantKind::Expr:
          try {
            s.values[d.name] = constant_of(parse_rational(d.text, ring, s.bindings(ring)), d.text);
          } catch (const ParseError&) {
            ok = false;  // a denominator vanished for this draw
          }
          break;
      }
      if (!ok) break;
    }
    if (!ok) continue;
    for (const auto& e : nonzero) {
      RationalFunction f;
      try {
        f = parse_rational(e, ring, s.bindings(ring));
      } catch (const ParseError&) {
        ok = false;  // division by zero while evaluating
        break;
      }
      if (constant_of(f, e) == 0) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    for (const auto& e : split) {
      const MultiPoly p = parse_poly(e, ring, s.bindings(ring));
      if (static_cast<int>(roots_in_field(e, s).size()) != p.degree_in(0)) {
        ok = false;
        break;
      }
    }
    if (ok) return s;
  }
  throw AlgebraError("no admissible specialization in GF(2^" + std::to_string(field_degree) + ") after " +
                     std::to_string(attempts) + " attempts");
}

}  // namespace enriques
