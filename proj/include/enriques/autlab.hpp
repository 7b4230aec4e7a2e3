#pragma once

// Explicit automorphisms of surfaces y^2 + g0(t,x) y + R(t,x) = 0 over an
// explicit GF(2^k): verification, composition, orders and identification of
// the generated group against a small catalog.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "enriques/algebra.hpp"
#include "enriques/derivation.hpp"
#include "enriques/specialize.hpp"

namespace enriques {

struct AutError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Monic of degree 2 in y, over the ring {t, x, y}.
struct SurfaceEquation {
  MultiPoly poly;
  int t = 0, x = 1, y = 2;
  static SurfaceEquation from(MultiPoly poly);
  const RingPtr& ring() const { return poly.ring(); }
  // Zero as a function on the surface.
  bool vanishes(const RationalFunction& f) const;
};

// Images of t, x, y. The normal form has t -> c1 t + c2, x -> d1(t) x + d2(t),
// y -> e1(t,x) y + e2(t,x); fractional linear images such as t -> 1/t are
// accepted as well.
struct Substitution {
  RationalFunction t, x, y;
  static Substitution identity(const RingPtr& ring);
  const RationalFunction& at(int i) const { return i == 0 ? t : i == 1 ? x : y; }
  std::string to_string() const;
};

// Rejects images that do not involve their own variable (d1 = 0 or e1 = 0)
// and images depending on later variables.
void check_normal_shape(const SurfaceEquation& F, const Substitution& s);
bool verify_automorphism(const SurfaceEquation& F, const Substitution& s);
// The map f -> f(s1) after f -> f(s2): component v of s1 evaluated at s2.
Substitution compose(const Substitution& s1, const Substitution& s2);
// Inverse of a triangular fractional linear substitution.
Substitution inverse(const Substitution& s);
bool same_map(const SurfaceEquation& F, const Substitution& a, const Substitution& b);
int element_order(const SurfaceEquation& F, const Substitution& s, int max);

struct GroupInvariants {
  int order = 1;
  bool abelian = true;
  std::map<int, int> element_orders;  // order -> count
  bool operator==(const GroupInvariants&) const = default;
};

std::string format_invariants(const GroupInvariants& g);
const std::vector<std::pair<std::string, GroupInvariants>>& group_catalog();
// Catalog name, or "" when the invariants match no entry.
std::string identify_invariants(const GroupInvariants& g);

constexpr int kClosureBudget = 256;

// Closure of `gens` under `mul`, starting from `id`; elements compared with
// `eq`. Throws AutError beyond `budget` elements.
template <class T>
GroupInvariants group_closure(const std::vector<T>& gens, const T& id, const std::function<T(const T&, const T&)>& mul,
                              const std::function<bool(const T&, const T&)>& eq, int budget = kClosureBudget,
                              std::vector<T>* elements_out = nullptr) {
  std::vector<T> elems{id};
  auto find = [&](const T& g) {
    for (std::size_t i = 0; i < elems.size(); ++i)
      if (eq(elems[i], g)) return static_cast<int>(i);
    return -1;
  };
  for (std::size_t i = 0; i < elems.size(); ++i) {
    for (const auto& g : gens) {
      T p = mul(elems[i], g);
      if (find(p) >= 0) continue;
      if (static_cast<int>(elems.size()) >= budget)
        throw AutError("group closure exceeds " + std::to_string(budget) + " elements");
      elems.push_back(std::move(p));
    }
  }
  GroupInvariants inv;
  inv.order = static_cast<int>(elems.size());
  for (std::size_t i = 0; i < gens.size() && inv.abelian; ++i)
    for (std::size_t j = i + 1; j < gens.size(); ++j)
      if (!eq(mul(gens[i], gens[j]), mul(gens[j], gens[i]))) {
        inv.abelian = false;
        break;
      }
  for (const auto& e : elems) {
    int n = 1;
    T p = e;
    while (!eq(p, id)) {
      p = mul(p, e);
      if (++n > inv.order) throw AutError("element order exceeds the group order");
    }
    ++inv.element_orders[n];
  }
  if (elements_out) *elements_out = std::move(elems);
  return inv;
}

GroupInvariants identify_group(const SurfaceEquation& F, const std::vector<Substitution>& gens,
                               int budget = kClosureBudget);

// ---------------------------------------------------------------- data files

struct SubstitutionDef {
  std::string name;
  std::string t = "t", x = "x", y = "y";
  // Families: each variable ranges over the roots of its polynomial in z,
  // later polynomials may use earlier variables.
  std::vector<std::pair<std::string, std::string>> vary;
};

struct AutSpec {
  std::string name;
  std::string source;
  std::string equation;
  int field_degree = 12;
  std::vector<ConstantDef> constants;
  std::vector<std::string> nonzero;
  std::vector<SubstitutionDef> substitutions;
  std::string expected_group;
  std::map<std::string, int> expected_orders;  // generator name -> order
  int expected_family_size = -1;               // total generators after expanding families
  std::string stated_group;                     // the full group when only a subgroup is realized
};

AutSpec parse_aut_spec(const std::string& json_text, const std::string& source = "");
AutSpec load_aut_spec(const std::string& path);

struct AutRun {
  std::uint64_t seed = 0;
  std::map<std::string, Elem> constants;
  std::vector<CheckResult> checks;
  GroupInvariants group;
  std::string group_name;
};

// One specialization drawn from `seed`.
AutRun run_aut_spec(const AutSpec& spec, std::uint64_t seed);

}  // namespace enriques
