#include "enriques/autlab.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace enriques {

using json = nlohmann::json;

namespace {

constexpr int kT = 0, kX = 1, kY = 2;

bool involves(const RationalFunction& f, int v) { return f.num().has_variable(v) || f.den().has_variable(v); }

std::map<int, RationalFunction> images_of(const Substitution& s) { return {{kT, s.t}, {kX, s.x}, {kY, s.y}}; }

}  // namespace

// ---------------------------------------------------------------- surfaces and maps

SurfaceEquation SurfaceEquation::from(MultiPoly poly) {
  const RingPtr& r = poly.ring();
  if (!r || r->names != std::vector<std::string>{"t", "x", "y"})
    throw AutError("surface equations live in the ring with variables t, x, y");
  const auto cs = poly.coefficients_in(kY);
  if (cs.size() != 3 || cs[2] != one(r)) throw AutError("surface equation must be monic of degree 2 in y");
  SurfaceEquation F;
  F.poly = std::move(poly);
  return F;
}

bool SurfaceEquation::vanishes(const RationalFunction& f) const {
  return f.num().reduce_monic(y, poly).is_zero();
}

Substitution Substitution::identity(const RingPtr& ring) {
  return {RationalFunction(MultiPoly::variable(ring, kT)), RationalFunction(MultiPoly::variable(ring, kX)),
          RationalFunction(MultiPoly::variable(ring, kY))};
}

std::string Substitution::to_string() const {
  return "t -> " + t.to_string() + ", x -> " + x.to_string() + ", y -> " + y.to_string();
}

void check_normal_shape(const SurfaceEquation&, const Substitution& s) {
  if (!involves(s.t, kT) || involves(s.t, kX) || involves(s.t, kY))
    throw AutError("image of t must be a function of t alone");
  if (!involves(s.x, kX)) throw AutError("image of x does not involve x (d1 = 0)");
  if (involves(s.x, kY)) throw AutError("image of x must not involve y");
  if (!involves(s.y, kY)) throw AutError("image of y does not involve y (e1 = 0)");
}

bool verify_automorphism(const SurfaceEquation& F, const Substitution& s) {
  check_normal_shape(F, s);
  return F.vanishes(F.poly.substitute(images_of(s)));
}

Substitution compose(const Substitution& s1, const Substitution& s2) {
  const auto im = images_of(s2);
  return {s1.t.substitute(im), s1.x.substitute(im), s1.y.substitute(im)};
}

Substitution inverse(const Substitution& s) {
  const RingPtr& ring = s.t.ring();
  std::map<int, RationalFunction> prev;
  Substitution out = Substitution::identity(ring);
  for (int v : {kT, kX, kY}) {
    const RationalFunction& img = s.at(v);
    const auto n = img.num().coefficients_in(v);
    const auto d = img.den().coefficients_in(v);
    if (n.size() > 2 || d.size() > 2) throw AutError("inverse needs images of degree at most 1 in their variable");
    auto coef = [&](const std::vector<MultiPoly>& c, std::size_t i) {
      const MultiPoly p = i < c.size() ? c[i] : MultiPoly(ring);
      return prev.empty() ? RationalFunction(p) : p.substitute(prev);
    };
    const RationalFunction A = coef(n, 1), B = coef(n, 0), C = coef(d, 1), D = coef(d, 0);
    const RationalFunction w(MultiPoly::variable(ring, v));
    RationalFunction inv = (B + D * w) / (C * w + A);
    (v == kT ? out.t : v == kX ? out.x : out.y) = inv;
    prev[v] = inv;
  }
  return out;
}

bool same_map(const SurfaceEquation& F, const Substitution& a, const Substitution& b) {
  return F.vanishes(a.t - b.t) && F.vanishes(a.x - b.x) && F.vanishes(a.y - b.y);
}

int element_order(const SurfaceEquation& F, const Substitution& s, int max) {
  const Substitution id = Substitution::identity(F.ring());
  Substitution p = s;
  for (int n = 1; n <= max; ++n) {
    if (same_map(F, p, id)) return n;
    p = compose(p, s);
  }
  throw AutError("element order exceeds " + std::to_string(max));
}

// ---------------------------------------------------------------- groups

std::string format_invariants(const GroupInvariants& g) {
  std::ostringstream os;
  os << "order " << g.order << ", " << (g.abelian ? "abelian" : "non-abelian") << ", element orders {";
  bool first = true;
  for (const auto& [o, c] : g.element_orders) {
    os << (first ? "" : ", ") << o << ":" << c;
    first = false;
  }
  os << "}";
  return os.str();
}

const std::vector<std::pair<std::string, GroupInvariants>>& group_catalog() {
  static const std::vector<std::pair<std::string, GroupInvariants>> cat = {
      {"1", {1, true, {{1, 1}}}},
      {"Z/2", {2, true, {{1, 1}, {2, 1}}}},
      {"(Z/2)^2", {4, true, {{1, 1}, {2, 3}}}},
      {"(Z/2)^3", {8, true, {{1, 1}, {2, 7}}}},
      {"Z/5", {5, true, {{1, 1}, {5, 4}}}},
      {"Z/7", {7, true, {{1, 1}, {7, 6}}}},
      {"Z/10", {10, true, {{1, 1}, {2, 1}, {5, 4}, {10, 4}}}},
      {"Z/11", {11, true, {{1, 1}, {11, 10}}}},
      {"Z/14", {14, true, {{1, 1}, {2, 1}, {7, 6}, {14, 6}}}},
      {"S3", {6, false, {{1, 1}, {2, 3}, {3, 2}}}},
      {"S4", {24, false, {{1, 1}, {2, 9}, {3, 8}, {4, 6}}}},
      {"S5", {120, false, {{1, 1}, {2, 25}, {3, 20}, {4, 30}, {5, 24}, {6, 20}}}},
      {"Q8", {8, false, {{1, 1}, {2, 1}, {4, 6}}}},
      {"Z/5xS3", {30, false, {{1, 1}, {2, 3}, {3, 2}, {5, 4}, {10, 12}, {15, 8}}}},
  };
  return cat;
}

std::string identify_invariants(const GroupInvariants& g) {
  for (const auto& [name, inv] : group_catalog())
    if (inv == g) return name;
  return "";
}

GroupInvariants identify_group(const SurfaceEquation& F, const std::vector<Substitution>& gens, int budget) {
  for (const auto& g : gens) check_normal_shape(F, g);
  const std::function<Substitution(const Substitution&, const Substitution&)> mul = compose;
  const std::function<bool(const Substitution&, const Substitution&)> eq =
      [&F](const Substitution& a, const Substitution& b) { return same_map(F, a, b); };
  return group_closure<Substitution>(gens, Substitution::identity(F.ring()), mul, eq, budget);
}

// ---------------------------------------------------------------- data files

AutSpec parse_aut_spec(const std::string& json_text, const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw AutError(std::string("malformed automorphism spec: ") + e.what());
  }
  try {
    if (j.value("version", 0) != 1) throw AutError("unsupported automorphism spec version");
    AutSpec s;
    s.name = j.at("name").get<std::string>();
    s.source = source;
    s.equation = j.at("equation").get<std::string>();
    s.field_degree = j.value("field_degree", 12);
    for (const auto& c : j.value("constants", json::array())) {
      ConstantDef d;
      d.name = c.at("name").get<std::string>();
      const std::string kind = c.at("kind").get<std::string>();
      if (kind == "param") {
        d.kind = ConstantKind::Param;
      } else if (kind == "root_of_unity") {
        d.kind = ConstantKind::RootOfUnity;
        d.order = c.at("order").get<std::uint64_t>();
      } else if (kind == "root_of") {
        d.kind = ConstantKind::RootOf;
        d.text = c.at("poly").get<std::string>();
      } else if (kind == "expr") {
        d.kind = ConstantKind::Expr;
        d.text = c.at("expr").get<std::string>();
      } else {
        throw AutError("unknown constant kind '" + kind + "'");
      }
      s.constants.push_back(d);
    }
    s.nonzero = j.value("nonzero", std::vector<std::string>{});
    for (const auto& e : j.value("substitutions", json::array())) {
      SubstitutionDef d;
      d.name = e.at("name").get<std::string>();
      d.t = e.value("t", std::string("t"));
      d.x = e.value("x", std::string("x"));
      d.y = e.value("y", std::string("y"));
      for (const auto& v : e.value("vary", json::array())) d.vary.emplace_back(v.at(0).get<std::string>(), v.at(1).get<std::string>());
      s.substitutions.push_back(d);
    }
    s.expected_group = j.at("expected_group").get<std::string>();
    s.expected_orders = j.value("expected_orders", std::map<std::string, int>{});
    s.expected_family_size = j.value("expected_generator_count", -1);
    s.stated_group = j.value("stated_group", std::string());
    return s;
  } catch (const json::exception& e) {
    throw AutError(std::string("automorphism spec: ") + e.what());
  }
}

AutSpec load_aut_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw AutError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_aut_spec(ss.str(), path);
}

namespace {

struct Generator {
  std::string family;
  std::string label;
  Substitution map;
};

// Expands every family over the roots of its polynomials; returns false when
// some polynomial does not split into distinct roots in the field.
bool expand(const SubstitutionDef& d, std::size_t level, Specialization& spec, const RingPtr& ring,
            const std::string& label, std::vector<Generator>& out) {
  if (level == d.vary.size()) {
    const Bindings b = spec.bindings(ring);
    out.push_back({d.name, d.name + label,
                   {parse_rational(d.t, ring, b), parse_rational(d.x, ring, b), parse_rational(d.y, ring, b)}});
    return true;
  }
  const auto& [var, poly] = d.vary[level];
  const auto roots = roots_in_field(poly, spec);
  const MultiPoly p = parse_poly(poly, constant_ring(spec.field), spec.bindings(constant_ring(spec.field)));
  if (static_cast<int>(roots.size()) != p.degree_in(0)) return false;
  for (std::size_t i = 0; i < roots.size(); ++i) {
    spec.values[var] = roots[i];
    const std::string next = label + (label.empty() ? "[" : ",") + var + "#" + std::to_string(i);
    if (!expand(d, level + 1, spec, ring, level + 1 == d.vary.size() ? next + "]" : next, out)) return false;
  }
  spec.values.erase(var);
  return true;
}

}  // namespace

AutRun run_aut_spec(const AutSpec& spec, std::uint64_t seed) {
  AutRun run;
  run.seed = seed;
  std::mt19937_64 rng(seed);
  Specialization sp;
  std::vector<Generator> gens;
  RingPtr ring;
  bool found = false;
  for (int attempt = 0; attempt < 400 && !found; ++attempt) {
    sp = specialize(spec.constants, spec.field_degree, rng, spec.nonzero);
    ring = make_ring({"t", "x", "y"}, sp.field);
    gens.clear();
    found = true;
    for (const auto& d : spec.substitutions)
      if (!expand(d, 0, sp, ring, "", gens)) {
        found = false;
        break;
      }
  }
  if (!found) throw AutError("no specialization splits the auxiliary polynomials of " + spec.name);
  run.constants = sp.values;

  const SurfaceEquation F = SurfaceEquation::from(parse_poly(spec.equation, ring, sp.bindings(ring)));
  std::vector<Substitution> maps;
  bool all_verified = true;
  for (const auto& g : gens) {
    CheckResult r{"automorphism " + g.label, false, ""};
    try {
      r.pass = verify_automorphism(F, g.map);
      r.detail = r.pass ? "preserves the surface" : "does not preserve the surface";
    } catch (const AutError& e) {
      r.detail = e.what();
    }
    all_verified = all_verified && r.pass;
    run.checks.push_back(r);
    maps.push_back(g.map);
  }
  if (spec.expected_family_size >= 0) {
    const bool ok = static_cast<int>(gens.size()) == spec.expected_family_size;
    run.checks.push_back({"generator count", ok,
                          std::to_string(gens.size()) + " (expected " + std::to_string(spec.expected_family_size) + ")"});
  }
  for (const auto& [name, want] : spec.expected_orders) {
    bool seen = false;
    for (const auto& g : gens) {
      if (g.family != name) continue;
      seen = true;
      CheckResult r{"order " + g.label, false, ""};
      try {
        const int n = element_order(F, g.map, kClosureBudget);
        r.pass = n == want;
        r.detail = std::to_string(n) + " (expected " + std::to_string(want) + ")";
      } catch (const AutError& e) {
        r.detail = e.what();
      }
      run.checks.push_back(r);
    }
    if (!seen) run.checks.push_back({"order " + name, false, "no generator named " + name});
  }
  CheckResult g{"group", false, ""};
  if (!all_verified) {
    g.detail = "skipped: some generator is not an automorphism";
  } else {
    try {
      run.group = identify_group(F, maps);
      run.group_name = identify_invariants(run.group);
      g.pass = run.group_name == spec.expected_group;
      g.detail = (run.group_name.empty() ? "outside the catalog" : run.group_name) + " (" +
                 format_invariants(run.group) + "), expected " + spec.expected_group;
      if (!spec.stated_group.empty()) g.detail += "; full group stated as " + spec.stated_group;
    } catch (const AutError& e) {
      g.detail = e.what();
    }
  }
  run.checks.push_back(g);
  return run;
}

}  // namespace enriques
