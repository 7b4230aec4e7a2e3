#include "enriques/derivation.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace enriques {

using json = nlohmann::json;

// ---------------------------------------------------------------- vector fields

RationalFunction VectorField::image(int v) const {
  auto it = coeffs.find(v);
  if (it != coeffs.end()) return prefactor * it->second;
  if (v == dependent) {
    // Differentiating relation(vars, y) = 0 along D.
    RationalFunction num{MultiPoly(ring)};
    for (int w : vars) {
      const MultiPoly fw = relation.derivative(w);
      if (!fw.is_zero()) num = num + RationalFunction(fw) * image(w);
    }
    const MultiPoly fy = relation.derivative(dependent);
    if (fy.is_zero()) throw DerivationError("surface relation is inseparable in the dependent variable");
    return num / RationalFunction(fy);
  }
  return RationalFunction(MultiPoly(ring));
}

RationalFunction VectorField::apply(const RationalFunction& f) const {
  RationalFunction out{MultiPoly(ring)};
  auto add = [&](int v) {
    const RationalFunction dv = f.derivative(v);
    if (!dv.is_zero()) out = out + dv * image(v);
  };
  for (int v : vars) add(v);
  if (dependent >= 0) add(dependent);
  return out;
}

bool VectorField::vanishes(const RationalFunction& f) const {
  if (dependent < 0) return f.num().is_zero();
  return f.num().reduce_monic(dependent, relation).is_zero();
}

std::string PClosedType::describe() const {
  switch (kind) {
    case PClosedKind::Additive:
      return "additive (D^2 = 0)";
    case PClosedKind::Multiplicative:
      return "D^2 = c D with c = " + c->to_string();
    case PClosedKind::NotPClosed:
      return "not p-closed";
  }
  return "";
}

PClosedType p_closed_type(const VectorField& d) {
  std::vector<RationalFunction> d1, d2;
  int pivot = -1;
  for (std::size_t i = 0; i < d.vars.size(); ++i) {
    d1.push_back(d.image(d.vars[i]));
    if (pivot < 0 && !d.vanishes(d1.back())) pivot = static_cast<int>(i);
  }
  if (pivot < 0) throw DerivationError("degenerate vector field: D vanishes on every variable");
  bool additive = true;
  for (const auto& f : d1) {
    d2.push_back(d.apply(f));
    if (!d.vanishes(d2.back())) additive = false;
  }
  PClosedType out;
  if (additive) {
    out.kind = PClosedKind::Additive;
    return out;
  }
  for (std::size_t i = 0; i < d1.size(); ++i)
    if (!d.vanishes(d2[i] * d1[pivot] - d2[pivot] * d1[i])) return out;
  out.kind = PClosedKind::Multiplicative;
  out.c = d2[pivot] / d1[pivot];
  return out;
}

bool verify_invariant(const VectorField& d, const RationalFunction& f) { return d.vanishes(d.apply(f)); }

bool verify_relation(const std::map<int, RationalFunction>& substitutions, const MultiPoly& relation,
                     const std::vector<int>& parameters, const VectorField* surface) {
  const RingPtr& ring = relation.ring();
  for (int v = 0; v < ring->size(); ++v) {
    if (!relation.has_variable(v)) continue;
    const bool param = std::find(parameters.begin(), parameters.end(), v) != parameters.end();
    if (!param && !substitutions.count(v))
      throw DerivationError("relation variable '" + ring->names[v] + "' has no substitution");
  }
  const RationalFunction r = relation.substitute(substitutions);
  return surface ? surface->vanishes(r) : r.num().is_zero();
}

// ---------------------------------------------------------------- bookkeeping

RsDegree rs_deg_isolated(const DivisorBookkeeping& book) {
  RsDegree out;
  if (!book.intersections.empty()) {
    const std::size_t n = book.curves.size();
    if (book.intersections.size() != n || book.D.size() != n || book.K.size() != n)
      throw DerivationError("bookkeeping vectors do not match the curve list");
    for (std::size_t i = 0; i < n; ++i) {
      if (book.intersections[i].size() != n) throw DerivationError("intersection matrix is not square");
      for (std::size_t j = 0; j < n; ++j) {
        if (book.intersections[i][j] != book.intersections[j][i])
          throw DerivationError("intersection matrix is not symmetric");
        out.D2 += book.D[i] * book.intersections[i][j] * book.D[j];
        out.KD += book.K[i] * book.intersections[i][j] * book.D[j];
      }
    }
    if (book.D2 && *book.D2 != out.D2) out.matrix_matches_claims = false;
    if (book.KD && *book.KD != out.KD) out.matrix_matches_claims = false;
  } else {
    if (!book.D2 || !book.KD) throw DerivationError("bookkeeping needs a matrix or both scalar claims");
    out.D2 = *book.D2;
    out.KD = *book.KD;
  }
  out.deg = book.c2 + out.KD + out.D2;
  return out;
}

int quotient_selfint(int C2, bool integral) {
  if (!integral) return 2 * C2;
  if (C2 % 2 != 0) throw DerivationError("integral curve with odd self-intersection " + std::to_string(C2));
  return C2 / 2;
}

// ---------------------------------------------------------------- data files

namespace {

std::vector<std::pair<std::string, std::string>> ordered_pairs(const json& j, const char* what) {
  std::vector<std::pair<std::string, std::string>> out;
  if (j.is_null()) return out;
  if (!j.is_array()) throw DerivationError(std::string(what) + " must be a list of [name, expression] pairs");
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2) throw DerivationError(std::string(what) + " entries are [name, expression]");
    out.emplace_back(e[0].get<std::string>(), e[1].get<std::string>());
  }
  return out;
}

std::vector<int> int_vector(const json& j) { return j.get<std::vector<int>>(); }

}  // namespace

DerivationSpec parse_derivation_spec(const std::string& json_text, const std::string& source) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw DerivationError(std::string("malformed derivation spec: ") + e.what());
  }
  try {
    if (j.value("version", 0) != 1) throw DerivationError("unsupported derivation spec version");
    DerivationSpec s;
    s.name = j.at("name").get<std::string>();
    s.source = source;

    const auto params = j.value("parameters", std::vector<std::string>{});
    const auto vars = j.at("variables").get<std::vector<std::string>>();
    std::string dependent;
    if (j.contains("surface")) dependent = j["surface"].at("dependent").get<std::string>();
    const auto defs = ordered_pairs(j.value("definitions", json()), "definitions");
    const auto invs = ordered_pairs(j.value("invariants", json()), "invariants");
    std::vector<std::pair<std::string, std::string>> subs;
    if (j.contains("relation")) {
      subs = ordered_pairs(j["relation"].value("substitutions", json()), "substitutions");
      if (subs.empty())
        for (const auto& [name, text] : invs) subs.emplace_back(name, name);
    }

    std::vector<std::string> names;
    auto add_name = [&](const std::string& n) {
      if (std::find(names.begin(), names.end(), n) == names.end()) names.push_back(n);
    };
    for (const auto& n : params) add_name(n);
    for (const auto& n : vars) add_name(n);
    if (!dependent.empty()) add_name(dependent);
    for (const auto& [n, _] : subs) add_name(n);
    if (static_cast<int>(names.size()) > kMaxVars) throw DerivationError("too many variables");
    s.ring = make_ring(names);
    for (const auto& n : params) s.parameters.push_back(s.ring->require(n));

    for (const auto& [name, text] : defs) s.definitions[name] = parse_rational(text, s.ring, s.definitions);

    VectorField& f = s.field;
    f.ring = s.ring;
    for (const auto& n : vars) f.vars.push_back(s.ring->require(n));
    if (!dependent.empty()) {
      f.dependent = s.ring->require(dependent);
      f.relation = parse_poly(j["surface"].at("relation").get<std::string>(), s.ring, s.definitions);
      const auto cs = f.relation.coefficients_in(f.dependent);
      if (cs.size() != 3 || cs[2] != one(s.ring))
        throw DerivationError("surface relation must be monic of degree 2 in " + dependent);
    }
    const json& fj = j.at("field");
    f.prefactor = parse_rational(fj.value("prefactor", std::string("1")), s.ring, s.definitions);
    for (const auto& [v, text] : fj.at("coefficients").items()) {
      const int idx = s.ring->require(v);
      if (std::find(f.vars.begin(), f.vars.end(), idx) == f.vars.end())
        throw DerivationError("field coefficient for undeclared variable '" + v + "'");
      f.coeffs[idx] = parse_rational(text.get<std::string>(), s.ring, s.definitions);
    }

    if (j.contains("p_closed")) {
      const json& p = j["p_closed"];
      if (p.is_string()) {
        if (p.get<std::string>() != "additive") throw DerivationError("p_closed is \"additive\" or {\"c\": expr}");
        s.expected_pclosed = "additive";
      } else {
        s.expected_pclosed = p.at("c").get<std::string>();
      }
    }

    Bindings with_invariants = s.definitions;
    for (const auto& [name, text] : invs) {
      s.invariants.emplace_back(name, parse_rational(text, s.ring, s.definitions));
      with_invariants[name] = s.invariants.back().second;
    }
    if (j.contains("relation")) {
      for (const auto& [name, text] : subs)
        s.substitutions[s.ring->require(name)] = parse_rational(text, s.ring, with_invariants);
      s.relation_text = j["relation"].at("equation").get<std::string>();
      // Equations are written "lhs = rhs"; both sides are parsed in the new variables.
      const auto eq = s.relation_text.find('=');
      // Derived parameters may make the relation rational; its numerator is what must vanish.
      const RationalFunction rel = eq == std::string::npos
                                       ? parse_rational(s.relation_text, s.ring, s.definitions)
                                       : parse_rational(s.relation_text.substr(0, eq), s.ring, s.definitions) +
                                             parse_rational(s.relation_text.substr(eq + 1), s.ring, s.definitions);
      s.relation = rel.num();
    }

    if (j.contains("bookkeeping")) {
      const json& b = j["bookkeeping"];
      DivisorBookkeeping book;
      book.c2 = b.at("c2").get<int>();
      if (b.contains("D2")) book.D2 = b["D2"].get<int>();
      if (b.contains("KD")) book.KD = b["KD"].get<int>();
      if (b.contains("curves")) {
        book.curves = b["curves"].get<std::vector<std::string>>();
        const std::size_t n = book.curves.size();
        book.intersections.assign(n, std::vector<int>(n, 0));
        for (std::size_t i = 0; i < n; ++i) book.intersections[i][i] = b.at("selfint").at(i).get<int>();
        for (const auto& e : b.value("intersections", json::array())) {
          auto find = [&](const std::string& c) {
            auto it = std::find(book.curves.begin(), book.curves.end(), c);
            if (it == book.curves.end()) throw DerivationError("unknown curve '" + c + "'");
            return static_cast<std::size_t>(it - book.curves.begin());
          };
          const std::size_t a = find(e.at(0).get<std::string>()), c = find(e.at(1).get<std::string>());
          const int m = e.size() > 2 ? e[2].get<int>() : 1;
          book.intersections[a][c] = book.intersections[c][a] = m;
        }
        book.D = int_vector(b.at("D"));
        book.K = int_vector(b.at("K"));
      }
      s.bookkeeping = book;
    }
    for (const auto& im : j.value("images", json::array())) {
      s.images.push_back({im.at("curve").get<std::string>(), im.at("C2").get<int>(), im.at("integral").get<bool>(),
                          im.at("expected").get<int>()});
    }
    return s;
  } catch (const json::exception& e) {
    throw DerivationError(std::string("derivation spec: ") + e.what());
  } catch (const ParseError& e) {
    throw DerivationError(std::string("derivation spec: ") + e.what());
  }
}

DerivationSpec load_derivation_spec(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DerivationError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_derivation_spec(ss.str(), path);
}

std::vector<CheckResult> verify_derivation_spec(const DerivationSpec& s) {
  std::vector<CheckResult> out;
  const VectorField& f = s.field;

  {
    CheckResult r{"p-closed", false, ""};
    try {
      const PClosedType t = p_closed_type(f);
      r.detail = t.describe();
      if (!s.expected_pclosed) {
        r.pass = t.kind != PClosedKind::NotPClosed;
        r.detail += " (no stated type)";
      } else if (*s.expected_pclosed == "additive") {
        r.pass = t.kind == PClosedKind::Additive;
      } else if (t.kind == PClosedKind::Multiplicative) {
        const RationalFunction want = parse_rational(*s.expected_pclosed, s.ring, s.definitions);
        r.pass = f.equal(*t.c, want);
        r.detail = r.pass ? "D^2 = c D with c = " + *s.expected_pclosed
                          : t.describe() + ", expected c = " + *s.expected_pclosed;
      }
    } catch (const DerivationError& e) {
      r.detail = e.what();
    }
    out.push_back(r);
  }

  for (const auto& [name, g] : s.invariants) {
    const bool ok = verify_invariant(f, g);
    out.push_back({"invariant " + name, ok, ok ? "D(" + name + ") = 0" : "D(" + name + ") is nonzero"});
  }

  if (s.relation) {
    CheckResult r{"relation", false, s.relation_text};
    try {
      r.pass = verify_relation(s.substitutions, *s.relation, s.parameters, f.dependent >= 0 ? &f : nullptr);
    } catch (const DerivationError& e) {
      r.detail = e.what();
    }
    out.push_back(r);
  }

  if (s.bookkeeping) {
    CheckResult r{"bookkeeping", false, ""};
    try {
      const RsDegree d = rs_deg_isolated(*s.bookkeeping);
      std::ostringstream os;
      os << "(D)^2 = " << d.D2 << ", K.(D) = " << d.KD << ", c2 = " << s.bookkeeping->c2 << ", deg<D> = " << d.deg;
      if (!d.matrix_matches_claims) os << " (matrix disagrees with the stated scalars)";
      r.detail = os.str();
      r.pass = d.deg == 0 && d.matrix_matches_claims;
    } catch (const DerivationError& e) {
      r.detail = e.what();
    }
    out.push_back(r);
  }

  for (const auto& im : s.images) {
    CheckResult r{"image " + im.curve, false, ""};
    try {
      const int got = quotient_selfint(im.C2, im.integral);
      r.pass = got == im.expected;
      r.detail = "C^2 = " + std::to_string(im.C2) + (im.integral ? " integral" : " non-integral") + " -> " +
                 std::to_string(got);
    } catch (const DerivationError& e) {
      r.detail = e.what();
    }
    out.push_back(r);
  }
  return out;
}

}  // namespace enriques
