#pragma once

// Exact arithmetic in characteristic 2: GF(2^k), sparse multivariate
// polynomials over a fixed ring of named variables, rational functions,
// and a small expression parser for data files.

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

namespace enriques {

using Elem = std::uint64_t;

struct AlgebraError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class FiniteField {
 public:
  explicit FiniteField(int k);
  FiniteField(int k, std::uint64_t modulus);

  int degree() const { return k_; }
  std::uint64_t modulus() const { return mod_; }
  std::uint64_t size() const { return std::uint64_t{1} << k_; }
  bool contains(Elem a) const { return a < size(); }

  Elem add(Elem a, Elem b) const { return a ^ b; }
  Elem mul(Elem a, Elem b) const;
  Elem square(Elem a) const { return mul(a, a); }
  Elem pow(Elem a, std::uint64_t e) const;
  Elem inv(Elem a) const;
  // Frobenius is bijective, so a^(2^(k-1)) is the unique square root.
  Elem sqrt(Elem a) const;
  Elem generator() const;
  std::uint64_t order_of(Elem a) const;
  Elem root_of_unity(std::uint64_t n) const;
  Elem random_element(std::mt19937_64& rng) const { return rng() & (size() - 1); }
  Elem random_nonzero(std::mt19937_64& rng) const;

  // Roots in this field of a univariate polynomial, coefficients low to high.
  std::vector<Elem> roots(const std::vector<Elem>& coeffs) const;

  static std::uint64_t shipped_modulus(int k);
  static bool is_irreducible(int k, std::uint64_t poly);

 private:
  int k_;
  std::uint64_t mod_;
  mutable Elem gen_ = 0;
};

using FieldPtr = std::shared_ptr<const FiniteField>;

// Cached field with the shipped modulus; k in [1, 32].
FieldPtr gf(int k);
// Smallest k with n | 2^k - 1 (n odd).
int min_extension_for_root(std::uint64_t n);
std::vector<std::uint64_t> prime_factors(std::uint64_t n);

constexpr int kMaxVars = 14;
using Exps = std::array<std::uint16_t, kMaxVars>;

struct Ring {
  std::vector<std::string> names;
  FieldPtr field;
  int index(const std::string& name) const;
  int require(const std::string& name) const;
  int size() const { return static_cast<int>(names.size()); }
};
using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<std::string> names, FieldPtr field = nullptr);

// Graded lexicographic order; earlier variables rank higher.
struct GrlexLess {
  bool operator()(const Exps& a, const Exps& b) const;
};

class RationalFunction;

class MultiPoly {
 public:
  using Terms = std::map<Exps, Elem, GrlexLess>;

  MultiPoly() = default;
  explicit MultiPoly(RingPtr ring) : ring_(std::move(ring)) {}

  static MultiPoly constant(const RingPtr& ring, Elem c);
  static MultiPoly variable(const RingPtr& ring, int v, unsigned e = 1);
  static MultiPoly variable(const RingPtr& ring, const std::string& name, unsigned e = 1);
  static MultiPoly monomial(const RingPtr& ring, const Exps& e, Elem c);

  const RingPtr& ring() const { return ring_; }
  const Terms& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Elem constant_value() const;  // requires is_constant
  int degree_in(int v) const;
  int total_degree() const;
  bool has_variable(int v) const { return degree_in(v) > 0; }

  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const { return *this + o; }
  MultiPoly operator*(const MultiPoly& o) const;
  MultiPoly& operator+=(const MultiPoly& o);
  MultiPoly& operator*=(const MultiPoly& o) { return *this = *this * o; }
  bool operator==(const MultiPoly& o) const;
  bool operator!=(const MultiPoly& o) const { return !(*this == o); }

  MultiPoly scaled(Elem c) const;
  MultiPoly square() const;
  MultiPoly pow(unsigned e) const;
  MultiPoly derivative(int v) const;

  // Coefficients of v^0, v^1, ... as polynomials without v.
  std::vector<MultiPoly> coefficients_in(int v) const;
  // Remainder of division by f, which must be monic of positive degree in v.
  MultiPoly reduce_monic(int v, const MultiPoly& f) const;

  Exps min_exponents() const;
  MultiPoly divide_monomial(const Exps& e) const;

  MultiPoly specialize(const std::map<int, Elem>& values) const;
  MultiPoly substitute_poly(const std::map<int, MultiPoly>& images) const;
  RationalFunction substitute(const std::map<int, RationalFunction>& images) const;
  // Re-express in another ring by variable name. Coefficients outside GF(2)
  // require both rings to share the same field.
  MultiPoly rebase(const RingPtr& target) const;
  Elem evaluate(const std::vector<Elem>& point) const;

  std::string to_string() const;

 private:
  void adopt(const MultiPoly& o);
  const FiniteField& field() const;

  RingPtr ring_;
  Terms terms_;
};

// num/den with den != 0. Equality is by cross multiplication; only monomial
// content and constant denominators are normalized away.
class RationalFunction {
 public:
  RationalFunction();
  RationalFunction(MultiPoly num);  // NOLINT: polynomials embed implicitly
  RationalFunction(MultiPoly num, MultiPoly den);

  const MultiPoly& num() const { return num_; }
  const MultiPoly& den() const { return den_; }
  const RingPtr& ring() const { return num_.ring() ? num_.ring() : den_.ring(); }

  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.is_constant(); }
  bool is_constant() const { return num_.is_constant() && den_.is_constant(); }
  Elem constant_value() const;

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const { return *this + o; }
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction inverse() const;
  RationalFunction pow(int e) const;
  RationalFunction derivative(int v) const;

  bool equals(const RationalFunction& o) const;

  RationalFunction substitute(const std::map<int, RationalFunction>& images) const;
  RationalFunction specialize(const std::map<int, Elem>& values) const;
  RationalFunction rebase(const RingPtr& target) const;

  std::string to_string() const;

 private:
  void normalize();
  MultiPoly num_;
  MultiPoly den_;
};

MultiPoly one(const RingPtr& ring);

// Named values substituted while parsing (parameters fixed to constants,
// symbolic definitions such as b = a/(a+1), derived constants).
using Bindings = std::map<std::string, RationalFunction>;

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Grammar: sums and products of factors, '^' with a nonnegative integer
// exponent (negative allowed on rational input), '/', parentheses, integer
// literals read mod 2, field literals [0x..], and sqrt(...) of a constant.
RationalFunction parse_rational(const std::string& text, const RingPtr& ring,
                                const Bindings& bindings = {});
MultiPoly parse_poly(const std::string& text, const RingPtr& ring,
                     const Bindings& bindings = {});

// Structural zero test (empty term map).
bool is_zero_identity(const MultiPoly& p);
// Randomized identity test over GF(2^k): `trials` independent uniform points.
// A nonzero p of total degree d survives one trial with probability <= d/2^k.
bool is_zero_identity(const MultiPoly& p, int trials, int k, std::uint64_t seed);

}  // namespace enriques
