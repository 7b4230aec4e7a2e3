#include <random>
#include <set>

#include "doctest.h"
#include "enriques/algebra.hpp"
#include "enriques/specialize.hpp"

using namespace enriques;

namespace {

// Oracle: schoolbook carry-less product followed by long division.
Elem reference_mul(Elem a, Elem b, int k, std::uint64_t mod) {
  unsigned __int128 p = 0;
  for (int i = 0; i < k; ++i)
    if ((b >> i) & 1) p ^= static_cast<unsigned __int128>(a) << i;
  for (int d = 2 * k - 2; d >= k; --d)
    if ((p >> d) & 1) p ^= static_cast<unsigned __int128>(mod) << (d - k);
  return static_cast<Elem>(p);
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("field multiplication matches the schoolbook oracle exhaustively") {
    for (int k = 1; k <= 7; ++k) {
      const FiniteField& f = *gf(k);
      for (Elem a = 0; a < f.size(); ++a)
        for (Elem b = 0; b < f.size(); ++b) REQUIRE(f.mul(a, b) == reference_mul(a, b, k, f.modulus()));
    }
  }

  TEST_CASE("shipped moduli are irreducible") {
    for (int k = 1; k <= 32; ++k) CHECK(FiniteField::is_irreducible(k, FiniteField::shipped_modulus(k)));
    CHECK_FALSE(FiniteField::is_irreducible(2, 0b101));  // z^2 + 1 = (z + 1)^2
    CHECK_THROWS_AS(FiniteField(4, 0b10001), AlgebraError);
  }

  TEST_CASE("field_sqrt: exhaustive oracle for k <= 12") {
    for (int k = 1; k <= 12; ++k) {
      const FiniteField& f = *gf(k);
      std::set<Elem> seen;
      for (Elem a = 0; a < f.size(); ++a) {
        const Elem r = f.sqrt(a);
        REQUIRE(f.square(r) == a);
        seen.insert(r);
      }
      CHECK(seen.size() == f.size());  // Frobenius is a bijection
    }
  }

  TEST_CASE("inverses: exhaustive for k <= 10") {
    for (int k = 1; k <= 10; ++k) {
      const FiniteField& f = *gf(k);
      for (Elem a = 1; a < f.size(); ++a) REQUIRE(f.mul(a, f.inv(a)) == 1);
      CHECK_THROWS_AS(f.inv(0), AlgebraError);
    }
  }

  TEST_CASE("root_of_unity: exact order against brute-force powers") {
    for (int k = 1; k <= 12; ++k) {
      const FiniteField& f = *gf(k);
      const std::uint64_t q = f.size() - 1;
      for (std::uint64_t n = 1; n <= q; ++n) {
        if (q % n) {
          if (n % 2) CHECK_THROWS_AS(f.root_of_unity(n), AlgebraError);
          continue;
        }
        const Elem z = f.root_of_unity(n);
        std::uint64_t ord = 1;
        for (Elem p = z; p != 1; p = f.mul(p, z)) ++ord;
        REQUIRE(ord == n);
      }
    }
    CHECK(min_extension_for_root(11) == 10);
    CHECK(min_extension_for_root(7) == 3);
    CHECK(min_extension_for_root(5) == 4);
  }

  TEST_CASE("root search agrees with exhaustive evaluation") {
    const FiniteField& f = *gf(6);
    std::mt19937_64 rng(3);
    for (int trial = 0; trial < 50; ++trial) {
      std::vector<Elem> c(1 + trial % 5);
      for (auto& e : c) e = f.random_element(rng);
      c.back() = f.random_nonzero(rng);
      std::vector<Elem> want;
      for (Elem x = 0; x < f.size(); ++x) {
        Elem v = 0;
        for (std::size_t i = c.size(); i-- > 0;) v = f.add(f.mul(v, x), c[i]);
        if (v == 0) want.push_back(x);
      }
      auto got = f.roots(c);
      std::sort(got.begin(), got.end());
      CHECK(got == want);
    }
  }

  TEST_CASE("polynomial ring identities in characteristic 2") {
    auto r = make_ring({"x", "y", "t"});
    const MultiPoly x = MultiPoly::variable(r, "x"), y = MultiPoly::variable(r, "y"), t = MultiPoly::variable(r, "t");
    CHECK((x + y).square() == x.square() + y.square());
    CHECK((x + y).pow(4) == x.pow(4) + y.pow(4));
    CHECK((x + x).is_zero());
    CHECK((x * y + t).derivative(0) == y);
    CHECK(x.square().derivative(0).is_zero());
    CHECK(parse_poly("(x + y)^3", r) == x.pow(3) + x.square() * y + x * y.square() + y.pow(3));
    CHECK(parse_poly("x*y + 3*t", r) == x * y + t);
    const MultiPoly f = parse_poly("y^2 + t*y + x^3", r);
    CHECK(f.reduce_monic(1, f).is_zero());
    CHECK(parse_poly("y^3", r).reduce_monic(1, f) == parse_poly("(t^2 + x^3)*y + t*x^3", r));
  }

  TEST_CASE("rational functions") {
    auto r = make_ring({"a", "b"});
    const RationalFunction q = parse_rational("a/(a + 1)", r);
    CHECK(q.equals(parse_rational("1 + 1/(a + 1)", r)));
    CHECK((q * q.inverse()).equals(RationalFunction(one(r))));
    CHECK(q.derivative(0).equals(parse_rational("1/(a^2 + 1)", r)));
    CHECK_THROWS_AS(parse_rational("1/(a + a)", r), ParseError);
    const Bindings b{{"c", parse_rational("a + b", r)}};
    CHECK(parse_rational("c^2", r, b).equals(parse_rational("a^2 + b^2", r)));
  }

  TEST_CASE("substitution is a ring homomorphism") {
    auto r = make_ring({"x", "y"});
    const MultiPoly f = parse_poly("x^3 + x*y + 1", r), g = parse_poly("y^2 + x", r);
    const std::map<int, RationalFunction> s{{0, parse_rational("y/(x + 1)", r)}, {1, parse_rational("x^2", r)}};
    CHECK((f * g).substitute(s).equals(f.substitute(s) * g.substitute(s)));
    CHECK((f + g).substitute(s).equals(f.substitute(s) + g.substitute(s)));
  }

  TEST_CASE("randomized identity test") {
    auto r = make_ring({"x", "y"});
    CHECK(is_zero_identity(parse_poly("(x + y)^2 + x^2 + y^2", r), 20, 16, 1));
    CHECK_FALSE(is_zero_identity(parse_poly("x*y + 1", r), 20, 16, 1));
  }

  TEST_CASE("specialization draws reproducibly and respects constraints") {
    const std::vector<ConstantDef> defs{{"zeta", ConstantKind::RootOfUnity, 5, ""},
                                        {"a", ConstantKind::Param, 0, ""},
                                        {"w", ConstantKind::RootOf, 0, "z^2 + z + a"},
                                        {"b", ConstantKind::Expr, 0, "a/(a + 1)"}};
    std::mt19937_64 r1(42), r2(42);
    const Specialization s1 = specialize(defs, 12, r1, {"a", "a + 1"});
    const Specialization s2 = specialize(defs, 12, r2, {"a", "a + 1"});
    CHECK(s1.values == s2.values);
    const FiniteField& f = *s1.field;
    CHECK(f.order_of(s1.values.at("zeta")) == 5);
    const Elem a = s1.values.at("a"), w = s1.values.at("w");
    CHECK(a != 0);
    CHECK(f.add(f.add(f.square(w), w), a) == 0);
    CHECK(f.mul(s1.values.at("b"), f.add(a, 1)) == a);
  }
}
