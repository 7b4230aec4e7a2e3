#include <cmath>
#include <random>

#include "doctest.h"
#include "enriques/lattice.hpp"

using namespace enriques;

namespace {

// Oracle: eigenvalues by cyclic Jacobi rotations in long double. Adequate for
// small integer matrices whose nonzero eigenvalues are far from 0.
Inertia jacobi_inertia(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<std::vector<long double>> a(n, std::vector<long double>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i][j] = static_cast<long double>(m[i][j]);
  for (int sweep = 0; sweep < 100; ++sweep) {
    long double off = 0;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) off += a[p][q] * a[p][q];
    if (off < 1e-24L) break;
    for (std::size_t p = 0; p < n; ++p)
      for (std::size_t q = p + 1; q < n; ++q) {
        if (std::fabs(a[p][q]) < 1e-30L) continue;
        const long double theta = (a[q][q] - a[p][p]) / (2 * a[p][q]);
        const long double t = (theta >= 0 ? 1 : -1) / (std::fabs(theta) + std::sqrt(theta * theta + 1));
        const long double c = 1 / std::sqrt(t * t + 1), s = t * c;
        for (std::size_t k = 0; k < n; ++k) {
          const long double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const long double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  Inertia in;
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i][i] > 1e-6L) ++in.positive;
    else if (a[i][i] < -1e-6L) ++in.negative;
    else ++in.zero;
  }
  return in;
}

}  // namespace

TEST_SUITE("lattice") {
  TEST_CASE("unimodular lattice has signature (1,9) and determinant -1") {
    const IntMatrix& g = unimodular_gram();
    CHECK(signature(g) == Inertia{1, 9, 0});
    CHECK(determinant(g) == -1);
    for (std::size_t i = 0; i < g.size(); ++i) CHECK(g[i][i] % 2 == 0);
  }

  TEST_CASE("E8 roots") {
    CHECK(pairing(e8_highest_root(), e8_highest_root()) == -2);
    for (int i = 1; i <= 8; ++i) {
      CHECK(pairing(e8_simple_root(i), e8_simple_root(i)) == -2);
      // the highest root meets only a8 (negative definite sign)
      CHECK(pairing(e8_highest_root(), e8_simple_root(i)) == (i == 8 ? -1 : 0));
    }
  }

  TEST_CASE("reflections are involutive isometries") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long long> d(-3, 3);
    const LatticeVector delta = e8_highest_root();
    for (int trial = 0; trial < 50; ++trial) {
      LatticeVector x{}, y{};
      for (auto& c : x) c = d(rng);
      for (auto& c : y) c = d(rng);
      CHECK(pairing(reflect(delta, x), reflect(delta, y)) == pairing(x, y));
      CHECK(reflect(delta, reflect(delta, x)) == x);
    }
    CHECK(reflect(delta, delta) == -1 * delta);
  }

  TEST_CASE("affine E8 embeds with the isotropic fiber class") {
    // a1..a8 together with f - highest root form the extended diagram
    std::vector<LatticeVector> v;
    for (int i = 1; i <= 8; ++i) v.push_back(e8_simple_root(i));
    v.push_back(basis_vector(1) - e8_highest_root());
    IntMatrix target(9, std::vector<long long>(9, 0));
    auto link = [&](int i, int j) { target[i][j] = target[j][i] = 1; };
    link(0, 2), link(2, 3), link(1, 3), link(3, 4), link(4, 5), link(5, 6), link(6, 7), link(7, 8);
    for (int i = 0; i < 9; ++i) target[i][i] = -2;
    CHECK(verify_embedding(target, v));
    target[0][8] = target[8][0] = 1;
    CHECK_FALSE(verify_embedding(target, v));
  }

  TEST_CASE("inertia matches the eigenvalue oracle on random small matrices") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long long> d(-2, 2);
    for (int trial = 0; trial < 400; ++trial) {
      const std::size_t n = 1 + trial % 6;
      IntMatrix m(n, std::vector<long long>(n));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m[i][j] = m[j][i] = d(rng);
      // force rank deficiency sometimes: duplicate a row and column
      if (trial % 5 == 0 && n > 1) {
        for (std::size_t j = 0; j < n; ++j) m[n - 1][j] = m[0][j];
        for (std::size_t i = 0; i < n; ++i) m[i][n - 1] = m[i][0];
      }
      const Inertia got = signature(m);
      CAPTURE(trial);
      CHECK(got == jacobi_inertia(m));
      CHECK(rational_rank(m) == got.positive + got.negative);
    }
  }

  TEST_CASE("inertia with zero diagonal uses a congruence") {
    CHECK(signature({{0, 1}, {1, 0}}) == Inertia{1, 1, 0});
    CHECK(signature({{0, 0}, {0, 0}}) == Inertia{0, 0, 2});
    CHECK(determinant({{0, 1}, {1, 0}}) == -1);
  }

  TEST_CASE("affine and finite ADE Gram matrices") {
    auto chain = [](int n, bool cycle) {
      IntMatrix m(n, std::vector<long long>(n, 0));
      for (int i = 0; i < n; ++i) m[i][i] = -2;
      for (int i = 0; i + 1 < n; ++i) m[i][i + 1] = m[i + 1][i] = 1;
      if (cycle) m[0][n - 1] = m[n - 1][0] = 1;
      return m;
    };
    CHECK(signature(chain(8, false)) == Inertia{0, 8, 0});
    CHECK(signature(chain(9, true)) == Inertia{0, 8, 1});
    CHECK(determinant(chain(4, false)) == 5);
  }
}
