#include "enriques/lattice.hpp"

#include <boost/multiprecision/cpp_int.hpp>
#include <climits>
#include <cstdlib>
#include <numeric>

namespace enriques {

namespace {

using BigRational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

struct Overflow {};

// Rational with 64-bit parts; any overflow aborts to the big-number path.
struct Rat {
  long long n = 0, d = 1;

  static long long mul(long long a, long long b) {
    long long r;
    if (__builtin_mul_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static long long add(long long a, long long b) {
    long long r;
    if (__builtin_add_overflow(a, b, &r)) throw Overflow{};
    return r;
  }
  static Rat make(long long n, long long d) {
    if (d < 0) {
      if (n == LLONG_MIN || d == LLONG_MIN) throw Overflow{};
      n = -n;
      d = -d;
    }
    long long g = std::gcd(n, d);
    if (g > 1) {
      n /= g;
      d /= g;
    }
    return {n, d};
  }
  Rat operator-(const Rat& o) const { return make(add(mul(n, o.d), -mul(o.n, d)), mul(d, o.d)); }
  Rat operator+(const Rat& o) const { return make(add(mul(n, o.d), mul(o.n, d)), mul(d, o.d)); }
  Rat operator*(const Rat& o) const { return make(mul(n, o.n), mul(d, o.d)); }
  Rat operator/(const Rat& o) const { return make(mul(n, o.d), mul(d, o.n)); }
  bool is_zero() const { return n == 0; }
  int sign() const { return (n > 0) - (n < 0); }
  long long denominator() const { return d; }
};

struct Big {
  BigRational v;
  Big operator-(const Big& o) const { return {v - o.v}; }
  Big operator+(const Big& o) const { return {v + o.v}; }
  Big operator*(const Big& o) const { return {v * o.v}; }
  Big operator/(const Big& o) const { return {v / o.v}; }
  bool is_zero() const { return v == 0; }
  int sign() const { return v.sign(); }
  BigInt denominator() const { return boost::multiprecision::denominator(v); }
};

template <class T>
T from_int(long long x);
template <>
Rat from_int<Rat>(long long x) { return {x, 1}; }
template <>
Big from_int<Big>(long long x) { return {BigRational(x)}; }

void check_symmetric(const IntMatrix& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() != g.size()) throw LatticeError("matrix is not square");
    for (std::size_t j = 0; j < i; ++j)
      if (g[i][j] != g[j][i]) throw LatticeError("matrix is not symmetric");
  }
}

template <class T>
Inertia reduce(const IntMatrix& g) {
  const int n = static_cast<int>(g.size());
  std::vector<std::vector<T>> a(n, std::vector<T>(n));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) a[i][j] = from_int<T>(g[i][j]);
  std::vector<bool> active(n, true);
  Inertia out;
  for (int step = 0; step < n; ++step) {
    int piv = -1;
    for (int i = 0; i < n; ++i) {
      if (!active[i] || a[i][i].is_zero()) continue;
      if (piv < 0 || a[i][i].denominator() > a[piv][piv].denominator()) piv = i;
    }
    if (piv < 0) {
      int pi = -1, pj = -1;
      for (int i = 0; i < n && pi < 0; ++i)
        for (int j = 0; j < n; ++j)
          if (active[i] && active[j] && i != j && !a[i][j].is_zero()) {
            pi = i;
            pj = j;
            break;
          }
      if (pi < 0) break;
      // Congruence by the elementary matrix adding row/column pj to pi.
      for (int k = 0; k < n; ++k) a[pi][k] = a[pi][k] + a[pj][k];
      for (int k = 0; k < n; ++k) a[k][pi] = a[k][pi] + a[k][pj];
      piv = pi;
    }
    const T p = a[piv][piv];
    (p.sign() > 0 ? out.positive : out.negative)++;
    active[piv] = false;
    for (int j = 0; j < n; ++j) {
      if (!active[j] || a[j][piv].is_zero()) continue;
      const T f = a[j][piv] / p;
      for (int k = 0; k < n; ++k)
        if (active[k]) a[j][k] = a[j][k] - f * a[piv][k];
    }
  }
  out.zero = n - out.positive - out.negative;
  return out;
}

}  // namespace

Inertia signature(const IntMatrix& gram) {
  check_symmetric(gram);
  try {
    return reduce<Rat>(gram);
  } catch (const Overflow&) {
    return reduce<Big>(gram);
  }
}

int rational_rank(const IntMatrix& m) {
  // Row reduction over the rationals; m need not be symmetric.
  const int rows = static_cast<int>(m.size());
  if (rows == 0) return 0;
  const int cols = static_cast<int>(m[0].size());
  std::vector<std::vector<BigRational>> a(rows, std::vector<BigRational>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = m[i][j];
  int rank = 0;
  for (int c = 0; c < cols && rank < rows; ++c) {
    int p = -1;
    for (int r = rank; r < rows; ++r)
      if (a[r][c] != 0) {
        p = r;
        break;
      }
    if (p < 0) continue;
    std::swap(a[p], a[rank]);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      BigRational f = a[r][c] / a[rank][c];
      for (int k = c; k < cols; ++k) a[r][k] -= f * a[rank][k];
    }
    ++rank;
  }
  return rank;
}

long long determinant(const IntMatrix& m) {
  const int n = static_cast<int>(m.size());
  std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
  for (int i = 0; i < n; ++i) {
    if (static_cast<int>(m[i].size()) != n) throw LatticeError("matrix is not square");
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
  }
  // Bareiss fraction-free elimination.
  BigInt prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int p = -1;
      for (int r = k + 1; r < n; ++r)
        if (a[r][k] != 0) {
          p = r;
          break;
        }
      if (p < 0) return 0;
      std::swap(a[p], a[k]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i)
      for (int j = k + 1; j < n; ++j) a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
    prev = a[k][k];
  }
  BigInt d = n ? a[n - 1][n - 1] : BigInt(1);
  return static_cast<long long>(d) * sign;
}

const IntMatrix& unimodular_gram() {
  static const IntMatrix g = [] {
    IntMatrix m(10, std::vector<long long>(10, 0));
    m[0][1] = m[1][0] = 1;
    for (int i = 2; i < 10; ++i) m[i][i] = -2;
    // Bourbaki E8 edges: 1-3, 3-4, 4-5, 5-6, 6-7, 7-8, 2-4.
    const int edges[7][2] = {{1, 3}, {3, 4}, {4, 5}, {5, 6}, {6, 7}, {7, 8}, {2, 4}};
    for (auto& e : edges) m[e[0] + 1][e[1] + 1] = m[e[1] + 1][e[0] + 1] = 1;
    return m;
  }();
  return g;
}

long long pairing(const LatticeVector& u, const LatticeVector& v) {
  const IntMatrix& g = unimodular_gram();
  long long s = 0;
  for (int i = 0; i < 10; ++i) {
    if (!u[i]) continue;
    for (int j = 0; j < 10; ++j) s += u[i] * g[i][j] * v[j];
  }
  return s;
}

LatticeVector reflect(const LatticeVector& delta, const LatticeVector& x) {
  if (pairing(delta, delta) != -2) throw LatticeError("reflection requires a root of norm -2");
  return x + pairing(x, delta) * delta;
}

LatticeVector basis_vector(int i) {
  if (i < 0 || i >= 10) throw LatticeError("basis index out of range");
  LatticeVector v{};
  v[i] = 1;
  return v;
}

LatticeVector e8_simple_root(int i) {
  if (i < 1 || i > 8) throw LatticeError("E8 simple root index must be in 1..8");
  return basis_vector(i + 1);
}

LatticeVector e8_highest_root() {
  const long long c[8] = {2, 3, 4, 6, 5, 4, 3, 2};
  LatticeVector v{};
  for (int i = 0; i < 8; ++i) v[i + 2] = c[i];
  return v;
}

LatticeVector operator+(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector r;
  for (int i = 0; i < 10; ++i) r[i] = a[i] + b[i];
  return r;
}

LatticeVector operator-(const LatticeVector& a, const LatticeVector& b) {
  LatticeVector r;
  for (int i = 0; i < 10; ++i) r[i] = a[i] - b[i];
  return r;
}

LatticeVector operator*(long long s, const LatticeVector& a) {
  LatticeVector r;
  for (int i = 0; i < 10; ++i) r[i] = s * a[i];
  return r;
}

bool verify_embedding(const IntMatrix& target, const std::vector<LatticeVector>& vectors) {
  if (target.size() != vectors.size()) throw LatticeError("one vector per vertex required");
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (pairing(vectors[i], vectors[i]) != -2) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (pairing(vectors[i], vectors[j]) != target[i][j]) return false;
  }
  return true;
}

}  // namespace enriques
