#pragma once

// The rank-10 even unimodular lattice U + E8 (signature (1,9)) and exact
// inertia of integer symmetric matrices.
//
// Basis convention: coordinates 0,1 are the isotropic pair e, f of the
// hyperbolic plane (e.e = f.f = 0, e.f = 1); coordinates 2..9 are the simple
// roots a1..a8 of E8 in Bourbaki numbering (chain a1-a3-a4-a5-a6-a7-a8 with
// a2 attached to a4), with the negative definite Gram (a_i.a_i = -2,
// a_i.a_j = 1 for adjacent roots).

#include <array>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace enriques {

using IntMatrix = std::vector<std::vector<long long>>;
using LatticeVector = std::array<long long, 10>;

struct LatticeError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

struct Inertia {
  int positive = 0;
  int negative = 0;
  int zero = 0;
  bool operator==(const Inertia&) const = default;
};

// Exact symmetric Gaussian reduction over the rationals. Pivots are taken
// from the diagonal (largest denominator first, lowest index on ties); when
// the remaining diagonal vanishes a congruence row_i += row_j creates one.
Inertia signature(const IntMatrix& gram);
int rational_rank(const IntMatrix& m);
// Exact determinant (fraction-free elimination, arbitrary precision).
long long determinant(const IntMatrix& m);

const IntMatrix& unimodular_gram();  // U + E8 in the declared basis
long long pairing(const LatticeVector& u, const LatticeVector& v);
LatticeVector reflect(const LatticeVector& delta, const LatticeVector& x);

LatticeVector basis_vector(int i);
LatticeVector e8_simple_root(int i);  // i in 1..8
LatticeVector e8_highest_root();      // 2a1+3a2+4a3+6a4+5a5+4a6+3a7+2a8
LatticeVector operator+(const LatticeVector& a, const LatticeVector& b);
LatticeVector operator-(const LatticeVector& a, const LatticeVector& b);
LatticeVector operator*(long long s, const LatticeVector& a);

// True iff <v_i, v_i> = -2 and <v_i, v_j> = target[i][j] for i != j.
bool verify_embedding(const IntMatrix& target, const std::vector<LatticeVector>& vectors);

}  // namespace enriques
