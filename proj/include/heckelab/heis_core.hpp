#pragma once

#include <map>
#include <vector>

#include "heckelab/int_matrix.hpp"
#include "heckelab/orbit_lab.hpp"

namespace hecke {

// Pair (A, a) under the twisted product (A,a)(B,b) = (AB, Ab + det(B) a).
// The monoid is all such pairs with A integral and det A != 0; the group of
// units is |det A| = 1.
struct HeisElement {
  IntMatrix mat;
  Vec2 vec;

  bool operator==(const HeisElement& o) const {
    return mat == o.mat && vec == o.vec;
  }
  bool operator<(const HeisElement& o) const {
    if (!(mat == o.mat)) return mat < o.mat;
    return vec < o.vec;
  }
};

HeisElement h_id();
HeisElement h_mul(const HeisElement& x, const HeisElement& y);
// (A,a)^-1 = (A^-1, -A^-1 a / det A); only for unit matrix part
HeisElement h_unit_inverse(const HeisElement& x);

void require_monoid(const HeisElement& x);
bool h_is_unit(const HeisElement& x);

// Canonical representative of the left unit-group coset: matrix part in
// Hermite form H = X * mat, vector part X * vec reduced mod |det| in both
// coordinates (the unit translations sweep exactly det * Z^2).
HeisElement h_left_canonical(const HeisElement& x);

// Double coset label: divisor chain (d1, d2) plus the canonical vector
// class in Z/d1 x Z/d2.
struct HeisDoubleCoset {
  long long d1 = 1, d2 = 1;
  long long v1 = 0, v2 = 0;

  bool operator==(const HeisDoubleCoset& o) const {
    return d1 == o.d1 && d2 == o.d2 && v1 == o.v1 && v2 == o.v2;
  }
  bool operator<(const HeisDoubleCoset& o) const {
    if (d1 != o.d1) return d1 < o.d1;
    if (d2 != o.d2) return d2 < o.d2;
    if (v1 != o.v1) return v1 < o.v1;
    return v2 < o.v2;
  }
};

// p-local double coset label (the matrix part is diag[p^l, p^(l+k)] and the
// vector class contains (p^j, p^(i+j))).
struct HeisLocalParams {
  long long p = 2;
  int l = 0, k = 0, j = 0, i = 0;

  bool operator==(const HeisLocalParams& o) const {
    return p == o.p && l == o.l && k == o.k && j == o.j && i == o.i;
  }
  bool operator<(const HeisLocalParams& o) const {
    if (p != o.p) return p < o.p;
    if (l != o.l) return l < o.l;
    if (k != o.k) return k < o.k;
    if (j != o.j) return j < o.j;
    return i < o.i;
  }
};

// Orbits of the two-sided unit action on Z/d1 x Z/d2 for the divisor type
// (d1, d2).  The acting group is the reduction of the integer unimodular
// matrices whose lower-left entry is divisible by d2/d1; by CRT it is the
// product over p | d2 of the local quotients, glued by a single global
// determinant sign: (g_p) acts iff det g_p = e mod p^l for one e = +-1
// common to all p.  (A determinant condition mod d1 alone would be too
// weak: at primes dividing d2 but not d1 it says nothing, yet the local
// component must still be invertible.)
struct HeisTypeTable {
  long long d1 = 1, d2 = 1;
  std::vector<long long> canon;      // point index -> canonical point index
  std::vector<long long> orbit_size; // keyed by canonical point index
  long long classes = 0;
};
// cached per (d1, d2); point index is v1*d2 + v2
const HeisTypeTable& heis_type_table(long long d1, long long d2,
                                     const Budget& budget);

HeisDoubleCoset h_double_coset_canonical(const HeisElement& x,
                                         const Budget& budget);

// degree = number of left cosets = (gl degree of the chain) * d1*d2 * orbit
// size of the vector class
mpz_class h_degree(const HeisDoubleCoset& c, const Budget& budget);

// Local classification at p: divisor chain gives (l, k); the vector class
// is located in the orbit tables of the full local group, and (j, i) is the
// lexicographically least parameter pair whose base point (p^j, p^(i+j))
// lies in the same orbit.
HeisLocalParams h_local_canonical(const HeisElement& x, long long p,
                                  const Budget& budget);
mpz_class h_local_degree(const HeisLocalParams& c, const Budget& budget);

// Parameter pairs (j, i) whose base points share an orbit, per (p, l, k).
// Expected empty; reported rather than assumed (the parameterization is
// used as a label, so a collision would silently merge classes).
std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>
h_local_param_collisions(long long p, int l, int k, const Budget& budget);

// Complete duplicate-free left-coset representatives of a double coset:
// all (H, w) with H a Hermite representative of the right gl chain and
// w in [0, |det|)^2 whose class matches.
std::vector<HeisElement> h_left_cosets(const HeisDoubleCoset& c,
                                       const Budget& budget);
std::vector<HeisElement> h_local_left_cosets(const HeisLocalParams& c,
                                             const Budget& budget);

// materialize the diagonal representative (diag[p^l, p^(l+k)], (p^j, p^(i+j)))
HeisElement h_local_representative(const HeisLocalParams& c);

} // namespace hecke
