#pragma once

#include <map>
#include <vector>

#include "heckelab/int_matrix.hpp"

namespace hecke {

enum class Locality { Global, Local };

// Double coset of invertible integer matrices under two-sided unimodular
// multiplication, labeled by its elementary divisor chain.  In Local mode
// both divisors are powers of the attached prime.
struct GlCoset {
  mpz_class d1, d2;

  bool operator==(const GlCoset& o) const { return d1 == o.d1 && d2 == o.d2; }
  bool operator<(const GlCoset& o) const {
    if (d1 != o.d1) return d1 < o.d1;
    return d2 < o.d2;
  }
};

struct GlHeckeElement {
  Locality where = Locality::Global;
  long long p = 0; // attached prime in Local mode
  std::map<GlCoset, mpz_class> terms;
};

// Divisor chain of m.  Local mode insists det = +-(power of p).
GlCoset gl_canonicalize(const IntMatrix& m, Locality where, long long p);

// Number of left cosets in the double coset; multiplicative over the prime
// factorization of d2/d1.
mpz_class gl_degree(const GlCoset& c);
mpz_class gl_degree(const GlHeckeElement& x); // coefficient-weighted sum

// Complete duplicate-free list of canonical representatives of the left
// cosets inside the double coset: all [[a,b],[0,d]] with a*d = d1*d2,
// 0 <= b < d and divisor chain (d1,d2).  Local mode gives the same list
// (divisors of a prime power are prime powers), so no flag is needed.
std::vector<IntMatrix> gl_left_cosets(const GlCoset& c, const Budget& budget);

GlHeckeElement gl_unit(Locality where, long long p);

// Hecke product: enumerate pairwise products of left-coset representatives,
// group them by left coset, and read off the multiplicity of each double
// coset.  The multiplicity is the same over every left coset of one double
// coset; that is asserted, not assumed.
GlHeckeElement gl_mul(const GlHeckeElement& x, const GlHeckeElement& y,
                      const Budget& budget);

} // namespace hecke
