#pragma once

#include <cstdint>
#include <vector>

#include "heckelab/errors.hpp"

namespace hecke {

// Parameters of the finite quotient G of the (2,1)-congruence group at p:
// integer matrices with p^k dividing the lower-left entry, taken modulo the
// subgroup acting trivially on Z/p^l x Z/p^(l+k).
struct GlkParams {
  long long p = 2;
  int l = 0, k = 0;
  long long pl = 1, plk = 1, pk = 1; // p^l, p^(l+k), p^k
};
GlkParams make_glk_params(long long p, int l, int k);

// Element in the mixed-modulus representation: a, b live mod p^l and c, d
// mod p^(l+k), with p^k | c.  That is exactly the data determining the
// action on Z/p^l x Z/p^(l+k), and multiplication is well defined on it:
// in the products a1*a2 + b1*c2 and a1*b2 + b1*d2 (wanted mod p^l) every
// factor is known at least mod p^l, and in c1*a2 + d1*c2 and c1*b2 + d1*d2
// (wanted mod p^(l+k)) the factors a2, b2 known only mod p^l are multiplied
// by c1 = p^k * c1', so the unknown p^l-multiples are killed by p^k.
struct GlkElem {
  long long a = 0, b = 0, c = 0, d = 0;

  bool operator==(const GlkElem& o) const {
    return a == o.a && b == o.b && c == o.c && d == o.d;
  }
  bool operator<(const GlkElem& o) const {
    if (a != o.a) return a < o.a;
    if (b != o.b) return b < o.b;
    if (c != o.c) return c < o.c;
    return d < o.d;
  }
};

GlkElem glk_id(const GlkParams& g);
bool glk_is_valid(const GlkParams& g, const GlkElem& e);
GlkElem glk_mul(const GlkParams& g, const GlkElem& x, const GlkElem& y);

// det = ad - bc reduced mod p^l, well defined because the only factors
// known mod p^l (a, b) multiply factors defined mod p^(l+k).  For l = 0
// this is the trivial group's value 0 mod 1.
long long glk_det(const GlkParams& g, const GlkElem& e);

// |G| in closed form; validated against full enumeration in tests.
long long glk_order(const GlkParams& g);
long long glk_det1_order(const GlkParams& g);  // kernel of det mod p^l
long long glk_detpm_order(const GlkParams& g); // preimage of {+-1 mod p^l}

// Full enumeration over the mixed-modulus tuple space (p^(3l+k) tuples,
// hard-capped at 10^7).  Used as the ground truth that the generator sets
// below are checked against; the orbit machinery itself never builds it.
std::vector<GlkElem> build_glk(long long p, int l, int k);

std::vector<GlkElem> glk_generators(const GlkParams& g);       // all of G
std::vector<GlkElem> glk_det1_generators(const GlkParams& g);  // det = 1 part
std::vector<GlkElem> glk_detpm_generators(const GlkParams& g); // det = +-1 part

// Orbit ids for the action on Z/p^l x Z/p^(l+k), point index v1*p^(l+k)+v2.
// Seeds are scanned in ascending index order, so each orbit's id is dense
// and its representative (the seed) is the lexicographically least member.
struct OrbitTables {
  GlkParams prm;
  long long npoints = 0;
  std::vector<int32_t> full_orbit;  // under all of G
  std::vector<int32_t> det1_orbit;  // under the det = 1 kernel
  std::vector<long long> full_size, det1_size;
  std::vector<long long> full_rep, det1_rep;
};
// cached per (p,l,k); the returned reference stays valid for the process
const OrbitTables& orbit_tables(long long p, int l, int k, const Budget& budget);

// Everything measured about the distinguished point (p^j, p^(i+j)).
struct OrbitReport {
  long long p;
  int l, k, i, j;
  long long group_order, orbit_size, stab_size;
  int n;                    // det image of the stabilizer equals U_n/U_l
  long long fiber_count;    // orbits of the det=+-1 part inside the G-orbit
  long long formula_count;  // [U_0 : +-U_n] with n = min(i, k-i, l-j)
  bool match;               // fiber_count == formula_count and n as predicted
};
OrbitReport orbit_report(long long p, int l, int k, int i, int j,
                         const Budget& budget);

// [U_0 : <-1, U_n>] inside the units mod p^l, by explicit subgroup closure
// (no closed-form case split; p = 2 where U_0 = U_1 comes out right).
long long index_u0_pm_un(long long p, int l, int n);

// Closure of the reductions of integer matrices with |entries| <= bound,
// det = +-1 and p^k dividing the lower-left entry.  The bound doubles until
// the closure is all of the det = +-1 part (and its det = 1 slice all of
// the det = 1 part) or the budget runs out.
struct SurjectivityReport {
  long long p;
  int l, k;
  long long initial_bound, final_bound;
  long long seed_matrices; // distinct reduced generators at the final bound
  long long closure_size, detpm_order;
  long long det1_closure_size, det1_order;
  bool surjective;
};
SurjectivityReport integral_surjectivity_check(long long p, int l, int k,
                                               long long entry_bound,
                                               const Budget& budget);

} // namespace hecke
