#pragma once
// Hecke rings over the twisted monoid: formal integer combinations of double
// cosets multiplied by left-coset counting, the finite-support adelic layer,
// the fiber map eta between the two, and the generation witnesses.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "heckelab/gl_hecke.hpp"
#include "heckelab/heis_core.hpp"

namespace hecke {

// one locality per element: gterms is the basis in global mode, lterms the
// basis in local mode at the fixed prime p; no zero coefficients stored
struct HeisHeckeElement {
  Locality where = Locality::Global;
  long long p = 0;
  std::map<HeisDoubleCoset, mpz_class> gterms;
  std::map<HeisLocalParams, mpz_class> lterms;
  bool operator==(const HeisHeckeElement& o) const {
    return where == o.where && (where == Locality::Global || p == o.p) &&
           gterms == o.gterms && lterms == o.lterms;
  }
  bool operator!=(const HeisHeckeElement& o) const { return !(*this == o); }
};

HeisHeckeElement hh_unit(Locality where, long long p = 0);
HeisHeckeElement hh_class(const HeisDoubleCoset& c);
HeisHeckeElement hh_local_class(const HeisLocalParams& c);
HeisHeckeElement hh_add(const HeisHeckeElement& x, const HeisHeckeElement& y);
HeisHeckeElement hh_scale(const mpz_class& a, const HeisHeckeElement& x);

// coefficient of a class = number of representative pairs whose product lands
// in one fixed left coset of it; constancy over the left cosets and full
// coverage of the double coset are asserted on every product. shuffle_seed,
// when set, first replaces each representative by a random unit translate;
// the result must be identical.
HeisHeckeElement hecke_mul(const HeisHeckeElement& x, const HeisHeckeElement& y,
                           const Budget& budget = Budget{},
                           std::optional<uint64_t> shuffle_seed = std::nullopt);

// left cosets counted with multiplicity; a ring homomorphism to Z
mpz_class hh_degree(const HeisHeckeElement& x, const Budget& budget = Budget{});

// finite-support adelic coset: prime -> local class, identity components
// omitted so the empty map is the identity coset
using AdelicCoset = std::map<long long, HeisLocalParams>;

struct AdelicHeckeElement {
  std::map<AdelicCoset, mpz_class> terms;
  bool operator==(const AdelicHeckeElement& o) const { return terms == o.terms; }
  bool operator!=(const AdelicHeckeElement& o) const { return !(*this == o); }
};

AdelicCoset adelic_coset(const std::vector<HeisLocalParams>& components);
AdelicHeckeElement adelic_class(const AdelicCoset& c);
AdelicHeckeElement adelic_add(const AdelicHeckeElement& x,
                              const AdelicHeckeElement& y);
// componentwise local products at each prime of the union support,
// distributed over the resulting class combinations
AdelicHeckeElement adelic_mul(const AdelicHeckeElement& x,
                              const AdelicHeckeElement& y,
                              const Budget& budget = Budget{});
mpz_class adelic_degree(const AdelicHeckeElement& x,
                        const Budget& budget = Budget{});

// all global classes over the combined divisor chain whose vector class sits
// in the prescribed orbit at every prime of the support; sorted, never empty
std::vector<HeisDoubleCoset> eta_fiber(const AdelicCoset& c,
                                       const Budget& budget = Budget{});
// linear extension of coset -> unweighted sum over its fiber
HeisHeckeElement eta_star(const AdelicHeckeElement& x,
                          const Budget& budget = Budget{});

// distinct local classes at p with determinant p^s, ascending (l, j, i);
// duplicate (j, i) labels for one orbit are dropped
std::vector<HeisLocalParams> local_classes_at_exponent(long long p, int s,
                                                       const Budget& budget =
                                                           Budget{});

struct NoncommuteWitness {
  HeisHeckeElement u, v, uv, vu;
};
// deterministic search over local classes of determinant dividing p^4 for a
// pair with unequal products
NoncommuteWitness noncommutativity_witness(long long p,
                                           const Budget& budget = Budget{});

// evidence that the single class `distinguished` is outside the subring the
// local rings generate: every generated element has constant coefficients on
// each fiber, and the distinguished class breaks constancy on its own fiber
// of size >= 2. The scan covers every single-prime class of the same
// determinant, so the obstruction holds against all matching-degree
// combinations, not just the chosen parameters.
struct Certificate {
  long long p = 2;
  HeisLocalParams params;
  std::vector<HeisDoubleCoset> fiber;
  HeisDoubleCoset distinguished;
  long long fiber_size_expected = 0;
  std::string formula;
  long long fibers_scanned = 0;
  bool fiber_partition = false;
  bool equal_weights_violation = false;
  bool verified = false;
};
Certificate nonsurjectivity_witness(long long p, const Budget& budget = Budget{});

} // namespace hecke
