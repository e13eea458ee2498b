#include <doctest.h>

#include "heckelab/heis_hecke.hpp"
#include "oracles.hpp"

using namespace hecke;
using namespace hecke::testing;

namespace {

HeisLocalParams lp(long long p, int l, int k, int j, int i) {
  return HeisLocalParams{p, l, k, j, i};
}

HeisDoubleCoset dc(long long d1, long long d2, long long v1, long long v2) {
  return HeisDoubleCoset{d1, d2, v1, v2};
}

} // namespace

TEST_CASE("ring element arithmetic and locality guards") {
  Budget budget;
  HeisHeckeElement a = hh_local_class(lp(2, 0, 1, 0, 0));
  HeisHeckeElement b = hh_local_class(lp(2, 0, 1, 0, 1));
  HeisHeckeElement s = hh_add(a, hh_scale(mpz_class(-2), b));
  CHECK(s.lterms.at(lp(2, 0, 1, 0, 0)) == 1);
  CHECK(s.lterms.at(lp(2, 0, 1, 0, 1)) == -2);
  // adding the negation cancels to the zero element
  CHECK(hh_add(s, hh_scale(mpz_class(-1), s)).lterms.empty());
  HeisHeckeElement g = hh_class(dc(1, 2, 0, 1));
  CHECK_THROWS_AS(hh_add(a, g), Error);
  CHECK_THROWS_AS(hecke_mul(a, g, budget), Error);
  CHECK_THROWS_AS(hecke_mul(a, hh_local_class(lp(3, 0, 1, 0, 0)), budget),
                  Error);
  // units are two sided
  CHECK(hecke_mul(hh_unit(Locality::Local, 2), b, budget) == b);
  CHECK(hecke_mul(b, hh_unit(Locality::Local, 2), budget) == b);
  CHECK(hecke_mul(hh_unit(Locality::Global), g, budget) == g);
  CHECK(hecke_mul(g, hh_unit(Locality::Global), budget) == g);
}

TEST_CASE("local degrees of small classes") {
  Budget budget;
  CHECK(h_local_degree(lp(2, 0, 1, 0, 0), budget) == 6);
  CHECK(h_local_degree(lp(2, 0, 1, 0, 1), budget) == 6);
  CHECK(h_local_degree(lp(2, 0, 2, 0, 1), budget) == 24);
  CHECK(h_local_degree(lp(2, 1, 0, 1, 0), budget) == 4);
  CHECK(h_local_degree(lp(2, 1, 0, 0, 0), budget) == 12);
}

TEST_CASE("the two basic classes at p = 2 do not commute") {
  Budget budget;
  HeisHeckeElement u = hh_local_class(lp(2, 0, 1, 0, 0));
  HeisHeckeElement v = hh_local_class(lp(2, 0, 1, 0, 1));
  HeisHeckeElement uv = hecke_mul(u, v, budget);
  HeisHeckeElement vu = hecke_mul(v, u, budget);
  REQUIRE(uv.lterms.size() == 2);
  CHECK(uv.lterms.at(lp(2, 0, 2, 0, 1)) == 1);
  CHECK(uv.lterms.at(lp(2, 1, 0, 1, 0)) == 3);
  REQUIRE(vu.lterms.size() == 2);
  CHECK(vu.lterms.at(lp(2, 0, 2, 0, 1)) == 1);
  CHECK(vu.lterms.at(lp(2, 1, 0, 0, 0)) == 1);
  CHECK(uv != vu);
  // both orders have the full degree 6 * 6
  CHECK(hh_degree(uv, budget) == 36);
  CHECK(hh_degree(vu, budget) == 36);
}

TEST_CASE("witness search returns the first noncommuting pair") {
  Budget budget;
  NoncommuteWitness w = noncommutativity_witness(2, budget);
  CHECK(w.u == hh_local_class(lp(2, 0, 1, 0, 0)));
  CHECK(w.v == hh_local_class(lp(2, 0, 1, 0, 1)));
  CHECK(w.uv != w.vu);
  CHECK(w.uv == hecke_mul(w.u, w.v, budget));
  CHECK(w.vu == hecke_mul(w.v, w.u, budget));
  NoncommuteWitness w3 = noncommutativity_witness(3, budget);
  CHECK(w3.uv != w3.vu);
  CHECK_THROWS_AS(noncommutativity_witness(11, budget), Error);
}

TEST_CASE("products are independent of the sampled representatives") {
  Budget budget;
  HeisHeckeElement u = hh_local_class(lp(2, 1, 1, 0, 1));
  HeisHeckeElement v = hh_local_class(lp(2, 0, 2, 0, 1));
  HeisHeckeElement base = hecke_mul(u, v, budget);
  for (uint64_t seed : {1u, 77u, 4096u})
    CHECK(hecke_mul(u, v, budget, seed) == base);
  HeisHeckeElement g = hh_class(dc(1, 4, 0, 1));
  HeisHeckeElement h = hh_class(dc(1, 2, 0, 1));
  HeisHeckeElement gbase = hecke_mul(g, h, budget);
  for (uint64_t seed : {5u, 99u})
    CHECK(hecke_mul(g, h, budget, seed) == gbase);
}

TEST_CASE("degree is multiplicative across products") {
  Budget budget;
  std::vector<HeisHeckeElement> locals = {
      hh_local_class(lp(2, 0, 1, 0, 0)), hh_local_class(lp(2, 0, 1, 0, 1)),
      hh_local_class(lp(2, 1, 0, 0, 0)), hh_local_class(lp(2, 0, 2, 0, 2)),
      hh_local_class(lp(2, 1, 1, 1, 1))};
  for (const HeisHeckeElement& x : locals)
    for (const HeisHeckeElement& y : locals)
      CHECK(hh_degree(hecke_mul(x, y, budget), budget) ==
            hh_degree(x, budget) * hh_degree(y, budget));
  std::vector<HeisHeckeElement> globals = {
      hh_class(dc(1, 2, 0, 0)), hh_class(dc(1, 2, 0, 1)),
      hh_class(dc(1, 3, 0, 1)), hh_class(dc(2, 2, 0, 1))};
  for (const HeisHeckeElement& x : globals)
    for (const HeisHeckeElement& y : globals)
      CHECK(hh_degree(hecke_mul(x, y, budget), budget) ==
            hh_degree(x, budget) * hh_degree(y, budget));
}

TEST_CASE("product is associative on sample classes") {
  Budget budget;
  HeisHeckeElement x = hh_class(dc(1, 2, 0, 1));
  HeisHeckeElement y = hh_class(dc(1, 2, 0, 0));
  HeisHeckeElement z = hh_class(dc(1, 3, 0, 1));
  CHECK(hecke_mul(hecke_mul(x, y, budget), z, budget) ==
        hecke_mul(x, hecke_mul(y, z, budget), budget));
  HeisHeckeElement a = hh_local_class(lp(2, 0, 1, 0, 0));
  HeisHeckeElement b = hh_local_class(lp(2, 0, 1, 0, 1));
  CHECK(hecke_mul(hecke_mul(a, b, budget), a, budget) ==
        hecke_mul(a, hecke_mul(b, a, budget), budget));
}

TEST_CASE("adelic cosets normalize and reject duplicates") {
  Budget budget;
  // identity components are dropped
  AdelicCoset c = adelic_coset({lp(2, 0, 0, 0, 0)});
  CHECK(c.empty());
  c = adelic_coset({lp(3, 0, 1, 0, 0), lp(2, 0, 1, 0, 1)});
  REQUIRE(c.size() == 2);
  CHECK(c.at(2) == lp(2, 0, 1, 0, 1));
  CHECK(c.at(3) == lp(3, 0, 1, 0, 0));
  CHECK_THROWS_AS(adelic_coset({lp(2, 0, 1, 0, 0), lp(2, 1, 0, 0, 0)}), Error);
  // degree multiplies over components
  CHECK(adelic_degree(adelic_class(c), budget) == 6 * 24);
}

TEST_CASE("adelic products distribute componentwise") {
  Budget budget;
  AdelicHeckeElement u = adelic_class(adelic_coset({lp(2, 0, 1, 0, 0)}));
  AdelicHeckeElement v = adelic_class(adelic_coset({lp(3, 0, 1, 0, 0)}));
  AdelicHeckeElement uv = adelic_mul(u, v, budget);
  REQUIRE(uv.terms.size() == 1);
  CHECK(uv.terms.begin()->first ==
        adelic_coset({lp(2, 0, 1, 0, 0), lp(3, 0, 1, 0, 0)}));
  CHECK(uv.terms.begin()->second == 1);
  CHECK(adelic_mul(v, u, budget) == uv);
  // same-prime components multiply inside the local ring
  AdelicHeckeElement w = adelic_class(adelic_coset({lp(2, 0, 1, 0, 1)}));
  AdelicHeckeElement prod = adelic_mul(u, w, budget);
  HeisHeckeElement local = hecke_mul(hh_local_class(lp(2, 0, 1, 0, 0)),
                                     hh_local_class(lp(2, 0, 1, 0, 1)), budget);
  AdelicHeckeElement expect;
  for (const auto& [cls, coeff] : local.lterms)
    expect.terms[adelic_coset({cls})] = coeff;
  CHECK(prod == expect);
  CHECK(adelic_degree(prod, budget) == 36);
}

TEST_CASE("fibers of the global refinement on fixed cosets") {
  Budget budget;
  // the empty support maps to the trivial class
  CHECK(eta_fiber(AdelicCoset{}, budget) ==
        std::vector<HeisDoubleCoset>{dc(1, 1, 0, 0)});
  CHECK(eta_fiber(adelic_coset({lp(2, 0, 1, 0, 0)}), budget) ==
        std::vector<HeisDoubleCoset>{dc(1, 2, 0, 1)});
  // one prime, fiber of size two
  CHECK(eta_fiber(adelic_coset({lp(2, 3, 6, 0, 3)}), budget) ==
        (std::vector<HeisDoubleCoset>{dc(8, 512, 1, 8), dc(8, 512, 1, 24)}));
  // one prime, fiber of size three
  CHECK(eta_fiber(adelic_coset({lp(3, 2, 4, 0, 2)}), budget) ==
        (std::vector<HeisDoubleCoset>{dc(9, 729, 1, 9), dc(9, 729, 1, 18),
                                      dc(9, 729, 1, 36)}));
  // two primes glue to a single global class
  CHECK(eta_fiber(adelic_coset({lp(2, 0, 1, 0, 0), lp(3, 0, 1, 0, 0)}),
                  budget) == std::vector<HeisDoubleCoset>{dc(1, 6, 0, 1)});
  CHECK(h_degree(dc(1, 6, 0, 1), budget) == 144);
}

TEST_CASE("fiber members localize back and degrees are preserved") {
  Budget budget;
  for (const AdelicCoset& c :
       {adelic_coset({lp(2, 3, 6, 0, 3)}), adelic_coset({lp(3, 2, 4, 0, 2)}),
        adelic_coset({lp(2, 1, 1, 0, 1)}),
        adelic_coset({lp(2, 0, 2, 0, 1), lp(3, 1, 0, 0, 0)})}) {
    std::vector<HeisDoubleCoset> fib = eta_fiber(c, budget);
    REQUIRE(!fib.empty());
    mpz_class total = 0;
    for (const HeisDoubleCoset& g : fib) {
      total += h_degree(g, budget);
      for (const auto& [p, cls] : c) {
        // localization strips the prime-to-p part of the diagonal label
        long long pl = 1, plk = 1;
        for (long long t = g.d1; t % p == 0; t /= p) pl *= p;
        for (long long t = g.d2; t % p == 0; t /= p) plk *= p;
        HeisElement rep{
            IntMatrix::diag({mpz_ll(pl), mpz_ll(plk)}),
            Vec2{mpz_ll(g.v1 % pl), mpz_ll(g.v2 % plk)}};
        CHECK(h_local_canonical(rep, p, budget) == cls);
      }
    }
    CHECK(total == adelic_degree(adelic_class(c), budget));
  }
}

TEST_CASE("global refinement is multiplicative on samples") {
  Budget budget;
  AdelicHeckeElement u = adelic_class(adelic_coset({lp(2, 0, 1, 0, 0)}));
  AdelicHeckeElement v = adelic_class(adelic_coset({lp(3, 0, 1, 0, 0)}));
  AdelicHeckeElement w = adelic_class(adelic_coset({lp(2, 0, 1, 0, 1)}));
  CHECK(eta_star(AdelicHeckeElement{}, budget) ==
        (HeisHeckeElement{})); // zero maps to zero
  std::vector<std::pair<AdelicHeckeElement, AdelicHeckeElement>> pairs = {
      {u, v}, {u, w}, {v, w}, {u, u}};
  for (const auto& [x, y] : pairs) {
    HeisHeckeElement lhs = hecke_mul(eta_star(x, budget), eta_star(y, budget),
                                     budget);
    HeisHeckeElement rhs = eta_star(adelic_mul(x, y, budget), budget);
    CHECK(lhs == rhs);
  }
}

TEST_CASE("nonsurjectivity certificates verify at small primes") {
  Budget budget;
  Certificate c2 = nonsurjectivity_witness(2, budget);
  CHECK(c2.verified);
  CHECK(c2.params == lp(2, 3, 6, 0, 3));
  REQUIRE(c2.fiber.size() == 2);
  CHECK(c2.fiber[0] == dc(8, 512, 1, 8));
  CHECK(c2.fiber[1] == dc(8, 512, 1, 24));
  CHECK(c2.distinguished == dc(8, 512, 1, 8));
  CHECK(c2.fiber_size_expected == 2);
  CHECK(c2.formula == "[U0 : +-U3]");
  CHECK(c2.fiber_partition);
  CHECK(c2.equal_weights_violation);
  CHECK(c2.fibers_scanned > 0);

  Certificate c3 = nonsurjectivity_witness(3, budget);
  CHECK(c3.verified);
  CHECK(c3.params == lp(3, 2, 4, 0, 2));
  REQUIRE(c3.fiber.size() == 3);
  CHECK(c3.fiber[0] == dc(9, 729, 1, 9));
  CHECK(c3.fiber[1] == dc(9, 729, 1, 18));
  CHECK(c3.fiber[2] == dc(9, 729, 1, 36));
  CHECK(c3.fiber_size_expected == 3);
  CHECK(c3.formula == "[U0 : +-U2]");

  Certificate c5 = nonsurjectivity_witness(5, budget);
  CHECK(c5.verified);
  CHECK(c5.fiber.size() == 10);
  CHECK(c5.fiber_size_expected == 10);
}
