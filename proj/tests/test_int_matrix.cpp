#include <doctest.h>

#include "heckelab/int_matrix.hpp"
#include "oracles.hpp"

using namespace hecke;
using namespace hecke::testing;

TEST_CASE("determinant and adjugate basics") {
  IntMatrix m = mat2(1, 2, 3, 4);
  CHECK(det(m) == -2);
  IntMatrix a = adjugate2(m);
  // m * adj(m) = det(m) * I
  IntMatrix prod = mat_mul(m, a);
  CHECK(prod.at(0, 0) == -2);
  CHECK(prod.at(0, 1) == 0);
  CHECK(prod.at(1, 0) == 0);
  CHECK(prod.at(1, 1) == -2);
  CHECK(det(IntMatrix::identity(3)) == 1);
  CHECK(is_unimodular(mat2(2, 1, 1, 1)));
  CHECK_FALSE(is_unimodular(mat2(2, 0, 0, 1)));
}

TEST_CASE("snf on fixed inputs") {
  // diag(2, 3) has elementary divisors (1, 6)
  SnfDecomposition s = snf(IntMatrix::diag({mpz_class(2), mpz_class(3)}));
  CHECK(s.d.at(0, 0) == 1);
  CHECK(s.d.at(1, 1) == 6);
  // [[1,2],[3,4]] has det -2, gcd of entries 1, so divisors (1, 2)
  s = snf(mat2(1, 2, 3, 4));
  CHECK(s.d.at(0, 0) == 1);
  CHECK(s.d.at(1, 1) == 2);
  CHECK(mat_mul(mat_mul(s.u, mat2(1, 2, 3, 4)), s.v) == s.d);
}

TEST_CASE("hnf on fixed inputs") {
  HnfDecomposition h = hnf_left(mat2(0, 1, 3, 0));
  CHECK(h.h == mat2(3, 0, 0, 1));
  CHECK(mat_mul(h.x, mat2(0, 1, 3, 0)) == h.h);
  h = hnf_left(mat2(1, 7, 0, 5));
  CHECK(h.h == mat2(1, 2, 0, 5));
}

TEST_CASE("quotient action on fixed inputs") {
  QuotientVector v(4, 8, 1, 2);
  QuotientVector w = act_on_quotient(mat2(1, 1, 0, 1), v);
  CHECK(w == QuotientVector(4, 8, 3, 2));
  w = act_on_quotient(mat2(1, 0, 4, 1), QuotientVector(4, 8, 1, 0));
  CHECK(w == QuotientVector(4, 8, 1, 4));
  // lower-left entry not divisible by d2/d1: action ill defined
  CHECK_THROWS_AS(act_on_quotient(mat2(1, 0, 1, 1), v), Error);
}

TEST_CASE("snf properties on random matrices") {
  Rng rng(2024);
  int done = 0;
  while (done < 1200) {
    int n = 2 + (int)rand_range(rng, 0, 1);
    IntMatrix m = random_matrix(rng, n, 12);
    if (det(m) == 0) continue;
    ++done;
    SnfDecomposition s = snf(m);
    REQUIRE(is_unimodular(s.u));
    REQUIRE(is_unimodular(s.v));
    REQUIRE(mat_mul(mat_mul(s.u, m), s.v) == s.d);
    mpz_class prev = 0;
    for (int i = 0; i < n; ++i) {
      const mpz_class& di = s.d.at(i, i);
      REQUIRE(di > 0);
      if (i > 0) REQUIRE(di % prev == 0);
      prev = di;
      for (int j = 0; j < n; ++j)
        if (i != j) REQUIRE(s.d.at(i, j) == 0);
    }
    // divisor chain is invariant under unimodular translation
    IntMatrix t = mat_mul(random_unimodular(rng, n), m);
    SnfDecomposition s2 = snf(t);
    REQUIRE(s2.d == s.d);
  }
}

TEST_CASE("hnf properties on random matrices") {
  Rng rng(7171);
  int done = 0;
  while (done < 1200) {
    IntMatrix m = random_matrix(rng, 2, 30);
    if (det(m) == 0) continue;
    ++done;
    HnfDecomposition h = hnf_left(m);
    REQUIRE(is_unimodular(h.x));
    REQUIRE(mat_mul(h.x, m) == h.h);
    REQUIRE(h.h.at(1, 0) == 0);
    REQUIRE(h.h.at(0, 0) > 0);
    REQUIRE(h.h.at(1, 1) > 0);
    REQUIRE(h.h.at(0, 1) >= 0);
    REQUIRE(h.h.at(0, 1) < h.h.at(1, 1));
    // canonical on the row span: translating by a unimodular matrix on the
    // left must reproduce the same form
    HnfDecomposition h2 = hnf_left(mat_mul(random_unimodular(rng, 2), m));
    REQUIRE(h2.h == h.h);
  }
}
