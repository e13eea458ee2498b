#pragma once

#include <gmpxx.h>

#include <array>
#include <vector>

#include "heckelab/errors.hpp"

namespace hecke {

using Vec2 = std::array<mpz_class, 2>;

// Dense square integer matrix, row-major.  Everything here is exact; no
// floating point anywhere in the library.
struct IntMatrix {
  int n = 0;
  std::vector<mpz_class> e;

  IntMatrix() = default;
  explicit IntMatrix(int n_) : n(n_), e(n_ * n_) {}

  mpz_class& at(int i, int j) { return e[i * n + j]; }
  const mpz_class& at(int i, int j) const { return e[i * n + j]; }

  static IntMatrix identity(int n);
  static IntMatrix diag(const std::vector<mpz_class>& d);
  static IntMatrix from_rows(const std::vector<std::vector<mpz_class>>& rows);

  bool operator==(const IntMatrix& o) const { return n == o.n && e == o.e; }
  bool operator<(const IntMatrix& o) const {
    if (n != o.n) return n < o.n;
    return e < o.e;
  }
};

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b);
Vec2 mat_vec(const IntMatrix& m, const Vec2& v);

// det(m) * m^{-1} for 2x2.
IntMatrix adjugate2(const IntMatrix& m);

// Fraction-free elimination (Bareiss), works for any n.
mpz_class det(const IntMatrix& m);

bool is_unimodular(const IntMatrix& m);

// u * m * v = diag(d) with d[0] | d[1] | ... and all d[i] > 0 (m invertible
// over Q), u and v unimodular.
struct SnfDecomposition {
  IntMatrix u, d, v;
};
SnfDecomposition snf(const IntMatrix& m);

struct HnfDecomposition {
  IntMatrix x, h;
};

// Left Hermite form for 2x2: h = x * m, x unimodular, h = [[h00, h01],
// [0, h11]] with h00 > 0, h11 > 0, 0 <= h01 < h11.  This is the unique such
// form, so it canonically labels the row span of m.  m must be invertible
// over Q.
HnfDecomposition hnf_left(const IntMatrix& m);

// Point of (Z/d1) x (Z/d2) with d1 | d2, stored reduced.
struct QuotientVector {
  mpz_class d1, d2;
  mpz_class v1, v2;

  QuotientVector(mpz_class d1_, mpz_class d2_, mpz_class v1_, mpz_class v2_);

  bool operator==(const QuotientVector& o) const {
    return d1 == o.d1 && d2 == o.d2 && v1 == o.v1 && v2 == o.v2;
  }
  bool operator<(const QuotientVector& o) const;
};

// Image of v under an integer 2x2 matrix m acting on Z^2/(d1 x d2).  The
// action is well defined only when m maps the kernel lattice into itself,
// which for diagonal type (d1, d2) means (d2/d1) | m21; otherwise throws.
QuotientVector act_on_quotient(const IntMatrix& m, const QuotientVector& v);

} // namespace hecke
