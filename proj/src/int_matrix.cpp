#include "heckelab/int_matrix.hpp"

#include <algorithm>

#include "heckelab/numeric.hpp"

namespace hecke {

IntMatrix IntMatrix::identity(int n) {
  IntMatrix m(n);
  for (int i = 0; i < n; i++) m.at(i, i) = 1;
  return m;
}

IntMatrix IntMatrix::diag(const std::vector<mpz_class>& d) {
  IntMatrix m((int)d.size());
  for (int i = 0; i < m.n; i++) m.at(i, i) = d[i];
  return m;
}

IntMatrix IntMatrix::from_rows(const std::vector<std::vector<mpz_class>>& rows) {
  int n = (int)rows.size();
  IntMatrix m(n);
  for (int i = 0; i < n; i++) {
    if ((int)rows[i].size() != n) fail(Kind::InvalidInput, "matrix must be square");
    for (int j = 0; j < n; j++) m.at(i, j) = rows[i][j];
  }
  return m;
}

IntMatrix mat_mul(const IntMatrix& a, const IntMatrix& b) {
  if (a.n != b.n) fail(Kind::Internal, "mat_mul: dimension mismatch");
  IntMatrix c(a.n);
  for (int i = 0; i < a.n; i++)
    for (int k = 0; k < a.n; k++) {
      if (a.at(i, k) == 0) continue;
      for (int j = 0; j < a.n; j++) c.at(i, j) += a.at(i, k) * b.at(k, j);
    }
  return c;
}

Vec2 mat_vec(const IntMatrix& m, const Vec2& v) {
  if (m.n != 2) fail(Kind::Internal, "mat_vec: 2x2 only");
  return {m.at(0, 0) * v[0] + m.at(0, 1) * v[1],
          m.at(1, 0) * v[0] + m.at(1, 1) * v[1]};
}

IntMatrix adjugate2(const IntMatrix& m) {
  if (m.n != 2) fail(Kind::Internal, "adjugate2: 2x2 only");
  IntMatrix a(2);
  a.at(0, 0) = m.at(1, 1);
  a.at(0, 1) = -m.at(0, 1);
  a.at(1, 0) = -m.at(1, 0);
  a.at(1, 1) = m.at(0, 0);
  return a;
}

mpz_class det(const IntMatrix& m) {
  int n = m.n;
  if (n == 1) return m.at(0, 0);
  if (n == 2) return m.at(0, 0) * m.at(1, 1) - m.at(0, 1) * m.at(1, 0);
  IntMatrix w = m;
  mpz_class prev = 1;
  int sign = 1;
  for (int t = 0; t < n - 1; t++) {
    if (w.at(t, t) == 0) {
      int r = -1;
      for (int i = t + 1; i < n; i++)
        if (w.at(i, t) != 0) { r = i; break; }
      if (r < 0) return 0;
      for (int j = 0; j < n; j++) std::swap(w.at(t, j), w.at(r, j));
      sign = -sign;
    }
    for (int i = t + 1; i < n; i++)
      for (int j = t + 1; j < n; j++) {
        mpz_class num = w.at(i, j) * w.at(t, t) - w.at(i, t) * w.at(t, j);
        // Bareiss: this division is exact
        w.at(i, j) = num / prev;
      }
    prev = w.at(t, t);
  }
  return sign * w.at(n - 1, n - 1);
}

bool is_unimodular(const IntMatrix& m) {
  mpz_class d = det(m);
  return d == 1 || d == -1;
}

namespace {

void swap_rows(IntMatrix& m, int a, int b) {
  for (int j = 0; j < m.n; j++) std::swap(m.at(a, j), m.at(b, j));
}
void swap_cols(IntMatrix& m, int a, int b) {
  for (int i = 0; i < m.n; i++) std::swap(m.at(i, a), m.at(i, b));
}
// row[a] -= q * row[b]
void addmul_row(IntMatrix& m, int a, int b, const mpz_class& q) {
  for (int j = 0; j < m.n; j++) m.at(a, j) -= q * m.at(b, j);
}
void addmul_col(IntMatrix& m, int a, int b, const mpz_class& q) {
  for (int i = 0; i < m.n; i++) m.at(i, a) -= q * m.at(i, b);
}
void negate_row(IntMatrix& m, int a) {
  for (int j = 0; j < m.n; j++) m.at(a, j) = -m.at(a, j);
}

mpz_class fdiv_q(const mpz_class& a, const mpz_class& b) {
  mpz_class q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

} // namespace

SnfDecomposition snf(const IntMatrix& m) {
  int n = m.n;
  if (det(m) == 0) fail(Kind::SingularMatrix, "snf requires det != 0");
  SnfDecomposition out{IntMatrix::identity(n), m, IntMatrix::identity(n)};
  IntMatrix& d = out.d;
  IntMatrix& u = out.u;
  IntMatrix& v = out.v;

  for (int t = 0; t < n; t++) {
    // clear row t and column t outside the pivot; each pass either finishes
    // or strictly shrinks |pivot|, so this terminates
    for (;;) {
      // move a smallest nonzero entry of the trailing block to (t, t)
      int bi = -1, bj = -1;
      for (int i = t; i < n; i++)
        for (int j = t; j < n; j++) {
          if (d.at(i, j) == 0) continue;
          if (bi < 0 || cmp(abs(d.at(i, j)), abs(d.at(bi, bj))) < 0) {
            bi = i;
            bj = j;
          }
        }
      if (bi < 0) fail(Kind::Internal, "snf: zero block in invertible matrix");
      if (bi != t) { swap_rows(d, t, bi); swap_rows(u, t, bi); }
      if (bj != t) { swap_cols(d, t, bj); swap_cols(v, t, bj); }
      if (d.at(t, t) < 0) { negate_row(d, t); negate_row(u, t); }

      bool dirty = false;
      for (int i = t + 1; i < n; i++) {
        if (d.at(i, t) == 0) continue;
        mpz_class q = fdiv_q(d.at(i, t), d.at(t, t));
        addmul_row(d, i, t, q);
        addmul_row(u, i, t, q);
        if (d.at(i, t) != 0) dirty = true; // remainder became the new column entry
      }
      for (int j = t + 1; j < n; j++) {
        if (d.at(t, j) == 0) continue;
        mpz_class q = fdiv_q(d.at(t, j), d.at(t, t));
        addmul_col(d, j, t, q);
        addmul_col(v, j, t, q);
        if (d.at(t, j) != 0) dirty = true;
      }
      if (dirty) continue;

      // pivot must divide everything that comes after it; if not, fold the
      // offending row in and restart the pass
      bool fixed = true;
      for (int i = t + 1; i < n && fixed; i++)
        for (int j = t + 1; j < n && fixed; j++)
          if (d.at(i, j) % d.at(t, t) != 0) {
            addmul_row(d, t, i, -1);
            addmul_row(u, t, i, -1);
            fixed = false;
          }
      if (fixed) break;
    }
  }
  return out;
}

HnfDecomposition hnf_left(const IntMatrix& m) {
  if (m.n != 2) fail(Kind::Internal, "hnf_left: 2x2 only");
  if (det(m) == 0) fail(Kind::SingularMatrix, "hnf requires det != 0");
  // kill m10 with an extended-gcd row operation on column 0
  mpz_class a = m.at(0, 0), c = m.at(1, 0);
  mpz_class g, x, y;
  mpz_gcdext(g.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t(), a.get_mpz_t(),
             c.get_mpz_t());
  // g > 0 since det != 0 rules out a = c = 0, and h00 = g after this step
  HnfDecomposition out;
  out.x = IntMatrix::from_rows({{x, y}, {-c / g, a / g}});
  out.h = mat_mul(out.x, m);

  if (out.h.at(1, 1) < 0) {
    IntMatrix s = IntMatrix::from_rows({{1, 0}, {0, -1}});
    out.x = mat_mul(s, out.x);
    out.h = mat_mul(s, out.h);
  }
  // reduce h01 into [0, h11)
  mpz_class q = fdiv_q(out.h.at(0, 1), out.h.at(1, 1));
  if (q != 0) {
    IntMatrix s = IntMatrix::from_rows({{1, -q}, {0, 1}});
    out.x = mat_mul(s, out.x);
    out.h = mat_mul(s, out.h);
  }
  if (out.h.at(1, 0) != 0) fail(Kind::Internal, "hnf_left: not triangular");
  return out;
}

QuotientVector::QuotientVector(mpz_class d1_, mpz_class d2_, mpz_class v1_,
                               mpz_class v2_)
    : d1(std::move(d1_)), d2(std::move(d2_)) {
  if (d1 <= 0 || d2 <= 0 || d2 % d1 != 0)
    fail(Kind::Internal, "quotient type needs 0 < d1 | d2");
  v1 = mod_floor(v1_, d1);
  v2 = mod_floor(v2_, d2);
}

bool QuotientVector::operator<(const QuotientVector& o) const {
  if (d1 != o.d1) return d1 < o.d1;
  if (d2 != o.d2) return d2 < o.d2;
  if (v1 != o.v1) return v1 < o.v1;
  return v2 < o.v2;
}

QuotientVector act_on_quotient(const IntMatrix& m, const QuotientVector& v) {
  if (m.n != 2) fail(Kind::Internal, "act_on_quotient: 2x2 only");
  // m preserves d1*Z x d2*Z iff (d2/d1) | m10; the other three entries are
  // unconstrained because d1 | d2
  if ((m.at(1, 0) * v.d1) % v.d2 != 0)
    fail(Kind::IllDefinedAction, "matrix does not preserve the kernel lattice");
  Vec2 w = mat_vec(m, {v.v1, v.v2});
  return QuotientVector(v.d1, v.d2, w[0], w[1]);
}

} // namespace hecke
