#include "heckelab/gl_hecke.hpp"

#include <algorithm>

#include "heckelab/numeric.hpp"

namespace hecke {

GlCoset gl_canonicalize(const IntMatrix& m, Locality where, long long p) {
  mpz_class d = det(m);
  if (d == 0) fail(Kind::NotInMonoid, "determinant is zero");
  if (where == Locality::Local) {
    mpz_class a = abs(d);
    mpz_class pz = mpz_ll(p);
    while (a % pz == 0) a /= pz;
    if (a != 1)
      fail(Kind::NotLocallyIntegral, "determinant is not a power of " + std::to_string(p));
  }
  SnfDecomposition s = snf(m);
  return GlCoset{s.d.at(0, 0), s.d.at(1, 1)};
}

mpz_class gl_degree(const GlCoset& c) {
  if (c.d1 <= 0 || c.d2 <= 0 || c.d2 % c.d1 != 0)
    fail(Kind::InvalidInput, "divisor pair must satisfy 0 < d1 | d2");
  // scaling by d1 is degree-preserving, so only d2/d1 matters; the count of
  // index-p^k sublattices with cyclic quotient is p^(k-1)(p+1)
  long long q = to_ll(c.d2 / c.d1);
  mpz_class deg = 1;
  for (auto [p, k] : factorize_ll(q))
    deg *= mpz_ll(pow_ll_checked(p, k - 1)) * mpz_ll(p + 1);
  return deg;
}

mpz_class gl_degree(const GlHeckeElement& x) {
  mpz_class deg = 0;
  for (const auto& [c, coeff] : x.terms) deg += coeff * gl_degree(c);
  return deg;
}

std::vector<IntMatrix> gl_left_cosets(const GlCoset& c, const Budget& budget) {
  mpz_class n = c.d1 * c.d2;
  if (n > mpz_ll(budget.points))
    fail(Kind::SizeLimit, "divisor product above budget");
  long long nn = to_ll(n);
  std::vector<IntMatrix> out;
  for (long long a = 1; a <= nn; a++) {
    if (nn % a != 0) continue;
    long long d = nn / a;
    for (long long b = 0; b < d; b++) {
      IntMatrix h = IntMatrix::from_rows(
          {{mpz_ll(a), mpz_ll(b)}, {mpz_class(0), mpz_ll(d)}});
      if (gl_canonicalize(h, Locality::Global, 0) == c) out.push_back(h);
    }
  }
  return out;
}

GlHeckeElement gl_unit(Locality where, long long p) {
  GlHeckeElement e;
  e.where = where;
  e.p = p;
  e.terms[GlCoset{1, 1}] = 1;
  return e;
}

namespace {

void check_same_ring(const GlHeckeElement& x, const GlHeckeElement& y) {
  if (x.where != y.where || (x.where == Locality::Local && x.p != y.p))
    fail(Kind::LocalityMismatch, "operands live in different Hecke rings");
}

// product of one basis coset pair, as a map double coset -> multiplicity
std::map<GlCoset, mpz_class> coset_product(const GlCoset& a, const GlCoset& b,
                                           const Budget& budget) {
  std::vector<IntMatrix> ra = gl_left_cosets(a, budget);
  std::vector<IntMatrix> rb = gl_left_cosets(b, budget);
  long long npairs = (long long)ra.size() * (long long)rb.size();
  if (npairs > budget.products)
    fail(Kind::BudgetExhausted, "coset product needs " + std::to_string(npairs) +
                                    " representative products");

  // count how many pairs land in each left coset, keyed by canonical form
  std::map<IntMatrix, long long> left_count;
  for (const IntMatrix& ma : ra)
    for (const IntMatrix& mb : rb) left_count[hnf_left(mat_mul(ma, mb)).h]++;

  // the count must be constant over the left cosets of one double coset,
  // and every left coset of a touched double coset must be touched
  std::map<GlCoset, std::pair<long long, long long>> seen; // count, #cosets
  for (const auto& [h, cnt] : left_count) {
    GlCoset c = gl_canonicalize(h, Locality::Global, 0);
    auto it = seen.find(c);
    if (it == seen.end()) {
      seen[c] = {cnt, 1};
    } else {
      if (it->second.first != cnt)
        fail(Kind::Internal, "multiplicity not constant on a double coset");
      it->second.second++;
    }
  }
  std::map<GlCoset, mpz_class> out;
  for (const auto& [c, v] : seen) {
    if (mpz_ll(v.second) != gl_degree(c))
      fail(Kind::Internal, "double coset only partially covered");
    out[c] = mpz_ll(v.first);
  }
  return out;
}

} // namespace

GlHeckeElement gl_mul(const GlHeckeElement& x, const GlHeckeElement& y,
                      const Budget& budget) {
  check_same_ring(x, y);
  GlHeckeElement out;
  out.where = x.where;
  out.p = x.p;
  for (const auto& [a, ca] : x.terms)
    for (const auto& [b, cb] : y.terms) {
      for (const auto& [c, mult] : coset_product(a, b, budget)) {
        mpz_class& slot = out.terms[c];
        slot += ca * cb * mult;
        if (slot == 0) out.terms.erase(c);
      }
    }
  return out;
}

} // namespace hecke
