#include "heckelab/heis_core.hpp"

#include <functional>
#include <memory>
#include <mutex>

#include "heckelab/gl_hecke.hpp"
#include "heckelab/numeric.hpp"

namespace hecke {

HeisElement h_id() {
  return HeisElement{IntMatrix::identity(2), {0, 0}};
}

HeisElement h_mul(const HeisElement& x, const HeisElement& y) {
  mpz_class db = det(y.mat);
  Vec2 v = mat_vec(x.mat, y.vec);
  return HeisElement{mat_mul(x.mat, y.mat), {v[0] + db * x.vec[0], v[1] + db * x.vec[1]}};
}

HeisElement h_unit_inverse(const HeisElement& x) {
  mpz_class d = det(x.mat);
  if (d != 1 && d != -1) fail(Kind::Internal, "inverse needs |det| = 1");
  IntMatrix adj = adjugate2(x.mat);
  IntMatrix inv(2);
  for (int t = 0; t < 4; t++) inv.e[t] = d * adj.e[t];
  Vec2 w = mat_vec(adj, x.vec);
  return HeisElement{inv, {-w[0], -w[1]}};
}

void require_monoid(const HeisElement& x) {
  if (x.mat.n != 2) fail(Kind::NotInMonoid, "matrix part must be 2x2");
  if (det(x.mat) == 0) fail(Kind::NotInMonoid, "matrix part must be invertible");
}

bool h_is_unit(const HeisElement& x) {
  mpz_class d = det(x.mat);
  return d == 1 || d == -1;
}

HeisElement h_left_canonical(const HeisElement& x) {
  require_monoid(x);
  HnfDecomposition h = hnf_left(x.mat);
  mpz_class n = abs(det(x.mat));
  Vec2 w = mat_vec(h.x, x.vec);
  return HeisElement{h.h, {mod_floor(w[0], n), mod_floor(w[1], n)}};
}

namespace {

struct LocalFactor {
  long long p;
  int l, k;
  long long pl, plk;
  const OrbitTables* tab;
};

std::vector<LocalFactor> local_factors(long long d1, long long d2,
                                       const Budget& budget) {
  std::vector<LocalFactor> out;
  for (auto [p, e2] : factorize_ll(d2)) {
    int e1 = d1 % p == 0 ? valuation_ll(d1, p) : 0;
    LocalFactor f;
    f.p = p;
    f.l = e1;
    f.k = e2 - e1;
    f.pl = pow_ll_checked(p, f.l);
    f.plk = pow_ll_checked(p, e2);
    f.tab = &orbit_tables(p, f.l, f.k, budget);
    out.push_back(f);
  }
  return out;
}

std::map<std::pair<long long, long long>, std::unique_ptr<HeisTypeTable>>&
type_cache() {
  static std::map<std::pair<long long, long long>,
                  std::unique_ptr<HeisTypeTable>>
      cache;
  return cache;
}
std::mutex type_mutex;

} // namespace

const HeisTypeTable& heis_type_table(long long d1, long long d2,
                                     const Budget& budget) {
  if (d1 <= 0 || d2 <= 0 || d2 % d1 != 0)
    fail(Kind::InvalidInput, "divisor pair must satisfy 0 < d1 | d2");
  std::lock_guard<std::mutex> lock(type_mutex);
  auto key = std::make_pair(d1, d2);
  auto it = type_cache().find(key);
  if (it != type_cache().end()) return *it->second;

  long long n = d1 * d2;
  if (n > budget.points)
    fail(Kind::SizeLimit, "vector class table of size " + std::to_string(n) +
                              " above budget");
  std::vector<LocalFactor> fac = local_factors(d1, d2, budget);

  auto t = std::make_unique<HeisTypeTable>();
  t->d1 = d1;
  t->d2 = d2;

  // bucket = product of per-prime det=1 orbits; first point scanned in a
  // bucket is its lexicographic minimum
  std::map<std::vector<int32_t>, int32_t> bucket_ids;
  std::vector<int32_t> bucket(n);
  std::vector<long long> bucket_min;
  std::vector<int32_t> key_buf(fac.size());
  for (long long v1 = 0; v1 < d1; v1++)
    for (long long v2 = 0; v2 < d2; v2++) {
      for (size_t q = 0; q < fac.size(); q++) {
        const LocalFactor& f = fac[q];
        key_buf[q] = f.tab->det1_orbit[(v1 % f.pl) * f.plk + (v2 % f.plk)];
      }
      long long idx = v1 * d2 + v2;
      auto [pos, fresh] = bucket_ids.try_emplace(key_buf, (int32_t)bucket_min.size());
      if (fresh) bucket_min.push_back(idx);
      bucket[idx] = pos->second;
    }

  // a full orbit is bucket(v) together with bucket of (v1, -v2), the image
  // of the only determinant sign the kernel misses
  t->canon.assign(n, 0);
  t->orbit_size.assign(n, 0);
  for (long long v1 = 0; v1 < d1; v1++)
    for (long long v2 = 0; v2 < d2; v2++) {
      long long idx = v1 * d2 + v2;
      long long mirror = v1 * d2 + (d2 - v2) % d2;
      t->canon[idx] = std::min(bucket_min[bucket[idx]], bucket_min[bucket[mirror]]);
    }
  for (long long idx = 0; idx < n; idx++) {
    if (t->canon[t->canon[idx]] != t->canon[idx])
      fail(Kind::Internal, "vector canonicalization not idempotent");
    t->orbit_size[t->canon[idx]]++;
    if (t->canon[idx] == idx) t->classes++;
  }

  const HeisTypeTable& ref = *t;
  type_cache()[key] = std::move(t);
  return ref;
}

HeisDoubleCoset h_double_coset_canonical(const HeisElement& x,
                                         const Budget& budget) {
  require_monoid(x);
  SnfDecomposition s = snf(x.mat);
  long long d1 = to_ll(s.d.at(0, 0));
  long long d2 = to_ll(s.d.at(1, 1));
  Vec2 w = mat_vec(s.u, x.vec);
  long long w1 = to_ll(mod_floor(w[0], mpz_ll(d1)));
  long long w2 = to_ll(mod_floor(w[1], mpz_ll(d2)));
  const HeisTypeTable& tab = heis_type_table(d1, d2, budget);
  long long c = tab.canon[w1 * d2 + w2];
  return HeisDoubleCoset{d1, d2, c / d2, c % d2};
}

mpz_class h_degree(const HeisDoubleCoset& c, const Budget& budget) {
  const HeisTypeTable& tab = heis_type_table(c.d1, c.d2, budget);
  long long idx = c.v1 * c.d2 + c.v2;
  if (tab.canon[idx] != idx)
    fail(Kind::InvalidInput, "vector class is not in canonical form");
  return gl_degree(GlCoset{mpz_ll(c.d1), mpz_ll(c.d2)}) * mpz_ll(c.d1) *
         mpz_ll(c.d2) * mpz_ll(tab.orbit_size[idx]);
}

namespace {

void require_p_power_det(const IntMatrix& m, long long p) {
  mpz_class d = det(m);
  if (d == 0) fail(Kind::NotInMonoid, "matrix part must be invertible");
  mpz_class a = abs(d);
  mpz_class pz = mpz_ll(p);
  while (a % pz == 0) a /= pz;
  if (a != 1)
    fail(Kind::NotLocallyIntegral,
         "determinant is not a power of " + std::to_string(p));
}

} // namespace

HeisLocalParams h_local_canonical(const HeisElement& x, long long p,
                                  const Budget& budget) {
  require_p_power_det(x.mat, p);
  SnfDecomposition s = snf(x.mat);
  mpz_class pz = mpz_ll(p);
  int l = 0, lk = 0;
  for (mpz_class t = s.d.at(0, 0); t % pz == 0; t /= pz) l++;
  for (mpz_class t = s.d.at(1, 1); t % pz == 0; t /= pz) lk++;
  int k = lk - l;
  GlkParams g = make_glk_params(p, l, k);
  Vec2 w = mat_vec(s.u, x.vec);
  long long w1 = to_ll(mod_floor(w[0], mpz_ll(g.pl)));
  long long w2 = to_ll(mod_floor(w[1], mpz_ll(g.plk)));
  const OrbitTables& tab = orbit_tables(p, l, k, budget);
  int32_t oid = tab.full_orbit[w1 * g.plk + w2];
  for (int j = 0; j <= l; j++)
    for (int i = 0; i <= k; i++) {
      long long a1 = pow_ll_checked(p, j) % g.pl;
      long long a2 = pow_ll_checked(p, i + j) % g.plk;
      if (tab.full_orbit[a1 * g.plk + a2] == oid)
        return HeisLocalParams{p, l, k, j, i};
    }
  fail(Kind::Internal, "orbit not hit by any (j, i) base point");
}

mpz_class h_local_degree(const HeisLocalParams& c, const Budget& budget) {
  GlkParams g = make_glk_params(c.p, c.l, c.k);
  const OrbitTables& tab = orbit_tables(c.p, c.l, c.k, budget);
  long long a1 = pow_ll_checked(c.p, c.j) % g.pl;
  long long a2 = pow_ll_checked(c.p, c.i + c.j) % g.plk;
  long long orb = tab.full_size[tab.full_orbit[a1 * g.plk + a2]];
  return gl_degree(GlCoset{mpz_ll(g.pl), mpz_ll(g.plk)}) * mpz_ll(g.pl) *
         mpz_ll(g.plk) * mpz_ll(orb);
}

std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>>
h_local_param_collisions(long long p, int l, int k, const Budget& budget) {
  GlkParams g = make_glk_params(p, l, k);
  const OrbitTables& tab = orbit_tables(p, l, k, budget);
  std::map<int32_t, std::pair<int, int>> first;
  std::vector<std::pair<std::pair<int, int>, std::pair<int, int>>> out;
  for (int j = 0; j <= l; j++)
    for (int i = 0; i <= k; i++) {
      long long a1 = pow_ll_checked(p, j) % g.pl;
      long long a2 = pow_ll_checked(p, i + j) % g.plk;
      int32_t oid = tab.full_orbit[a1 * g.plk + a2];
      auto [pos, fresh] = first.try_emplace(oid, std::make_pair(j, i));
      if (!fresh) out.push_back({pos->second, {j, i}});
    }
  return out;
}

HeisElement h_local_representative(const HeisLocalParams& c) {
  long long pl = pow_ll_checked(c.p, c.l);
  long long plk = pow_ll_checked(c.p, c.l + c.k);
  return HeisElement{IntMatrix::diag({mpz_ll(pl), mpz_ll(plk)}),
                     {mpz_ll(pow_ll_checked(c.p, c.j) % pl),
                      mpz_ll(pow_ll_checked(c.p, c.i + c.j) % plk)}};
}

namespace {

std::vector<HeisElement> filtered_cosets(
    long long d1, long long d2, const Budget& budget,
    const std::function<bool(long long, long long)>& keep_transported) {
  std::vector<IntMatrix> mats =
      gl_left_cosets(GlCoset{mpz_ll(d1), mpz_ll(d2)}, budget);
  long long n = d1 * d2;
  if ((__int128)mats.size() * n * n > budget.points)
    fail(Kind::SizeLimit, "left coset enumeration above budget");
  std::vector<HeisElement> out;
  for (const IntMatrix& m : mats) {
    SnfDecomposition s = snf(m);
    long long u00 = to_ll(mod_floor(s.u.at(0, 0), mpz_ll(d1)));
    long long u01 = to_ll(mod_floor(s.u.at(0, 1), mpz_ll(d1)));
    long long u10 = to_ll(mod_floor(s.u.at(1, 0), mpz_ll(d2)));
    long long u11 = to_ll(mod_floor(s.u.at(1, 1), mpz_ll(d2)));
    for (long long w1 = 0; w1 < n; w1++)
      for (long long w2 = 0; w2 < n; w2++) {
        long long t1 = mod_floor_ll(u00 * w1 + u01 * w2, d1);
        long long t2 = mod_floor_ll(u10 * w1 + u11 * w2, d2);
        if (keep_transported(t1, t2))
          out.push_back(HeisElement{m, {mpz_ll(w1), mpz_ll(w2)}});
      }
  }
  return out;
}

} // namespace

std::vector<HeisElement> h_left_cosets(const HeisDoubleCoset& c,
                                       const Budget& budget) {
  const HeisTypeTable& tab = heis_type_table(c.d1, c.d2, budget);
  long long target = c.v1 * c.d2 + c.v2;
  if (tab.canon[target] != target)
    fail(Kind::InvalidInput, "vector class is not in canonical form");
  return filtered_cosets(c.d1, c.d2, budget, [&](long long t1, long long t2) {
    return tab.canon[t1 * c.d2 + t2] == target;
  });
}

std::vector<HeisElement> h_local_left_cosets(const HeisLocalParams& c,
                                             const Budget& budget) {
  GlkParams g = make_glk_params(c.p, c.l, c.k);
  const OrbitTables& tab = orbit_tables(c.p, c.l, c.k, budget);
  long long a1 = pow_ll_checked(c.p, c.j) % g.pl;
  long long a2 = pow_ll_checked(c.p, c.i + c.j) % g.plk;
  int32_t oid = tab.full_orbit[a1 * g.plk + a2];
  return filtered_cosets(g.pl, g.plk, budget, [&](long long t1, long long t2) {
    return tab.full_orbit[t1 * g.plk + t2] == oid;
  });
}

} // namespace hecke
