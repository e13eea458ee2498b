#include "heckelab/heis_hecke.hpp"

#include <algorithm>
#include <random>
#include <set>

#include "heckelab/numeric.hpp"
#include "heckelab/orbit_lab.hpp"

namespace hecke {

namespace {

void erase_zero_terms(std::map<HeisDoubleCoset, mpz_class>& m) {
  for (auto it = m.begin(); it != m.end();)
    it = it->second == 0 ? m.erase(it) : std::next(it);
}
void erase_zero_terms(std::map<HeisLocalParams, mpz_class>& m) {
  for (auto it = m.begin(); it != m.end();)
    it = it->second == 0 ? m.erase(it) : std::next(it);
}
void erase_zero_terms(std::map<AdelicCoset, mpz_class>& m) {
  for (auto it = m.begin(); it != m.end();)
    it = it->second == 0 ? m.erase(it) : std::next(it);
}

long long mul_ll_checked(long long a, long long b) {
  __int128 r = (__int128)a * b;
  if (r > (__int128)9'000'000'000'000'000'000LL)
    fail(Kind::SizeLimit, "divisor chain product overflows");
  return (long long)r;
}

bool params_identity(const HeisLocalParams& c) { return c.l == 0 && c.k == 0; }

void validate_params(const HeisLocalParams& c) {
  if (!is_prime_ll(c.p)) fail(Kind::InvalidInput, "component prime not prime");
  if (c.l < 0 || c.k < 0 || c.j < 0 || c.j > c.l || c.i < 0 || c.i > c.k)
    fail(Kind::InvalidInput, "local parameters out of range");
}

HeisElement random_unit(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 3), small(-2, 2);
  IntMatrix x = IntMatrix::identity(2);
  for (int t = 0; t < 6; t++) {
    IntMatrix f = IntMatrix::identity(2);
    switch (pick(rng)) {
      case 0: f.at(0, 1) = small(rng); break;
      case 1: f.at(1, 0) = small(rng); break;
      case 2: f.at(1, 1) = -1; break;
      default: f = IntMatrix::from_rows({{0, 1}, {1, 0}}); break;
    }
    x = mat_mul(x, f);
  }
  mpz_class u1 = small(rng), u2 = small(rng);
  return HeisElement{x, {u1, u2}};
}

std::map<HeisElement, long long> product_counts(
    std::vector<HeisElement> xs, std::vector<HeisElement> ys,
    const Budget& budget, std::optional<uint64_t> seed) {
  if ((__int128)xs.size() * ys.size() > budget.products)
    fail(Kind::BudgetExhausted,
         "product needs " + std::to_string(xs.size()) + " x " +
             std::to_string(ys.size()) + " representative pairs");
  if (seed) {
    std::mt19937_64 rng(*seed);
    for (HeisElement& x : xs) x = h_mul(random_unit(rng), x);
    for (HeisElement& y : ys) y = h_mul(random_unit(rng), y);
  }
  std::map<HeisElement, long long> counts;
  for (const HeisElement& x : xs)
    for (const HeisElement& y : ys) counts[h_left_canonical(h_mul(x, y))]++;
  return counts;
}

// fold one basis product into acc: group the counted left cosets by double
// coset, insisting the count is constant on each group and that each group
// has exactly degree-many cosets
template <class Key, class Canon, class Deg>
void add_basis_product(std::map<Key, mpz_class>& acc, const mpz_class& scale,
                       const std::vector<HeisElement>& xs,
                       const std::vector<HeisElement>& ys, Canon canon,
                       Deg deg, const Budget& budget,
                       std::optional<uint64_t> seed) {
  std::map<HeisElement, long long> counts =
      product_counts(xs, ys, budget, seed);
  std::map<Key, std::pair<long long, mpz_class>> groups;  // mult, coset count
  for (const auto& [g, m] : counts) {
    auto [pos, fresh] = groups.try_emplace(canon(g), std::make_pair(m, 0));
    if (!fresh && pos->second.first != m)
      fail(Kind::Internal, "multiplicity varies across left cosets");
    pos->second.second++;
  }
  for (const auto& [c, grp] : groups) {
    if (grp.second != deg(c))
      fail(Kind::Internal, "product does not cover a full double coset");
    acc[c] += scale * mpz_ll(grp.first);
  }
}

} // namespace

HeisHeckeElement hh_unit(Locality where, long long p) {
  HeisHeckeElement e;
  e.where = where;
  e.p = p;
  if (where == Locality::Global)
    e.gterms[HeisDoubleCoset{1, 1, 0, 0}] = 1;
  else
    e.lterms[HeisLocalParams{p, 0, 0, 0, 0}] = 1;
  return e;
}

HeisHeckeElement hh_class(const HeisDoubleCoset& c) {
  HeisHeckeElement e;
  e.gterms[c] = 1;
  return e;
}

HeisHeckeElement hh_local_class(const HeisLocalParams& c) {
  validate_params(c);
  HeisHeckeElement e;
  e.where = Locality::Local;
  e.p = c.p;
  e.lterms[c] = 1;
  return e;
}

HeisHeckeElement hh_add(const HeisHeckeElement& x, const HeisHeckeElement& y) {
  if (x.where != y.where || (x.where == Locality::Local && x.p != y.p))
    fail(Kind::LocalityMismatch, "cannot add across localities");
  HeisHeckeElement out = x;
  for (const auto& [c, m] : y.gterms) out.gterms[c] += m;
  for (const auto& [c, m] : y.lterms) out.lterms[c] += m;
  erase_zero_terms(out.gterms);
  erase_zero_terms(out.lterms);
  return out;
}

HeisHeckeElement hh_scale(const mpz_class& a, const HeisHeckeElement& x) {
  HeisHeckeElement out = x;
  if (a == 0) {
    out.gterms.clear();
    out.lterms.clear();
    return out;
  }
  for (auto& [c, m] : out.gterms) m *= a;
  for (auto& [c, m] : out.lterms) m *= a;
  return out;
}

HeisHeckeElement hecke_mul(const HeisHeckeElement& x, const HeisHeckeElement& y,
                           const Budget& budget,
                           std::optional<uint64_t> shuffle_seed) {
  if (x.where != y.where || (x.where == Locality::Local && x.p != y.p))
    fail(Kind::LocalityMismatch, "cannot multiply across localities");
  HeisHeckeElement out;
  out.where = x.where;
  out.p = x.p;
  if (x.where == Locality::Global) {
    for (const auto& [a, ma] : x.gterms) {
      std::vector<HeisElement> xs = h_left_cosets(a, budget);
      for (const auto& [b, mb] : y.gterms)
        add_basis_product(
            out.gterms, ma * mb, xs, h_left_cosets(b, budget),
            [&](const HeisElement& g) {
              return h_double_coset_canonical(g, budget);
            },
            [&](const HeisDoubleCoset& c) { return h_degree(c, budget); },
            budget, shuffle_seed);
    }
    erase_zero_terms(out.gterms);
  } else {
    for (const auto& [a, ma] : x.lterms) {
      std::vector<HeisElement> xs = h_local_left_cosets(a, budget);
      for (const auto& [b, mb] : y.lterms)
        add_basis_product(
            out.lterms, ma * mb, xs, h_local_left_cosets(b, budget),
            [&](const HeisElement& g) {
              return h_local_canonical(g, x.p, budget);
            },
            [&](const HeisLocalParams& c) {
              return h_local_degree(c, budget);
            },
            budget, shuffle_seed);
    }
    erase_zero_terms(out.lterms);
  }
  return out;
}

mpz_class hh_degree(const HeisHeckeElement& x, const Budget& budget) {
  mpz_class d = 0;
  for (const auto& [c, m] : x.gterms) d += m * h_degree(c, budget);
  for (const auto& [c, m] : x.lterms) d += m * h_local_degree(c, budget);
  return d;
}

AdelicCoset adelic_coset(const std::vector<HeisLocalParams>& components) {
  AdelicCoset c;
  for (const HeisLocalParams& q : components) {
    validate_params(q);
    if (params_identity(q)) continue;
    if (!c.try_emplace(q.p, q).second)
      fail(Kind::InvalidInput, "two components at one prime");
  }
  return c;
}

AdelicHeckeElement adelic_class(const AdelicCoset& c) {
  AdelicHeckeElement e;
  e.terms[c] = 1;
  return e;
}

AdelicHeckeElement adelic_add(const AdelicHeckeElement& x,
                              const AdelicHeckeElement& y) {
  AdelicHeckeElement out = x;
  for (const auto& [c, m] : y.terms) out.terms[c] += m;
  erase_zero_terms(out.terms);
  return out;
}

AdelicHeckeElement adelic_mul(const AdelicHeckeElement& x,
                              const AdelicHeckeElement& y,
                              const Budget& budget) {
  AdelicHeckeElement out;
  for (const auto& [s, ms] : x.terms)
    for (const auto& [t, mt] : y.terms) {
      std::vector<long long> primes;
      for (const auto& [p, q] : s) primes.push_back(p);
      for (const auto& [p, q] : t)
        if (!s.count(p)) primes.push_back(p);
      std::sort(primes.begin(), primes.end());

      std::vector<std::vector<std::pair<HeisLocalParams, mpz_class>>> factors;
      for (long long p : primes) {
        auto is = s.find(p);
        auto it = t.find(p);
        if (is != s.end() && it != t.end()) {
          HeisHeckeElement prod = hecke_mul(hh_local_class(is->second),
                                            hh_local_class(it->second), budget);
          factors.emplace_back(prod.lterms.begin(), prod.lterms.end());
        } else {
          factors.push_back({{is != s.end() ? is->second : it->second, 1}});
        }
      }

      std::vector<size_t> pick(factors.size(), 0);
      while (true) {
        AdelicCoset c;
        mpz_class coeff = ms * mt;
        for (size_t q = 0; q < factors.size(); q++) {
          const auto& [params, m] = factors[q][pick[q]];
          coeff *= m;
          if (!params_identity(params)) c[primes[q]] = params;
        }
        out.terms[c] += coeff;
        size_t q = 0;
        while (q < pick.size() && ++pick[q] == factors[q].size())
          pick[q++] = 0;
        if (q == pick.size()) break;
      }
    }
  erase_zero_terms(out.terms);
  return out;
}

mpz_class adelic_degree(const AdelicHeckeElement& x, const Budget& budget) {
  mpz_class d = 0;
  for (const auto& [c, m] : x.terms) {
    mpz_class t = m;
    for (const auto& [p, params] : c) t *= h_local_degree(params, budget);
    d += t;
  }
  return d;
}

std::vector<HeisDoubleCoset> eta_fiber(const AdelicCoset& c,
                                       const Budget& budget) {
  if (c.empty()) return {HeisDoubleCoset{1, 1, 0, 0}};
  struct Component {
    long long pl, plk;
    const OrbitTables* tab;
    int32_t oid;
  };
  std::vector<Component> comps;
  long long d1 = 1, d2 = 1;
  for (const auto& [p, params] : c) {
    validate_params(params);
    if (params.p != p)
      fail(Kind::InvalidInput, "component prime disagrees with its key");
    if (params_identity(params))
      fail(Kind::InvalidInput, "identity components must be omitted");
    GlkParams g = make_glk_params(p, params.l, params.k);
    const OrbitTables& tab = orbit_tables(p, params.l, params.k, budget);
    long long a1 = pow_ll_checked(p, params.j) % g.pl;
    long long a2 = pow_ll_checked(p, params.i + params.j) % g.plk;
    comps.push_back(
        {g.pl, g.plk, &tab, tab.full_orbit[a1 * g.plk + a2]});
    d1 = mul_ll_checked(d1, g.pl);
    d2 = mul_ll_checked(d2, g.plk);
  }
  const HeisTypeTable& tt = heis_type_table(d1, d2, budget);
  std::vector<HeisDoubleCoset> out;
  for (long long idx = 0; idx < d1 * d2; idx++) {
    if (tt.canon[idx] != idx) continue;
    long long v1 = idx / d2, v2 = idx % d2;
    bool ok = true;
    for (const Component& q : comps)
      if (q.tab->full_orbit[(v1 % q.pl) * q.plk + (v2 % q.plk)] != q.oid) {
        ok = false;
        break;
      }
    if (ok) out.push_back(HeisDoubleCoset{d1, d2, v1, v2});
  }
  if (out.empty()) fail(Kind::Internal, "empty fiber over an adelic coset");
  return out;
}

HeisHeckeElement eta_star(const AdelicHeckeElement& x, const Budget& budget) {
  HeisHeckeElement out;
  for (const auto& [c, m] : x.terms)
    for (const HeisDoubleCoset& g : eta_fiber(c, budget)) out.gterms[g] += m;
  erase_zero_terms(out.gterms);
  return out;
}

std::vector<HeisLocalParams> local_classes_at_exponent(long long p, int s,
                                                       const Budget& budget) {
  std::vector<HeisLocalParams> out;
  for (int l = 0; 2 * l <= s; l++) {
    int k = s - 2 * l;
    GlkParams g = make_glk_params(p, l, k);
    const OrbitTables& tab = orbit_tables(p, l, k, budget);
    std::set<int32_t> seen;
    for (int j = 0; j <= l; j++)
      for (int i = 0; i <= k; i++) {
        long long a1 = pow_ll_checked(p, j) % g.pl;
        long long a2 = pow_ll_checked(p, i + j) % g.plk;
        if (seen.insert(tab.full_orbit[a1 * g.plk + a2]).second)
          out.push_back(HeisLocalParams{p, l, k, j, i});
      }
  }
  return out;
}

NoncommuteWitness noncommutativity_witness(long long p, const Budget& budget) {
  if (!is_prime_ll(p)) fail(Kind::InvalidInput, "p must be prime");
  if (p > 7) fail(Kind::InvalidInput, "witness search is limited to p <= 7");
  std::vector<std::vector<HeisLocalParams>> by_exponent(5);
  for (int s = 1; s <= 4; s++)
    by_exponent[s] = local_classes_at_exponent(p, s, budget);
  long long skipped = 0;
  for (int tot = 2; tot <= 8; tot++)
    for (int sa = 1; sa < tot && sa <= 4; sa++) {
      int sb = tot - sa;
      if (sb < 1 || sb > 4) continue;
      for (const HeisLocalParams& a : by_exponent[sa])
        for (const HeisLocalParams& b : by_exponent[sb]) {
          HeisHeckeElement u = hh_local_class(a), v = hh_local_class(b);
          HeisHeckeElement uv, vu;
          try {
            uv = hecke_mul(u, v, budget);
            vu = hecke_mul(v, u, budget);
          } catch (const Error& e) {
            if (e.kind() == Kind::BudgetExhausted ||
                e.kind() == Kind::SizeLimit) {
              skipped++;
              continue;
            }
            throw;
          }
          if (uv != vu) return NoncommuteWitness{u, v, uv, vu};
        }
    }
  fail(Kind::WitnessNotFound,
       "no noncommuting pair found up to determinant p^4 (" +
           std::to_string(skipped) + " pairs over budget)");
}

Certificate nonsurjectivity_witness(long long p, const Budget& budget) {
  if (!is_prime_ll(p)) fail(Kind::InvalidInput, "p must be prime");
  Certificate cert;
  cert.p = p;
  cert.params = p == 2 ? HeisLocalParams{2, 3, 6, 0, 3}
                       : HeisLocalParams{p, 2, 4, 0, 2};
  int n = std::min({cert.params.i, cert.params.k - cert.params.i,
                    cert.params.l - cert.params.j});
  cert.fiber = eta_fiber(AdelicCoset{{p, cert.params}}, budget);
  cert.distinguished = cert.fiber.front();
  cert.fiber_size_expected = index_u0_pm_un(p, cert.params.l, n);
  cert.formula = "[U0 : +-U" + std::to_string(n) + "]";

  // scan every class of the same determinant: their fibers must partition
  // the global classes chain by chain, the distinguished class must appear
  // in exactly one fiber, and that fiber must have further members, so no
  // combination of image elements can weight it alone
  int s = 2 * cert.params.l + cert.params.k;
  std::vector<HeisLocalParams> all = local_classes_at_exponent(p, s, budget);
  bool partition_ok = true;
  long long hits = 0;
  for (int l = 0; 2 * l <= s; l++) {
    int k = s - 2 * l;
    GlkParams g = make_glk_params(p, l, k);
    long long covered = 0;
    for (const HeisLocalParams& q : all) {
      if (q.l != l) continue;
      std::vector<HeisDoubleCoset> fib =
          eta_fiber(AdelicCoset{{p, q}}, budget);
      cert.fibers_scanned++;
      covered += (long long)fib.size();
      long long in_fiber = (long long)std::count(fib.begin(), fib.end(),
                                                 cert.distinguished);
      hits += in_fiber;
      if (in_fiber > 0 && fib.size() > 1) cert.equal_weights_violation = true;
    }
    if (covered != heis_type_table(g.pl, g.plk, budget).classes)
      partition_ok = false;
  }
  cert.fiber_partition = partition_ok && hits == 1;

  bool members_match = true;
  for (const HeisDoubleCoset& c : cert.fiber) {
    HeisElement rep{IntMatrix::diag({mpz_ll(c.d1), mpz_ll(c.d2)}), {mpz_ll(c.v1), mpz_ll(c.v2)}};
    if (!(h_local_canonical(rep, p, budget) == cert.params))
      members_match = false;
  }
  cert.verified = cert.fiber_partition && cert.equal_weights_violation &&
                  members_match && cert.fiber_size_expected >= 2 &&
                  (long long)cert.fiber.size() == cert.fiber_size_expected;
  return cert;
}

} // namespace hecke
