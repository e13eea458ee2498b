#include "heckelab/orbit_lab.hpp"

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <tuple>

#include "heckelab/numeric.hpp"

namespace hecke {

GlkParams make_glk_params(long long p, int l, int k) {
  if (!is_prime_ll(p)) fail(Kind::InvalidInput, "p must be prime");
  if (l < 0 || k < 0) fail(Kind::InvalidInput, "l, k must be >= 0");
  GlkParams g;
  g.p = p;
  g.l = l;
  g.k = k;
  g.pl = pow_ll_checked(p, l);
  g.plk = pow_ll_checked(p, l + k);
  g.pk = pow_ll_checked(p, k);
  return g;
}

GlkElem glk_id(const GlkParams& g) {
  return GlkElem{1 % g.pl, 0, 0, 1 % g.plk};
}

bool glk_is_valid(const GlkParams& g, const GlkElem& e) {
  if (e.a < 0 || e.a >= g.pl || e.b < 0 || e.b >= g.pl) return false;
  if (e.c < 0 || e.c >= g.plk || e.d < 0 || e.d >= g.plk) return false;
  if (e.c % g.pk != 0) return false;
  // invertibility: for l >= 1 the determinant is visible mod p; for l = 0
  // rows a, b carry no data and the condition degenerates to d being a unit
  if (g.l >= 1) return (e.a * e.d - e.b * e.c) % g.p != 0;
  if (g.k >= 1) return e.d % g.p != 0;
  return true;
}

GlkElem glk_mul(const GlkParams& g, const GlkElem& x, const GlkElem& y) {
  GlkElem z;
  z.a = mod_floor_ll(x.a * y.a + x.b * y.c, g.pl);
  z.b = mod_floor_ll(x.a * y.b + x.b * y.d, g.pl);
  z.c = mod_floor_ll(x.c * y.a + x.d * y.c, g.plk);
  z.d = mod_floor_ll(x.c * y.b + x.d * y.d, g.plk);
  return z;
}

long long glk_det(const GlkParams& g, const GlkElem& e) {
  return mod_floor_ll(e.a * e.d - e.b * e.c, g.pl);
}

long long glk_order(const GlkParams& g) {
  long long p = g.p;
  if (g.l == 0 && g.k == 0) return 1;
  if (g.l == 0) return euler_phi_prime_power(p, g.k);
  if (g.k == 0)
    return pow_ll_checked(p, 4 * g.l - 3) * (p - 1) * (p - 1) * (p + 1);
  return pow_ll_checked(p, 4 * g.l + g.k - 2) * (p - 1) * (p - 1);
}

long long glk_det1_order(const GlkParams& g) {
  // det maps onto the units mod p^l (the diagonal torus already does)
  return glk_order(g) / euler_phi_prime_power(g.p, g.l);
}

long long glk_detpm_order(const GlkParams& g) {
  return glk_det1_order(g) * (g.pl > 2 ? 2 : 1);
}

std::vector<GlkElem> build_glk(long long p, int l, int k) {
  GlkParams g = make_glk_params(p, l, k);
  long long tuples = g.pl * g.pl * g.pl * g.plk;
  if (tuples > 10'000'000)
    fail(Kind::SizeLimit, "group enumeration needs " + std::to_string(tuples) +
                              " tuples (cap 10^7)");
  std::vector<GlkElem> out;
  for (long long a = 0; a < g.pl; a++)
    for (long long b = 0; b < g.pl; b++)
      for (long long cc = 0; cc < g.pl; cc++) {
        long long c = mod_floor_ll(cc * g.pk, g.plk);
        for (long long d = 0; d < g.plk; d++) {
          GlkElem e{a, b, c, d};
          if (glk_is_valid(g, e)) out.push_back(e);
        }
      }
  return out;
}

namespace {

void push_unique(std::vector<GlkElem>& v, const GlkParams& g, GlkElem e) {
  if (!glk_is_valid(g, e)) fail(Kind::Internal, "generator outside the group");
  if (e == glk_id(g)) return;
  for (const auto& x : v)
    if (x == e) return;
  v.push_back(e);
}

} // namespace

std::vector<GlkElem> glk_generators(const GlkParams& g) {
  std::vector<GlkElem> out;
  push_unique(out, g, GlkElem{1 % g.pl, 1 % g.pl, 0, 1 % g.plk});
  push_unique(out, g, GlkElem{1 % g.pl, 0, g.pk % g.plk, 1 % g.plk});
  for (long long u : unit_group_generators(g.p, g.l))
    push_unique(out, g, GlkElem{u, 0, 0, 1 % g.plk});
  for (long long u : unit_group_generators(g.p, g.l + g.k))
    push_unique(out, g, GlkElem{1 % g.pl, 0, 0, u});
  return out;
}

std::vector<GlkElem> glk_det1_generators(const GlkParams& g) {
  if (g.l == 0) return glk_generators(g); // det mod p^0 is trivially 1
  std::vector<GlkElem> out;
  push_unique(out, g, GlkElem{1, 1 % g.pl, 0, 1 % g.plk});
  push_unique(out, g, GlkElem{1, 0, g.pk % g.plk, 1 % g.plk});
  // diag(e^-1 mod p^l, e): the det = 1 part of the diagonal torus
  for (long long u : unit_group_generators(g.p, g.l + g.k))
    push_unique(out, g, GlkElem{inv_mod_ll(u, g.pl), 0, 0, u});
  return out;
}

std::vector<GlkElem> glk_detpm_generators(const GlkParams& g) {
  std::vector<GlkElem> out = glk_det1_generators(g);
  if (g.l >= 1)
    push_unique(out, g, GlkElem{1, 0, 0, g.plk - 1}); // diag(1,-1), det = -1
  return out;
}

namespace {

inline long long act1(const GlkParams& g, const GlkElem& e, long long v1,
                      long long v2) {
  return mod_floor_ll(e.a * v1 + e.b * v2, g.pl);
}
inline long long act2(const GlkParams& g, const GlkElem& e, long long v1,
                      long long v2) {
  return mod_floor_ll(e.c * v1 + e.d * v2, g.plk);
}
inline long long point_index(const GlkParams& g, long long v1, long long v2) {
  return v1 * g.plk + v2;
}

// orbit ids by BFS from ascending seeds; rep of each orbit = its seed = the
// lexicographically least member
void fill_orbits(const GlkParams& g, const std::vector<GlkElem>& gens,
                 std::vector<int32_t>& orbit, std::vector<long long>& size,
                 std::vector<long long>& rep) {
  long long n = g.pl * g.plk;
  orbit.assign(n, -1);
  std::vector<long long> stack;
  for (long long seed = 0; seed < n; seed++) {
    if (orbit[seed] >= 0) continue;
    int32_t id = (int32_t)size.size();
    orbit[seed] = id;
    rep.push_back(seed);
    long long count = 1;
    stack.push_back(seed);
    while (!stack.empty()) {
      long long v = stack.back();
      stack.pop_back();
      long long v1 = v / g.plk, v2 = v % g.plk;
      for (const auto& e : gens) {
        long long w = point_index(g, act1(g, e, v1, v2), act2(g, e, v1, v2));
        if (orbit[w] < 0) {
          orbit[w] = id;
          count++;
          stack.push_back(w);
        }
      }
    }
    size.push_back(count);
  }
}

std::map<std::tuple<long long, int, int>, std::unique_ptr<OrbitTables>>&
table_cache() {
  static std::map<std::tuple<long long, int, int>, std::unique_ptr<OrbitTables>>
      cache;
  return cache;
}
std::mutex table_mutex;

} // namespace

const OrbitTables& orbit_tables(long long p, int l, int k, const Budget& budget) {
  std::lock_guard<std::mutex> lock(table_mutex);
  auto key = std::make_tuple(p, l, k);
  auto it = table_cache().find(key);
  if (it != table_cache().end()) return *it->second;

  GlkParams g = make_glk_params(p, l, k);
  long long n = g.pl * g.plk;
  if (n > budget.points)
    fail(Kind::SizeLimit, "point space of size " + std::to_string(n) +
                              " above budget");
  auto t = std::make_unique<OrbitTables>();
  t->prm = g;
  t->npoints = n;
  fill_orbits(g, glk_generators(g), t->full_orbit, t->full_size, t->full_rep);
  fill_orbits(g, glk_det1_generators(g), t->det1_orbit, t->det1_size,
              t->det1_rep);
  const OrbitTables& ref = *t;
  table_cache()[key] = std::move(t);
  return ref;
}

long long index_u0_pm_un(long long p, int l, int n) {
  if (l == 0 || n <= 0) return 1;
  if (n > l) n = l;
  long long m = pow_ll_checked(p, l);
  std::vector<long long> gens = {m - 1};
  long long pn = pow_ll_checked(p, n);
  for (long long t = 1 + pn; t < m; t += pn) gens.push_back(t);
  long long sub = (long long)unit_subgroup_closure(gens, m).size();
  return euler_phi_prime_power(p, l) / sub;
}

OrbitReport orbit_report(long long p, int l, int k, int i, int j,
                         const Budget& budget) {
  if (j < 0 || j > l || i < 0 || i > k)
    fail(Kind::InvalidInput, "need 0 <= j <= l and 0 <= i <= k");
  GlkParams g = make_glk_params(p, l, k);
  const OrbitTables& tab = orbit_tables(p, l, k, budget);

  OrbitReport r;
  r.p = p;
  r.l = l;
  r.k = k;
  r.i = i;
  r.j = j;
  r.group_order = glk_order(g);

  long long a1 = pow_ll_checked(p, j) % g.pl;
  long long a2 = pow_ll_checked(p, i + j) % g.plk;
  long long aidx = point_index(g, a1, a2);
  int32_t oid = tab.full_orbit[aidx];
  r.orbit_size = tab.full_size[oid];

  // stabilizer of (p^j, p^(i+j)) by direct congruence scan, no group tables:
  // row-1 fixing means a = 1 - b p^i mod p^(l-j) (p^j lifts of a), row-2
  // fixing means d = 1 - p^(k-i) c' mod p^(l+k-i-j) (p^(i+j) lifts of d),
  // where c = p^k c'; b and c' range freely mod p^l
  long long m1 = pow_ll_checked(p, l - j);
  long long m2 = pow_ll_checked(p, l + k - i - j);
  long long lifts1 = pow_ll_checked(p, j);
  long long lifts2 = pow_ll_checked(p, i + j);
  long long cost = g.pl * g.pl * lifts1 * lifts2;
  if (cost > budget.tuples)
    fail(Kind::BudgetExhausted, "stabilizer scan needs " +
                                    std::to_string(cost) + " tuples");
  long long pi = pow_ll_checked(p, i);
  long long pki = pow_ll_checked(p, k - i);
  long long stab = 0;
  std::vector<char> det_seen(g.pl, 0);
  for (long long b = 0; b < g.pl; b++) {
    long long a0 = mod_floor_ll(1 - b * pi, m1);
    for (long long cp = 0; cp < g.pl; cp++) {
      long long d0 = mod_floor_ll(1 - pki * cp, m2);
      long long bc = b * mod_floor_ll(cp * g.pk, g.plk);
      for (long long t = 0; t < lifts1; t++) {
        long long a = a0 + t * m1;
        for (long long s = 0; s < lifts2; s++) {
          long long d = d0 + s * m2;
          long long det = mod_floor_ll(a * d - bc, g.pl);
          if (g.l >= 1 && det % p == 0) continue;
          if (g.l == 0 && g.k >= 1 && d % p == 0) continue;
          stab++;
          det_seen[det] = 1;
        }
      }
    }
  }
  r.stab_size = stab;
  if (r.orbit_size * r.stab_size != r.group_order)
    fail(Kind::Internal, "orbit-stabilizer count mismatch");

  // least n with det image = U_n as sets (the filtration repeats at p = 2,
  // so set equality, not the exponent, is the invariant)
  int n_seen = -1;
  for (int n = 0; n <= l && n_seen < 0; n++) {
    long long pn = pow_ll_checked(p, n);
    bool same = true;
    for (long long u = 0; u < g.pl && same; u++) {
      bool in_un = (l == 0) || (u % p != 0 && u % pn == 1 % pn);
      if ((det_seen[u] != 0) != in_un) same = false;
    }
    if (same) n_seen = n;
  }
  if (n_seen < 0)
    fail(Kind::FormulaMismatch, "stabilizer det image is not a filtration step");
  r.n = n_seen;

  int n_formula = std::min(i, std::min(k - i, l - j));
  long long pnf = pow_ll_checked(p, n_formula);
  bool det_match = true;
  for (long long u = 0; u < g.pl && det_match; u++) {
    bool in_un = (l == 0) || (u % p != 0 && u % pnf == 1 % pnf);
    if ((det_seen[u] != 0) != in_un) det_match = false;
  }

  // orbits of the det = +-1 part inside the G-orbit: det = 1 orbits glued
  // by diag(1,-1), which normalizes the kernel
  std::set<int32_t> merged;
  for (long long v = 0; v < tab.npoints; v++) {
    if (tab.full_orbit[v] != oid) continue;
    int32_t id = tab.det1_orbit[v];
    long long r1 = tab.det1_rep[id] / g.plk, r2 = tab.det1_rep[id] % g.plk;
    int32_t partner = tab.det1_orbit[point_index(g, r1, mod_floor_ll(-r2, g.plk))];
    merged.insert(std::min(id, partner));
  }
  r.fiber_count = (long long)merged.size();
  r.formula_count = index_u0_pm_un(p, l, n_formula);
  r.match = det_match && r.fiber_count == r.formula_count;
  return r;
}

namespace {

long long encode(const GlkParams& g, const GlkElem& e) {
  return ((e.a * g.pl + e.b) * g.pl + e.c / g.pk) * g.plk + e.d;
}

// closure of gens inside G by BFS over encoded elements
std::vector<GlkElem> close_subgroup(const GlkParams& g,
                                    const std::vector<GlkElem>& gens,
                                    std::vector<char>& visited,
                                    long long* steps, long long max_steps) {
  std::fill(visited.begin(), visited.end(), 0);
  std::vector<GlkElem> elems = {glk_id(g)};
  visited[encode(g, elems[0])] = 1;
  for (size_t head = 0; head < elems.size(); head++) {
    GlkElem x = elems[head];
    for (const auto& gen : gens) {
      if (++*steps > max_steps)
        fail(Kind::BudgetExhausted, "subgroup closure exceeded budget");
      GlkElem y = glk_mul(g, x, gen);
      long long key = encode(g, y);
      if (!visited[key]) {
        visited[key] = 1;
        elems.push_back(y);
      }
    }
  }
  return elems;
}

} // namespace

SurjectivityReport integral_surjectivity_check(long long p, int l, int k,
                                               long long entry_bound,
                                               const Budget& budget) {
  GlkParams g = make_glk_params(p, l, k);
  long long space = g.pl * g.pl * g.pl * g.plk;
  if (space > 10'000'000)
    fail(Kind::SizeLimit, "element space too large for closure bookkeeping");

  SurjectivityReport rep;
  rep.p = p;
  rep.l = l;
  rep.k = k;
  rep.initial_bound = entry_bound;
  rep.detpm_order = glk_detpm_order(g);
  rep.det1_order = glk_det1_order(g);

  std::vector<char> visited(space);
  long long steps = 0;
  long long bound = entry_bound;
  for (;;) {
    // integer matrices [[a,b],[c,d]], |entries| <= bound, det = +-1, p^k | c:
    // c = 0 forces a = d = +-1 with b free; c != 0 fixes b = (ad -+ 1)/c
    std::set<std::pair<GlkElem, long long>> seeds; // reduced element, det
    auto add = [&](long long a, long long b, long long c, long long d) {
      if (std::llabs(b) > bound) return;
      GlkElem e{mod_floor_ll(a, g.pl), mod_floor_ll(b, g.pl),
                mod_floor_ll(c, g.plk), mod_floor_ll(d, g.plk)};
      seeds.insert({e, a * d - b * c});
    };
    for (long long a = -1; a <= 1; a += 2)
      for (long long d = -1; d <= 1; d += 2)
        for (long long b = -bound; b <= bound; b++) add(a, b, 0, d);
    for (long long c = g.pk; c <= bound; c += g.pk)
      for (long long sc : {c, -c})
        for (long long a = -bound; a <= bound; a++)
          for (long long d = -bound; d <= bound; d++) {
            if (++steps > budget.tuples)
              fail(Kind::BudgetExhausted, "matrix enumeration exceeded budget");
            long long ad = a * d;
            if ((ad - 1) % sc == 0) add(a, (ad - 1) / sc, sc, d);
            if ((ad + 1) % sc == 0) add(a, (ad + 1) / sc, sc, d);
          }

    // grow each generator list only by seeds outside the closure so far;
    // close_subgroup leaves `visited` marking exactly the current closure
    auto closure_of = [&](bool det1_only) {
      std::fill(visited.begin(), visited.end(), 0);
      visited[encode(g, glk_id(g))] = 1;
      std::vector<GlkElem> gens;
      std::vector<GlkElem> closure = {glk_id(g)};
      for (const auto& [e, idet] : seeds) {
        if (det1_only && idet != 1) continue;
        if (visited[encode(g, e)]) continue;
        gens.push_back(e);
        closure = close_subgroup(g, gens, visited, &steps, budget.tuples);
      }
      return closure;
    };
    std::vector<GlkElem> closure = closure_of(false);
    std::vector<GlkElem> det1_closure = closure_of(true);

    rep.final_bound = bound;
    rep.seed_matrices = (long long)seeds.size();
    rep.closure_size = (long long)closure.size();
    rep.det1_closure_size = (long long)det1_closure.size();
    rep.surjective = rep.closure_size == rep.detpm_order &&
                     rep.det1_closure_size == rep.det1_order;
    if (rep.surjective) return rep;
    bound *= 2;
  }
}

} // namespace hecke
