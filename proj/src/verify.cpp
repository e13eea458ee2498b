#include "heckelab/verify.hpp"

#include <algorithm>
#include <chrono>
#include <set>
#include <sstream>

#include "heckelab/heis_hecke.hpp"
#include "heckelab/numeric.hpp"
#include "heckelab/orbit_lab.hpp"

namespace hecke {

namespace {

constexpr size_t kMaxDetails = 40;

void push_detail(SuiteResult& r, const std::string& line) {
  if (r.details.size() < kMaxDetails)
    r.details.push_back(line);
  else if (r.details.size() == kMaxDetails)
    r.details.push_back("(further detail lines suppressed)");
}

std::string params_str(const HeisLocalParams& c) {
  std::ostringstream os;
  os << c.p << ":(l=" << c.l << ",k=" << c.k << ",j=" << c.j << ",i=" << c.i
     << ")";
  return os.str();
}

bool budget_kind(Kind k) {
  return k == Kind::BudgetExhausted || k == Kind::SizeLimit;
}

// order of U_n inside the units mod p^l; the filtration is a chain, so two
// steps are the same subgroup exactly when their orders agree
long long filtration_order(long long p, int l, int n) {
  if (l == 0) return 1;
  if (n <= 0) return euler_phi_prime_power(p, l);
  return pow_ll_checked(p, l - std::min(n, l));
}

// detsa checks the determinant image step, cor47 the orbit count formula
SuiteResult grid_suite(bool det_image, const SuiteConfig& cfg) {
  SuiteResult r;
  r.suite = det_image ? "detsa" : "cor47";
  for (long long p : cfg.pset)
    for (int l = 0; l <= cfg.lmax; l++)
      for (int k = 0; k <= cfg.kmax; k++)
        for (int j = 0; j <= l; j++)
          for (int i = 0; i <= k; i++) {
            r.cases++;
            std::ostringstream id;
            id << "p=" << p << " l=" << l << " k=" << k << " j=" << j
               << " i=" << i;
            int ne = std::min({i, k - i, l - j});
            try {
              OrbitReport rep = orbit_report(p, l, k, i, j, cfg.budget);
              bool pass;
              std::string why;
              if (det_image) {
                pass = filtration_order(p, l, rep.n) ==
                       filtration_order(p, l, ne);
                why = "det image step n=" + std::to_string(rep.n) +
                      " expected " + std::to_string(ne);
              } else {
                pass = rep.fiber_count == rep.formula_count;
                why = "orbit count " + std::to_string(rep.fiber_count) +
                      " formula " + std::to_string(rep.formula_count);
              }
              if (pass)
                r.passed++;
              else {
                r.failed++;
                push_detail(r, "FAIL " + id.str() + ": " + why);
              }
            } catch (const Error& e) {
              if (budget_kind(e.kind())) {
                r.skipped++;
                push_detail(r, "SKIP " + id.str() + ": " + e.what());
              } else {
                r.failed++;
                push_detail(r, "FAIL " + id.str() + ": " + e.what());
              }
            }
          }
  return r;
}

SuiteResult surjectivity_suite(const SuiteConfig& cfg) {
  SuiteResult r;
  r.suite = "surjectivity";
  const std::vector<std::array<int, 3>> cases = {
      {2, 1, 1}, {2, 2, 2}, {3, 1, 1}, {3, 2, 4}};
  for (const auto& [p, l, k] : cases) {
    r.cases++;
    std::ostringstream id;
    id << "p=" << p << " l=" << l << " k=" << k;
    try {
      SurjectivityReport rep =
          integral_surjectivity_check(p, l, k, 32, cfg.budget);
      if (rep.surjective)
        r.passed++;
      else {
        r.failed++;
        push_detail(r, "FAIL " + id.str() + ": closure " +
                           std::to_string(rep.closure_size) + " of " +
                           std::to_string(rep.detpm_order) + ", det1 " +
                           std::to_string(rep.det1_closure_size) + " of " +
                           std::to_string(rep.det1_order));
      }
    } catch (const Error& e) {
      if (budget_kind(e.kind()))
        r.skipped++;
      else
        r.failed++;
      push_detail(r, std::string(budget_kind(e.kind()) ? "SKIP " : "FAIL ") +
                         id.str() + ": " + e.what());
    }
  }
  return r;
}

HeisHeckeElement embed(const HeisLocalParams& c, const Budget& budget) {
  return eta_star(adelic_class(adelic_coset({c})), budget);
}

SuiteResult commute_suite(const SuiteConfig& cfg) {
  SuiteResult r;
  r.suite = "commute";
  if (cfg.pset.size() < 2)
    fail(Kind::InvalidInput, "commute needs two primes in pset");
  long long p1 = cfg.pset[0], p2 = cfg.pset[1];
  if (p1 == p2) fail(Kind::InvalidInput, "commute needs two distinct primes");

  std::vector<HeisLocalParams> us, vs;
  for (int s = 1; s <= 4; s++) {
    for (const auto& c : local_classes_at_exponent(p1, s, cfg.budget))
      us.push_back(c);
    for (const auto& c : local_classes_at_exponent(p2, s, cfg.budget))
      vs.push_back(c);
  }

  struct Pair {
    long long cost;
    HeisLocalParams u, v;
  };
  std::vector<Pair> pairs;
  for (const HeisLocalParams& u : us)
    for (const HeisLocalParams& v : vs) {
      mpz_class cost =
          2 * h_local_degree(u, cfg.budget) * h_local_degree(v, cfg.budget);
      pairs.push_back(Pair{to_ll(cost), u, v});
    }
  std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
    if (a.cost != b.cost) return a.cost < b.cost;
    if (!(a.u == b.u)) return a.u < b.u;
    return a.v < b.v;
  });

  // cheap pairs first until the aggregate cap; the rest are reported skipped
  const long long cap = 10 * cfg.budget.products;
  long long spent = 0;
  for (const Pair& pr : pairs) {
    r.cases++;
    std::string id = params_str(pr.u) + " x " + params_str(pr.v);
    if (pr.cost / 2 > cfg.budget.products || spent + pr.cost > cap) {
      r.skipped++;
      push_detail(r, "SKIP " + id + ": cost " + std::to_string(pr.cost));
      continue;
    }
    try {
      HeisHeckeElement x = embed(pr.u, cfg.budget);
      HeisHeckeElement y = embed(pr.v, cfg.budget);
      HeisHeckeElement xy = hecke_mul(x, y, cfg.budget);
      HeisHeckeElement yx = hecke_mul(y, x, cfg.budget);
      spent += pr.cost;
      if (xy == yx)
        r.passed++;
      else {
        r.failed++;
        push_detail(r, "FAIL " + id + ": products differ");
      }
    } catch (const Error& e) {
      if (budget_kind(e.kind())) {
        r.skipped++;
        push_detail(r, "SKIP " + id + ": " + e.what());
      } else {
        r.failed++;
        push_detail(r, "FAIL " + id + ": " + e.what());
      }
    }
  }
  return r;
}

SuiteResult noncommute_suite(const SuiteConfig& cfg) {
  SuiteResult r;
  r.suite = "noncommute";
  NoncommuteWitness w;
  r.cases++;
  try {
    w = noncommutativity_witness(cfg.p, cfg.budget);
    r.passed++;
    push_detail(r, "witness " + params_str(w.u.lterms.begin()->first) + " , " +
                       params_str(w.v.lterms.begin()->first));
  } catch (const Error& e) {
    r.failed++;
    push_detail(r, std::string("FAIL witness search: ") + e.what());
    return r;
  }

  r.cases++;
  mpz_class du = hh_degree(w.u, cfg.budget) * hh_degree(w.v, cfg.budget);
  if (hh_degree(w.uv, cfg.budget) == du && hh_degree(w.vu, cfg.budget) == du)
    r.passed++;
  else {
    r.failed++;
    push_detail(r, "FAIL degree of products");
  }

  for (int t = 0; t < 3; t++) {
    r.cases++;
    HeisHeckeElement uv2 = hecke_mul(w.u, w.v, cfg.budget, cfg.seed + t);
    HeisHeckeElement vu2 = hecke_mul(w.v, w.u, cfg.budget, cfg.seed + 1000 + t);
    if (uv2 == w.uv && vu2 == w.vu)
      r.passed++;
    else {
      r.failed++;
      push_detail(r, "FAIL shuffled recomputation, seed offset " +
                         std::to_string(t));
    }
  }
  return r;
}

SuiteResult eta_mult_suite(const SuiteConfig& cfg) {
  SuiteResult r;
  r.suite = "eta-mult";

  r.cases++;
  if (eta_star(adelic_class(AdelicCoset{}), cfg.budget) ==
      hh_unit(Locality::Global))
    r.passed++;
  else {
    r.failed++;
    push_detail(r, "FAIL identity image");
  }

  for (long long p : cfg.pset) {
    std::vector<HeisLocalParams> all;
    for (int s = 1; s <= 4; s++)
      for (const auto& c : local_classes_at_exponent(p, s, cfg.budget))
        all.push_back(c);

    // fibers must be pairwise disjoint (injectivity), degree-preserving,
    // and sized by the unit-index formula
    std::set<HeisDoubleCoset> seen;
    for (const HeisLocalParams& c : all) {
      r.cases++;
      std::string id = params_str(c);
      try {
        std::vector<HeisDoubleCoset> fib =
            eta_fiber(adelic_coset({c}), cfg.budget);
        bool disjoint = true;
        for (const HeisDoubleCoset& g : fib)
          if (!seen.insert(g).second) disjoint = false;
        long long expect = index_u0_pm_un(
            p, c.l, std::min({c.i, c.k - c.i, c.l - c.j}));
        mpz_class dl = h_local_degree(c, cfg.budget), dg = 0;
        for (const HeisDoubleCoset& g : fib) dg += h_degree(g, cfg.budget);
        if (disjoint && (long long)fib.size() == expect && dl == dg)
          r.passed++;
        else {
          r.failed++;
          push_detail(r, "FAIL " + id + ": disjoint=" +
                             std::to_string(disjoint) + " size " +
                             std::to_string(fib.size()) + " expected " +
                             std::to_string(expect) + " degrees " +
                             dl.get_str() + "/" + dg.get_str());
        }
      } catch (const Error& e) {
        if (budget_kind(e.kind()))
          r.skipped++;
        else
          r.failed++;
        push_detail(r, std::string(budget_kind(e.kind()) ? "SKIP " : "FAIL ") +
                           id + ": " + e.what());
      }
    }

    // same-prime multiplicativity on the small classes
    std::vector<HeisLocalParams> small;
    for (int s = 1; s <= 2; s++)
      for (const auto& c : local_classes_at_exponent(p, s, cfg.budget))
        small.push_back(c);
    long long spent = 0;
    const long long cap = 2 * cfg.budget.products;
    for (const HeisLocalParams& u : small)
      for (const HeisLocalParams& v : small) {
        r.cases++;
        std::string id = params_str(u) + " x " + params_str(v);
        long long cost = to_ll(2 * h_local_degree(u, cfg.budget) *
                               h_local_degree(v, cfg.budget));
        if (spent + cost > cap) {
          r.skipped++;
          push_detail(r, "SKIP " + id + ": cost " + std::to_string(cost));
          continue;
        }
        spent += cost;
        HeisHeckeElement lhs = hecke_mul(embed(u, cfg.budget),
                                         embed(v, cfg.budget), cfg.budget);
        HeisHeckeElement prod = hecke_mul(hh_local_class(u), hh_local_class(v),
                                          cfg.budget);
        AdelicHeckeElement ad;
        for (const auto& [c, m] : prod.lterms)
          ad.terms[adelic_coset({c})] = m;
        if (lhs == eta_star(ad, cfg.budget))
          r.passed++;
        else {
          r.failed++;
          push_detail(r, "FAIL " + id + ": image of product differs");
        }
      }
  }

  // cross-prime multiplicativity through the adelic product
  if (cfg.pset.size() >= 2 && cfg.pset[0] != cfg.pset[1]) {
    std::vector<HeisLocalParams> a =
        local_classes_at_exponent(cfg.pset[0], 1, cfg.budget);
    std::vector<HeisLocalParams> b =
        local_classes_at_exponent(cfg.pset[1], 1, cfg.budget);
    for (const HeisLocalParams& u : a)
      for (const HeisLocalParams& v : b) {
        r.cases++;
        AdelicHeckeElement ad = adelic_mul(adelic_class(adelic_coset({u})),
                                           adelic_class(adelic_coset({v})),
                                           cfg.budget);
        HeisHeckeElement lhs = hecke_mul(embed(u, cfg.budget),
                                         embed(v, cfg.budget), cfg.budget);
        if (lhs == eta_star(ad, cfg.budget))
          r.passed++;
        else {
          r.failed++;
          push_detail(r, "FAIL " + params_str(u) + " x " + params_str(v) +
                             ": cross-prime image differs");
        }
      }
  }
  return r;
}

} // namespace

std::vector<std::string> suite_names() {
  return {"detsa", "cor47", "surjectivity", "commute", "noncommute",
          "eta-mult"};
}

SuiteResult run_suite(const std::string& name, const SuiteConfig& cfg) {
  auto t0 = std::chrono::steady_clock::now();
  SuiteResult r;
  if (name == "detsa")
    r = grid_suite(true, cfg);
  else if (name == "cor47")
    r = grid_suite(false, cfg);
  else if (name == "surjectivity")
    r = surjectivity_suite(cfg);
  else if (name == "commute")
    r = commute_suite(cfg);
  else if (name == "noncommute")
    r = noncommute_suite(cfg);
  else if (name == "eta-mult")
    r = eta_mult_suite(cfg);
  else
    fail(Kind::InvalidInput, "unknown suite: " + name);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                            t0)
                  .count();
  return r;
}

} // namespace hecke
