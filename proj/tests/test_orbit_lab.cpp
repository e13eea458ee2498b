#include <doctest.h>

#include <deque>
#include <map>
#include <set>

#include "heckelab/numeric.hpp"
#include "heckelab/orbit_lab.hpp"
#include "oracles.hpp"

using namespace hecke;
using namespace hecke::testing;

namespace {

std::set<GlkElem> close_gens(const GlkParams& g,
                             const std::vector<GlkElem>& gens) {
  std::set<GlkElem> seen;
  std::deque<GlkElem> queue;
  auto push = [&](const GlkElem& e) {
    if (seen.insert(e).second) queue.push_back(e);
  };
  push(glk_id(g));
  for (const GlkElem& e : gens) push(e);
  while (!queue.empty()) {
    GlkElem x = queue.front();
    queue.pop_front();
    for (const GlkElem& e : gens) push(glk_mul(g, x, e));
  }
  return seen;
}

long long apply_point(const GlkParams& g, const GlkElem& e, long long idx) {
  long long v1 = idx / g.plk, v2 = idx % g.plk;
  long long w1 = g.pl == 1 ? 0 : mod_floor_ll(e.a * v1 + e.b * v2, g.pl);
  long long w2 = mod_floor_ll(e.c * v1 + e.d * v2, g.plk);
  return w1 * g.plk + w2;
}

bool det_is_pm1(const GlkParams& g, const GlkElem& e) {
  long long d = glk_det(g, e);
  return g.pl == 1 || d == 1 || d == g.pl - 1;
}

} // namespace

TEST_CASE("closed-form orders match full enumeration") {
  std::vector<std::array<int, 3>> cases = {{2, 0, 0}, {2, 1, 0}, {2, 0, 2},
                                           {2, 1, 1}, {2, 2, 2}, {3, 1, 1},
                                           {3, 0, 1}, {3, 1, 0}};
  for (auto [p, l, k] : cases) {
    GlkParams g = make_glk_params(p, l, k);
    std::vector<GlkElem> all = build_glk(p, l, k);
    CHECK((long long)all.size() == glk_order(g));
    long long det1 = 0, detpm = 0;
    for (const GlkElem& e : all) {
      REQUIRE(glk_is_valid(g, e));
      long long d = glk_det(g, e);
      if (g.pl == 1 || d == 1) ++det1;
      if (det_is_pm1(g, e)) ++detpm;
    }
    CHECK(det1 == glk_det1_order(g));
    CHECK(detpm == glk_detpm_order(g));
  }
  // spot values
  CHECK(glk_order(make_glk_params(2, 1, 1)) == 8);
  CHECK(glk_order(make_glk_params(2, 1, 0)) == 6);
  CHECK(glk_order(make_glk_params(3, 1, 0)) == 48);
  CHECK(glk_order(make_glk_params(2, 3, 6)) == 65536);
  CHECK(glk_order(make_glk_params(3, 2, 4)) == 236196);
  CHECK(glk_detpm_order(make_glk_params(3, 2, 4)) == 78732);
  CHECK(glk_det1_order(make_glk_params(3, 2, 4)) == 39366);
}

TEST_CASE("multiplication is associative and det is multiplicative") {
  for (auto [p, l, k] : std::vector<std::array<int, 3>>{{3, 1, 1}, {2, 2, 2}}) {
    GlkParams g = make_glk_params(p, l, k);
    std::vector<GlkElem> all = build_glk(p, l, k);
    Rng rng(99);
    for (int t = 0; t < 400; ++t) {
      const GlkElem& x = all[rand_range(rng, 0, (long long)all.size() - 1)];
      const GlkElem& y = all[rand_range(rng, 0, (long long)all.size() - 1)];
      const GlkElem& z = all[rand_range(rng, 0, (long long)all.size() - 1)];
      REQUIRE(glk_mul(g, glk_mul(g, x, y), z) ==
              glk_mul(g, x, glk_mul(g, y, z)));
      REQUIRE(glk_det(g, glk_mul(g, x, y)) ==
              mod_floor_ll(glk_det(g, x) * glk_det(g, y), g.pl));
      REQUIRE(glk_mul(g, x, glk_id(g)) == x);
      REQUIRE(glk_mul(g, glk_id(g), x) == x);
    }
  }
}

TEST_CASE("generator sets close to exactly the intended subgroups") {
  std::vector<std::array<int, 3>> cases = {{2, 0, 0}, {2, 1, 0}, {2, 0, 2},
                                           {2, 1, 1}, {2, 2, 2}, {3, 1, 1},
                                           {3, 0, 1}, {3, 1, 0}};
  for (auto [p, l, k] : cases) {
    GlkParams g = make_glk_params(p, l, k);
    std::vector<GlkElem> all = build_glk(p, l, k);
    std::set<GlkElem> full_expected(all.begin(), all.end());
    std::set<GlkElem> det1_expected, detpm_expected;
    for (const GlkElem& e : all) {
      if (g.pl == 1 || glk_det(g, e) == 1) det1_expected.insert(e);
      if (det_is_pm1(g, e)) detpm_expected.insert(e);
    }
    CHECK(close_gens(g, glk_generators(g)) == full_expected);
    CHECK(close_gens(g, glk_det1_generators(g)) == det1_expected);
    CHECK(close_gens(g, glk_detpm_generators(g)) == detpm_expected);
  }
  // for the largest grid corner check the sizes only
  GlkParams g = make_glk_params(3, 2, 4);
  CHECK((long long)close_gens(g, glk_generators(g)).size() == glk_order(g));
  CHECK((long long)close_gens(g, glk_detpm_generators(g)).size() ==
        glk_detpm_order(g));
  CHECK((long long)close_gens(g, glk_det1_generators(g)).size() ==
        glk_det1_order(g));
}

TEST_CASE("orbit tables agree with the materialized action") {
  Budget budget;
  for (auto [p, l, k] : std::vector<std::array<int, 3>>{{2, 1, 1},
                                                        {3, 1, 1},
                                                        {2, 2, 2},
                                                        {2, 1, 2}}) {
    GlkParams g = make_glk_params(p, l, k);
    const OrbitTables& tab = orbit_tables(p, l, k, budget);
    std::vector<GlkElem> all = build_glk(p, l, k);
    REQUIRE(tab.npoints == g.pl * g.plk);
    for (long long v = 0; v < tab.npoints; ++v) {
      std::set<long long> full, det1;
      for (const GlkElem& e : all) {
        long long w = apply_point(g, e, v);
        if (g.pl == 1 || glk_det(g, e) == 1) det1.insert(w);
        full.insert(w);
      }
      // the table id is the least point of the orbit, and sizes match
      REQUIRE(tab.full_rep[tab.full_orbit[v]] == *full.begin());
      REQUIRE(tab.full_size[tab.full_orbit[v]] == (long long)full.size());
      REQUIRE(tab.det1_rep[tab.det1_orbit[v]] == *det1.begin());
      REQUIRE(tab.det1_size[tab.det1_orbit[v]] == (long long)det1.size());
      // ids separate: two points share an id iff they share an orbit
      for (long long w : full) REQUIRE(tab.full_orbit[w] == tab.full_orbit[v]);
      for (long long w : det1) REQUIRE(tab.det1_orbit[w] == tab.det1_orbit[v]);
    }
  }
}

TEST_CASE("base points cover every orbit with no parameter collisions") {
  Budget budget;
  for (long long p : {2, 3}) {
    for (int l = 0; l <= 2; ++l) {
      for (int k = 0; k <= 3; ++k) {
        GlkParams g = make_glk_params(p, (int)l, k);
        const OrbitTables& tab = orbit_tables(p, l, k, budget);
        std::set<int32_t> base_ids, all_ids;
        for (int j = 0; j <= l; ++j) {
          for (int i = 0; i <= k; ++i) {
            long long v1 = pow_ll_checked(p, j) % g.pl;
            long long v2 = pow_ll_checked(p, i + j) % g.plk;
            base_ids.insert(tab.full_orbit[v1 * g.plk + v2]);
          }
        }
        for (long long v = 0; v < tab.npoints; ++v)
          all_ids.insert(tab.full_orbit[v]);
        CHECK(base_ids == all_ids);
        CHECK((long long)all_ids.size() == (long long)(l + 1) * (k + 1));
        CHECK(h_local_param_collisions(p, l, k, budget).empty());
      }
    }
  }
}

TEST_CASE("unit filtration index by subgroup closure") {
  CHECK(index_u0_pm_un(3, 2, 2) == 3);
  CHECK(index_u0_pm_un(2, 3, 3) == 2);
  CHECK(index_u0_pm_un(5, 2, 2) == 10);
  CHECK(index_u0_pm_un(2, 3, 2) == 1);
  CHECK(index_u0_pm_un(2, 1, 1) == 1);
  CHECK(index_u0_pm_un(3, 1, 0) == 1);
  CHECK(index_u0_pm_un(7, 1, 1) == 3);
  CHECK(index_u0_pm_un(2, 0, 0) == 1);
}

TEST_CASE("orbit report on hand-checked small cases") {
  Budget budget;
  // at (2,1,1) the four base points have orbit sizes 4, 2, 1, 1
  std::map<std::pair<int, int>, long long> expected = {
      {{0, 0}, 4}, {{0, 1}, 2}, {{1, 0}, 1}, {{1, 1}, 1}};
  long long total = 0;
  for (const auto& [ji, size] : expected) {
    OrbitReport r = orbit_report(2, 1, 1, ji.second, ji.first, budget);
    CHECK(r.group_order == 8);
    CHECK(r.orbit_size == size);
    CHECK(r.stab_size * r.orbit_size == r.group_order);
    CHECK(r.fiber_count == 1);
    CHECK(r.match);
    total += size;
  }
  CHECK(total == 8); // the orbits partition Z/2 x Z/4
}

TEST_CASE("orbit report fiber counts on the headline parameters") {
  Budget budget;
  OrbitReport r = orbit_report(3, 2, 4, 2, 0, budget);
  CHECK(r.fiber_count == 3);
  CHECK(r.formula_count == 3);
  CHECK(r.n == 2);
  CHECK(r.match);
  r = orbit_report(2, 3, 6, 3, 0, budget);
  CHECK(r.fiber_count == 2);
  CHECK(r.formula_count == 2);
  CHECK(r.match);
}

TEST_CASE("integral matrices reduce onto the finite quotients") {
  Budget budget;
  SurjectivityReport r = integral_surjectivity_check(2, 1, 1, 32, budget);
  CHECK(r.surjective);
  CHECK(r.closure_size == r.detpm_order);
  CHECK(r.det1_closure_size == r.det1_order);
  // at (3,2,4) the lower-left entry needs magnitude 81, so the bound must
  // escalate twice before the closure fills up
  r = integral_surjectivity_check(3, 2, 4, 32, budget);
  CHECK(r.surjective);
  CHECK(r.initial_bound == 32);
  CHECK(r.final_bound == 128);
  CHECK(r.closure_size == 78732);
  CHECK(r.det1_closure_size == 39366);
}
