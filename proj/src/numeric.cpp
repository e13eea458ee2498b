#include "heckelab/numeric.hpp"

#include <algorithm>
#include <limits>
#include <set>

namespace hecke {

long long mod_floor_ll(long long a, long long m) {
  if (m <= 0) fail(Kind::Internal, "mod_floor_ll: modulus must be positive");
  long long r = a % m;
  if (r < 0) r += m;
  return r;
}

mpz_class mod_floor(const mpz_class& a, const mpz_class& m) {
  if (m <= 0) fail(Kind::Internal, "mod_floor: modulus must be positive");
  mpz_class r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

long long pow_ll_checked(long long base, int exp) {
  if (exp < 0) fail(Kind::Internal, "pow_ll_checked: negative exponent");
  long long r = 1;
  for (int i = 0; i < exp; i++) {
    if (base != 0 && std::llabs(r) > std::numeric_limits<long long>::max() / std::llabs(base))
      fail(Kind::SizeLimit, "power exceeds 64 bits");
    r *= base;
  }
  return r;
}

bool is_prime_ll(long long n) {
  if (n < 2) return false;
  for (long long d = 2; d * d <= n; d++)
    if (n % d == 0) return false;
  return true;
}

int valuation_ll(long long n, long long p) {
  if (n == 0) fail(Kind::Internal, "valuation of 0");
  if (p < 2) fail(Kind::Internal, "valuation: bad prime");
  int v = 0;
  while (n % p == 0) {
    n /= p;
    v++;
  }
  return v;
}

std::vector<std::pair<long long, int>> factorize_ll(long long n) {
  if (n < 1) fail(Kind::Internal, "factorize_ll: n must be >= 1");
  std::vector<std::pair<long long, int>> out;
  for (long long d = 2; d * d <= n; d++) {
    if (n % d == 0) {
      int e = 0;
      while (n % d == 0) {
        n /= d;
        e++;
      }
      out.push_back({d, e});
    }
  }
  if (n > 1) out.push_back({n, 1});
  return out;
}

long long inv_mod_ll(long long a, long long m) {
  if (m <= 0) fail(Kind::Internal, "inv_mod_ll: bad modulus");
  a = mod_floor_ll(a, m);
  // extended euclid on (a, m)
  long long old_r = a, r = m;
  long long old_s = 1, s = 0;
  while (r != 0) {
    long long q = old_r / r;
    long long t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) fail(Kind::Internal, "inv_mod_ll: not a unit");
  return mod_floor_ll(old_s, m);
}

long long crt_pair_ll(long long r1, long long m1, long long r2, long long m2) {
  // x = r1 + m1 * t, need m1 * t = r2 - r1 mod m2
  long long t = mod_floor_ll((r2 - r1) % m2 * inv_mod_ll(m1 % m2, m2), m2);
  return r1 + m1 * t;
}

long long euler_phi_prime_power(long long p, int e) {
  if (e == 0) return 1;
  return pow_ll_checked(p, e - 1) * (p - 1);
}

std::vector<long long> unit_group_generators(long long p, int e) {
  long long m = pow_ll_checked(p, e);
  long long target = euler_phi_prime_power(p, e);
  std::vector<long long> gens;
  std::set<long long> closed = {1 % m};
  for (long long c = 2; (long long)closed.size() < target; c++) {
    if (c % p == 0) continue;
    if (closed.count(c)) continue;
    gens.push_back(c);
    // re-close from scratch; these groups are tiny compared to everything else
    std::vector<long long> v = unit_subgroup_closure(gens, m);
    closed = std::set<long long>(v.begin(), v.end());
  }
  return gens;
}

std::vector<long long> unit_subgroup_closure(const std::vector<long long>& gens,
                                             long long m) {
  std::set<long long> seen = {1 % m};
  std::vector<long long> frontier = {1 % m};
  while (!frontier.empty()) {
    std::vector<long long> next;
    for (long long x : frontier) {
      for (long long g : gens) {
        long long y = mod_floor_ll(x * (g % m), m);
        if (seen.insert(y).second) next.push_back(y);
      }
    }
    frontier = std::move(next);
  }
  return std::vector<long long>(seen.begin(), seen.end());
}

long long to_ll(const mpz_class& v) {
  if (!v.fits_slong_p()) fail(Kind::SizeLimit, "value exceeds 64 bits");
  return v.get_si();
}

} // namespace hecke
