#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <utility>
#include <vector>

#include "heckelab/errors.hpp"

namespace hecke {

// Floor remainder, always in [0, m).  m > 0.
long long mod_floor_ll(long long a, long long m);
mpz_class mod_floor(const mpz_class& a, const mpz_class& m);

// base^exp with overflow detection (SizeLimit on overflow).
long long pow_ll_checked(long long base, int exp);

bool is_prime_ll(long long n);
int valuation_ll(long long n, long long p);

// prime -> exponent, ascending primes.  n >= 1.
std::vector<std::pair<long long, int>> factorize_ll(long long n);

// Inverse of a mod m (m > 0, gcd(a, m) = 1).
long long inv_mod_ll(long long a, long long m);

// x = r1 mod m1, x = r2 mod m2 for coprime moduli; result in [0, m1*m2).
long long crt_pair_ll(long long r1, long long m1, long long r2, long long m2);

// |(Z/p^e)^*| = p^(e-1) (p-1); e = 0 gives 1.
long long euler_phi_prime_power(long long p, int e);

// Generators of the full unit group (Z/p^e)^*.  Found by greedy closure
// rather than primitive-root theory so p = 2 needs no special case.
std::vector<long long> unit_group_generators(long long p, int e);

// Closure of `gens` inside (Z/m)^*; sorted.  All gens must be units mod m.
std::vector<long long> unit_subgroup_closure(const std::vector<long long>& gens,
                                             long long m);

// Narrowing with a SizeLimit error instead of UB.
long long to_ll(const mpz_class& v);

// Exact widening.  The installed gmpxx has no long long overloads, so every
// mixed expression must route through this explicitly.
static_assert(sizeof(long) == sizeof(long long), "need 64-bit long");
inline mpz_class mpz_ll(long long v) { return mpz_class((long)v); }

} // namespace hecke
