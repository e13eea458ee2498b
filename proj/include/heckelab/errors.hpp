#pragma once

#include <stdexcept>
#include <string>

namespace hecke {

// Every failure the library can signal deliberately.  The CLI maps these to
// exit codes, so keep the set small and the meanings sharp.
enum class Kind {
  SingularMatrix,     // det = 0 where an invertible matrix is required
  IllDefinedAction,   // matrix does not act on the given quotient lattice
  NotInMonoid,        // pair fails the integrality constraints of the monoid
  NotLocallyIntegral, // entry has a denominator at the relevant prime
  LocalityMismatch,   // mixing elements attached to different primes/scopes
  SizeLimit,          // value exceeds what the fixed-width fast path allows
  BudgetExhausted,    // work estimate above the configured budget
  FormulaMismatch,    // computed invariant disagrees with the closed form
  WitnessNotFound,    // search space exhausted without a witness
  InvalidInput,       // malformed user input (CLI/JSON)
  Internal,           // broken invariant inside the library itself
};

inline const char* kind_name(Kind k) {
  switch (k) {
  case Kind::SingularMatrix: return "singular matrix";
  case Kind::IllDefinedAction: return "ill-defined action";
  case Kind::NotInMonoid: return "not in monoid";
  case Kind::NotLocallyIntegral: return "not locally integral";
  case Kind::LocalityMismatch: return "locality mismatch";
  case Kind::SizeLimit: return "size limit";
  case Kind::BudgetExhausted: return "budget exhausted";
  case Kind::FormulaMismatch: return "formula mismatch";
  case Kind::WitnessNotFound: return "witness not found";
  case Kind::InvalidInput: return "invalid input";
  case Kind::Internal: return "internal error";
  }
  return "unknown";
}

// success = 0, verification mismatch = 1, invalid input = 2, budget = 3
inline int exit_code(Kind k) {
  switch (k) {
  case Kind::InvalidInput: return 2;
  case Kind::BudgetExhausted:
  case Kind::SizeLimit: return 3;
  default: return 1;
  }
}

class Error : public std::runtime_error {
public:
  Error(Kind kind, const std::string& msg)
      : std::runtime_error(std::string(kind_name(kind)) + ": " + msg),
        kind_(kind), message_(msg) {}
  Kind kind() const { return kind_; }
  // the bare message, without the kind prefix what() carries
  const std::string& message() const { return message_; }

private:
  Kind kind_;
  std::string message_;
};

[[noreturn]] inline void fail(Kind kind, const std::string& msg) {
  throw Error(kind, msg);
}

// Caps for the potentially explosive computations.  All counts are of cheap
// inner-loop steps (coset products, lattice points, group tuples), so the
// defaults finish in seconds.  scaled(2) doubles everything, etc.
struct Budget {
  long long products = 1'000'000;
  long long points = 1'000'000;
  long long tuples = 100'000'000;

  static Budget scaled(long long factor) {
    Budget b;
    b.products *= factor;
    b.points *= factor;
    b.tuples *= factor;
    return b;
  }
};

} // namespace hecke
