#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>

namespace pss {

// Exact rational scalar. GMP keeps results of arithmetic in lowest terms with
// a positive denominator; zero is 0/1.
using Rational = mpq_class;

// Combined numerator + denominator bit length; the pivot heuristic minimizes it.
inline std::size_t bit_length(const Rational& q) {
  if (q == 0) return 0;
  return mpz_sizeinbase(q.get_num_mpz_t(), 2) + mpz_sizeinbase(q.get_den_mpz_t(), 2);
}

inline Rational make_rational(long num, long den = 1) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

inline std::string to_string(const Rational& q) { return q.get_str(); }

}  // namespace pss
