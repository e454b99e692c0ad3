#ifndef WITT_RATIONAL_HPP
#define WITT_RATIONAL_HPP

#include <gmpxx.h>
#include <stdexcept>
#include <string>
#include <vector>

namespace witt {

using Int = mpz_class;
using Rational = mpq_class;

class error : public std::runtime_error {
public:
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

/// Parses "p", "-p" or "p/q" into a canonical rational.
inline Rational parse_rational(const std::string& s) {
  if (s.empty()) throw error("empty rational literal");
  try {
    Rational r(s);
    r.canonicalize();
    if (r.get_den() <= 0) throw error("nonpositive denominator in '" + s + "'");
    return r;
  } catch (const std::invalid_argument&) {
    throw error("bad rational literal '" + s + "'");
  }
}

inline std::string rational_str(const Rational& r) { return r.get_str(); }

inline Int lcm(const Int& a, const Int& b) {
  Int r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline Int divexact(const Int& a, const Int& b) {
  Int r;
  mpz_divexact(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace witt

#endif
