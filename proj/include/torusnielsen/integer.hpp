#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace tn {

/// Unbounded signed integer used for every exact computation in the library.
using Int = mpz_class;
using IntVector = std::vector<Int>;

inline Int abs(const Int& a) { return ::abs(a); }

/// Quotient rounded towards negative infinity.
inline Int floor_div(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return q;
}

/// Residue in [0, |m|) for m != 0.
inline Int mod_floor(const Int& a, const Int& m) {
  Int r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return g;
}

struct ExtendedGcd {
  Int g, s, t;  // s*a + t*b = g >= 0
};

inline ExtendedGcd extended_gcd(const Int& a, const Int& b) {
  ExtendedGcd r;
  mpz_gcdext(r.g.get_mpz_t(), r.s.get_mpz_t(), r.t.get_mpz_t(), a.get_mpz_t(),
             b.get_mpz_t());
  return r;
}

inline bool divides(const Int& d, const Int& a) {
  if (d == 0) return a == 0;
  return mpz_divisible_p(a.get_mpz_t(), d.get_mpz_t()) != 0;
}

inline std::string to_string(const Int& a) { return a.get_str(); }

inline std::optional<std::int64_t> to_int64(const Int& a) {
  if (!mpz_fits_slong_p(a.get_mpz_t())) return std::nullopt;
  return static_cast<std::int64_t>(a.get_si());
}

/// Parses an optionally signed decimal literal; nullopt on malformed input.
std::optional<Int> parse_int(std::string_view text);

std::string to_string(const IntVector& v);

IntVector operator+(const IntVector& a, const IntVector& b);
IntVector operator-(const IntVector& a, const IntVector& b);
IntVector operator*(const Int& s, const IntVector& a);
bool is_zero(const IntVector& v);

}  // namespace tn
