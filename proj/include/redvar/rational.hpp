#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace redvar {

// All arithmetic in the library is exact.  Int is an arbitrary-precision
// integer, Rat an arbitrary-precision rational kept in lowest terms.
using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

using IntVec = std::vector<Int>;
using QVec = std::vector<Rat>;

inline Int rat_num(const Rat& q) { return Int(numerator(q)); }
inline Int rat_den(const Rat& q) { return Int(denominator(q)); }

inline bool is_integer(const Rat& q) { return rat_den(q) == 1; }

inline Int floor_rat(const Rat& q) {
  Int n = rat_num(q), d = rat_den(q);
  Int f = n / d;
  if (n < 0 && f * d != n) f -= 1;
  return f;
}

inline Int ceil_rat(const Rat& q) { return -floor_rat(-q); }

inline Int gcd_int(const Int& a, const Int& b) { return boost::multiprecision::gcd(a, b); }
inline Int lcm_int(const Int& a, const Int& b) { return boost::multiprecision::lcm(a, b); }

// Least N > 0 with N*q integral.
inline Int denominator_of(const Rat& q) { return rat_den(q); }

inline std::string int_to_string(const Int& n) { return n.str(); }

inline std::string rat_to_string(const Rat& q) {
  if (is_integer(q)) return rat_num(q).str();
  return rat_num(q).str() + "/" + rat_den(q).str();
}

// Accepts "p", "p/q" and plain integer text.
inline Rat parse_rat(const std::string& s) {
  auto pos = s.find('/');
  try {
    if (pos == std::string::npos) return Rat(Int(s));
    Int num(s.substr(0, pos));
    Int den(s.substr(pos + 1));
    if (den == 0) throw std::invalid_argument("zero denominator");
    return Rat(num) / Rat(den);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a rational: '" + s + "'");
  }
}

inline QVec to_qvec(const IntVec& v) {
  QVec r(v.size());
  for (size_t i = 0; i < v.size(); ++i) r[i] = Rat(v[i]);
  return r;
}

}  // namespace redvar
