#pragma once
// Exact scalar layer: arbitrary-precision integers and rationals plus the
// small parsing/printing/rounding helpers the rest of the library leans on.
// Convention: all norms and distances are carried squared, in Rat, so no
// square roots are ever taken outside the enclosure layer.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace omegad {

using Int = mpz_class;
using Rat = mpq_class;
using IntVec = std::vector<Int>;
using RatVec = std::vector<Rat>;

struct budget_error : std::runtime_error {
  explicit budget_error(const std::string& what) : std::runtime_error(what) {}
};

inline Rat make_rat(const Int& num, const Int& den) {
  if (sgn(den) == 0) throw std::invalid_argument("make_rat: zero denominator");
  Rat q(num, den);
  q.canonicalize();
  return q;
}

inline Int floor_rat(const Rat& q) {
  Int r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

inline Int ceil_rat(const Rat& q) {
  Int r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

// Nearest integer, ties rounded up. Any fixed tie rule works for size
// reduction; this one keeps runs reproducible.
inline Int round_nearest(const Rat& q) {
  Rat shifted = q + Rat(1, 2);
  return floor_rat(shifted);
}

inline Int isqrt_floor(const Int& x) {
  if (sgn(x) < 0) throw std::domain_error("isqrt_floor: negative");
  Int r;
  mpz_sqrt(r.get_mpz_t(), x.get_mpz_t());
  return r;
}

inline Int root_floor(const Int& x, unsigned long k) {
  if (k == 0) throw std::domain_error("root_floor: k = 0");
  if (sgn(x) < 0) throw std::domain_error("root_floor: negative");
  Int r;
  mpz_root(r.get_mpz_t(), x.get_mpz_t(), k);
  return r;
}

inline Int pow_int(const Int& base, unsigned long e) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Rat pow_rat(const Rat& base, unsigned long e) {
  Rat r(1);
  Rat b = base;
  unsigned long k = e;
  while (k > 0) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

inline Int content(const IntVec& v) {
  Int g(0);
  for (const Int& x : v) {
    Int a = abs(x);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), a.get_mpz_t());
  }
  return g;
}

// Scales to coprime coordinates with the first nonzero one positive.
// Zero vectors pass through unchanged.
inline IntVec primitive_vector(const IntVec& v) {
  Int g = content(v);
  if (sgn(g) == 0) return v;
  IntVec out;
  out.reserve(v.size());
  int lead = 0;
  for (const Int& x : v) {
    Int q = x / g;
    out.push_back(q);
    if (lead == 0) lead = sgn(q);
  }
  if (lead < 0)
    for (Int& x : out) x = -x;
  return out;
}

inline bool is_zero_vector(const IntVec& v) {
  for (const Int& x : v)
    if (sgn(x) != 0) return false;
  return true;
}

// Digits-only integer parse, base 10 forced so "05" never reads as octal.
inline Int parse_digits(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rat: missing digits");
  for (char c : s)
    if (c < '0' || c > '9') throw std::invalid_argument("parse_rat: bad character");
  return Int(s, 10);
}

// Accepts "123", "-4/7", "0.4142", "-1.5e-3"-free plain forms only
// (sign, digits, optional '.' or '/').
inline Rat parse_rat(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("parse_rat: empty string");
  std::string t = s;
  bool neg = false;
  std::size_t pos = 0;
  if (t[0] == '+' || t[0] == '-') {
    neg = (t[0] == '-');
    pos = 1;
  }
  std::size_t dot = t.find('.', pos);
  std::size_t slash = t.find('/', pos);
  Rat value;
  if (slash != std::string::npos) {
    if (dot != std::string::npos) throw std::invalid_argument("parse_rat: mixed '.' and '/'");
    Int num = parse_digits(t.substr(pos, slash - pos));
    Int den = parse_digits(t.substr(slash + 1));
    value = make_rat(num, den);
  } else if (dot != std::string::npos) {
    std::string whole = t.substr(pos, dot - pos);
    std::string frac = t.substr(dot + 1);
    if (frac.empty() && whole.empty()) throw std::invalid_argument("parse_rat: bare dot");
    Int w = whole.empty() ? Int(0) : parse_digits(whole);
    Int f = frac.empty() ? Int(0) : parse_digits(frac);
    Int scale = pow_int(Int(10), frac.size());
    value = Rat(w) + make_rat(f, scale);
  } else {
    value = Rat(parse_digits(t.substr(pos)));
  }
  if (neg) value = -value;
  return value;
}

enum class RoundDir { down, up };

// Decimal rendering with an explicit rounding direction on the real line
// (down = toward -infinity). Exact when the value needs <= digits decimals.
inline std::string to_decimal(const Rat& q, unsigned digits, RoundDir dir) {
  Int scale = pow_int(Int(10), digits);
  Int num = q.get_num() * scale;
  Int scaled;
  if (dir == RoundDir::down)
    mpz_fdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  else
    mpz_cdiv_q(scaled.get_mpz_t(), num.get_mpz_t(), q.get_den_mpz_t());
  bool neg = sgn(scaled) < 0;
  Int mag = abs(scaled);
  std::string raw = mag.get_str();
  if (raw.size() <= digits) raw.insert(0, digits + 1 - raw.size(), '0');
  std::string whole = raw.substr(0, raw.size() - digits);
  std::string frac = raw.substr(raw.size() - digits);
  std::string out = whole;
  if (digits > 0) out += "." + frac;
  if (neg && (mag != 0)) out.insert(0, "-");
  return out;
}

inline std::string rat_string(const Rat& q) { return q.get_str(); }

inline double to_double(const Rat& q) { return q.get_d(); }

}  // namespace omegad
