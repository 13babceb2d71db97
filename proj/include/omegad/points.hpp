#pragma once
// Point catalog: target descriptions that can be refined to rational
// proxies with certified radii at any requested precision, plus the
// rational-independence gate that decides whether measured exponents may
// be certified at all.

#include <algorithm>
#include <functional>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "omegad/interval.hpp"
#include "omegad/rational.hpp"
#include "omegad/subspace.hpp"

namespace omegad {

struct PointSpec {
  enum class Kind { decimal, algebraic_power, sqrt_combination, cf_stream };
  Kind kind = Kind::decimal;
  int n = 0;  // ambient projective dimension
  std::vector<std::string> decimals;
  IntVec poly;  // c0 + c1 x + ... + c_deg x^deg
  Rat lo, hi;   // isolating interval with a sign change
  std::vector<long> radicands;
  long tau = 0;  // digit-gap growth base of the lacunary series
  std::string text;
};

enum class IndependenceStatus { certified, probable, violated };

inline std::string to_string(IndependenceStatus s) {
  switch (s) {
    case IndependenceStatus::certified: return "certified";
    case IndependenceStatus::probable: return "probable";
    default: return "violated";
  }
}

struct IndependenceReport {
  IndependenceStatus status = IndependenceStatus::probable;
  std::optional<IntVec> relation;  // c with sum c_i coord_i = 0, coord_0 = 1
  bool relation_verified = false;
  std::string note;
};

inline Rat eval_poly(const IntVec& coeffs, const Rat& x) {
  Rat acc(0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + Rat(coeffs[i]);
  return acc;
}

namespace detail {

inline std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

inline RealInterval sqrt_enclosure(const Rat& x, mpfr_prec_t prec) {
  if (sgn(x) < 0) throw std::domain_error("sqrt_enclosure: negative input");
  Mpfr lo(prec), hi(prec);
  mpfr_set_q(lo.get(), x.get_mpq_t(), MPFR_RNDD);
  mpfr_sqrt(lo.get(), lo.get(), MPFR_RNDD);
  mpfr_set_q(hi.get(), x.get_mpq_t(), MPFR_RNDU);
  mpfr_sqrt(hi.get(), hi.get(), MPFR_RNDU);
  return RealInterval{rat_from_mpfr(lo.get()), rat_from_mpfr(hi.get())};
}

// Monotone envelope of [a,b]^k for exact rational endpoints.
inline void interval_pow(const Rat& a, const Rat& b, unsigned long k, Rat& out_lo, Rat& out_hi) {
  Rat pa = pow_rat(a, k);
  Rat pb = pow_rat(b, k);
  if (k % 2 == 1 || sgn(a) >= 0) {
    out_lo = pa;
    out_hi = pb;
  } else if (sgn(b) <= 0) {
    out_lo = pb;
    out_hi = pa;
  } else {
    out_lo = Rat(0);
    out_hi = std::max(pa, pb);
  }
}

inline Rat upper_sqrt(const Rat& x) { return sqrt_interval(x).hi; }

}  // namespace detail

// Exact refinement: the returned proxy has rational coordinates and a
// radius bounding the Euclidean distance to the true affine coordinates,
// with radius <= 2^-bits whenever the description allows it.
inline PointProxy refine(const PointSpec& spec, int bits) {
  if (bits < 8) bits = 8;
  switch (spec.kind) {
    case PointSpec::Kind::decimal: {
      RatVec coords;
      coords.push_back(Rat(1));
      for (const std::string& s : spec.decimals) coords.push_back(parse_rat(s));
      return PointProxy(coords, Rat(0));
    }
    case PointSpec::Kind::algebraic_power: {
      Rat a = spec.lo, b = spec.hi;
      Rat fa = eval_poly(spec.poly, a);
      if (sgn(fa) == 0) {
        b = a;
      } else {
        // Enough bisection to keep every power's uncertainty below target.
        Int m = std::max(ceil_rat(abs(b)), ceil_rat(abs(a)));
        if (m < 1) m = 1;
        long extra = static_cast<long>(spec.n) *
                         static_cast<long>(mpz_sizeinbase(m.get_mpz_t(), 2) + 1) +
                     mpz_sizeinbase(Int(spec.n + 1).get_mpz_t(), 2) + 8;
        long steps = bits + extra;
        for (long it = 0; it < steps && a < b; ++it) {
          Rat mid = (a + b) / 2;
          Rat fm = eval_poly(spec.poly, mid);
          if (sgn(fm) == 0) {
            a = mid;
            b = mid;
            break;
          }
          if ((sgn(fm) > 0) == (sgn(fa) > 0)) {
            a = mid;
            fa = fm;
          } else {
            b = mid;
          }
        }
      }
      RatVec coords;
      coords.push_back(Rat(1));
      Rat err_sq(0);
      for (int k = 1; k <= spec.n; ++k) {
        Rat plo, phi;
        detail::interval_pow(a, b, static_cast<unsigned long>(k), plo, phi);
        coords.push_back((plo + phi) / 2);
        Rat half = (phi - plo) / 2;
        err_sq += half * half;
      }
      return PointProxy(coords, sgn(err_sq) == 0 ? Rat(0) : detail::upper_sqrt(err_sq));
    }
    case PointSpec::Kind::sqrt_combination: {
      RatVec coords;
      coords.push_back(Rat(1));
      Rat err_sq(0);
      mpfr_prec_t prec = static_cast<mpfr_prec_t>(bits + 16);
      for (long m : spec.radicands) {
        Int r = isqrt_floor(Int(m));
        if (r * r == Int(m)) {
          coords.push_back(Rat(r));
          continue;
        }
        RealInterval iv = detail::sqrt_enclosure(Rat(m), prec);
        coords.push_back((iv.lo + iv.hi) / 2);
        Rat half = (iv.hi - iv.lo) / 2;
        err_sq += half * half;
      }
      return PointProxy(coords, sgn(err_sq) == 0 ? Rat(0) : detail::upper_sqrt(err_sq));
    }
    case PointSpec::Kind::cf_stream: {
      // Lacunary decimal series sum 10^-(tau^k); truncate when the tail
      // drops below the target radius.
      Int a(spec.tau);
      Rat sum(0);
      while (true) {
        Int next_gap = a;
        // tail after cutting at exponent next_gap: below 2 * 10^-next_gap
        Int scaled = next_gap * 3;
        if (scaled > Int(bits + 2)) break;
        Int den = pow_int(Int(10), a.get_ui());
        sum += make_rat(Int(1), den);
        a *= spec.tau;
      }
      Rat radius = make_rat(Int(2), pow_int(Int(10), a.get_ui()));
      return PointProxy(RatVec{Rat(1), sum}, radius);
    }
  }
  throw std::logic_error("refine: unhandled kind");
}

namespace detail {

inline std::vector<Int> divisors_bounded(const Int& value, long cap) {
  std::vector<Int> out;
  Int v = abs(value);
  if (v == 0 || v > Int(cap) * Int(cap)) return out;
  for (Int d(1); d * d <= v; ++d) {
    if (v % d == 0) {
      out.push_back(d);
      out.push_back(v / d);
    }
    if (d > cap) break;
  }
  return out;
}

// Trial-factored squarefree kernel; nullopt when the value resists the
// trial bound.
inline std::optional<Int> squarefree_kernel(long m) {
  if (m <= 0) return std::nullopt;
  Int v(m), kernel(1);
  for (Int p(2); p * p <= v; ++p) {
    if (v % p != 0) continue;
    int e = 0;
    while (v % p == 0) {
      v /= p;
      ++e;
    }
    if (e % 2 == 1) kernel *= p;
  }
  kernel *= v;
  return kernel;
}

inline std::vector<long> poly_mod(const IntVec& coeffs, long p) {
  std::vector<long> out(coeffs.size());
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Int r = coeffs[i] % p;
    long v = static_cast<long>(r.get_si());
    if (v < 0) v += p;
    out[i] = v;
  }
  while (out.size() > 1 && out.back() == 0) out.pop_back();
  return out;
}

inline long inv_mod(long a, long p) {
  long r = 1, base = a % p, e = p - 2;
  while (e > 0) {
    if (e & 1) r = r * base % p;
    base = base * base % p;
    e >>= 1;
  }
  return r;
}

inline bool divides_mod(const std::vector<long>& divisor, std::vector<long> poly, long p) {
  long dd = static_cast<long>(divisor.size()) - 1;
  while (static_cast<long>(poly.size()) - 1 >= dd) {
    long shift = static_cast<long>(poly.size()) - 1 - dd;
    long factor = poly.back() % p;  // divisor is monic
    for (long i = 0; i <= dd; ++i) {
      long idx = shift + i;
      poly[static_cast<std::size_t>(idx)] =
          ((poly[static_cast<std::size_t>(idx)] - factor * divisor[static_cast<std::size_t>(i)]) %
               p +
           p * p) %
          p;
    }
    while (poly.size() > 1 && poly.back() == 0) poly.pop_back();
    if (poly.size() == 1 && poly[0] == 0) return true;
  }
  for (long v : poly)
    if (v != 0) return false;
  return true;
}

inline bool irreducible_mod(const IntVec& coeffs, long p) {
  std::vector<long> f = poly_mod(coeffs, p);
  long deg = static_cast<long>(f.size()) - 1;
  if (deg != static_cast<long>(coeffs.size()) - 1) return false;  // degree dropped
  // Normalise monic.
  long inv = inv_mod(f.back(), p);
  for (long& v : f) v = v * inv % p;
  for (long k = 1; 2 * k <= deg; ++k) {
    // All monic divisor candidates of degree k.
    std::vector<long> cand(static_cast<std::size_t>(k + 1), 0);
    cand.back() = 1;
    std::function<bool(long)> walk = [&](long idx) -> bool {
      if (idx == k) return divides_mod(cand, f, p);
      for (long v = 0; v < p; ++v) {
        cand[static_cast<std::size_t>(idx)] = v;
        if (walk(idx + 1)) return true;
      }
      return false;
    };
    if (walk(0)) return false;
  }
  return true;
}

}  // namespace detail

// Decides irreducibility over the rationals where a certificate is cheap:
// full decision through degree 3 via rational roots, prime-shift and
// mod-p certificates beyond; nullopt when undecided.
inline std::optional<bool> is_irreducible(IntVec coeffs) {
  while (coeffs.size() > 1 && sgn(coeffs.back()) == 0) coeffs.pop_back();
  if (coeffs.size() <= 1) return std::nullopt;  // constant
  Int c = content(coeffs);
  if (c > 1)
    for (Int& v : coeffs) v /= c;
  long deg = static_cast<long>(coeffs.size()) - 1;
  if (deg == 1) return true;
  if (sgn(coeffs[0]) == 0) return false;  // divisible by x

  // Rational root scan: a root kills irreducibility; for degree <= 3 the
  // absence of roots settles it.
  std::vector<Int> num = detail::divisors_bounded(coeffs[0], 100000);
  std::vector<Int> den = detail::divisors_bounded(coeffs.back(), 100000);
  if (!num.empty() && !den.empty()) {
    for (const Int& a : num)
      for (const Int& b : den) {
        Rat r = make_rat(a, b);
        if (sgn(eval_poly(coeffs, r)) == 0 || sgn(eval_poly(coeffs, -r)) == 0) return false;
      }
    if (deg <= 3) return true;
  } else if (deg <= 3) {
    return std::nullopt;
  }

  // Prime-shift certificate (both orientations).
  for (long p : {2L, 3L, 5L, 7L, 11L, 13L, 17L, 19L, 23L}) {
    bool ok;
    if (coeffs.back() % p != 0 && coeffs[0] % p == 0 && coeffs[0] % (p * p) != 0) {
      ok = true;
      for (long i = 1; i < deg; ++i)
        if (coeffs[static_cast<std::size_t>(i)] % p != 0) ok = false;
      if (ok) return true;
    }
    if (coeffs[0] % p != 0 && coeffs.back() % p == 0 && coeffs.back() % (p * p) != 0) {
      ok = true;
      for (long i = 1; i < deg; ++i)
        if (coeffs[static_cast<std::size_t>(i)] % p != 0) ok = false;
      if (ok) return true;
    }
  }

  if (deg <= 6) {
    for (long p : {2L, 3L, 5L, 7L, 11L, 13L}) {
      if (coeffs.back() % p == 0) continue;
      if (detail::irreducible_mod(coeffs, p)) return true;
    }
  }
  return std::nullopt;
}

namespace detail {

// LLL candidates for integer relations sum c_i t_i = 0 over the affine
// tuple (t_0 = 1). Candidates only; the caller must verify exactly.
inline std::vector<IntVec> relation_candidates(const RatVec& coords, long h_probe, long prec) {
  std::size_t m = coords.size();
  Int scale = pow_int(Int(2), static_cast<unsigned long>(prec));
  Mat<Int> rows = make_mat<Int>(m, m + 1);
  for (std::size_t i = 0; i < m; ++i) {
    rows[i][i] = 1;
    rows[i][m] = round_nearest(Rat(scale) * coords[i]);
  }
  LllResult red = lll_reduce(gram_lattice_from_rows(rows));
  std::vector<IntVec> out;
  for (const IntVec& c : red.change) {
    IntVec cand = c;
    bool small = !is_zero_vector(cand);
    for (const Int& v : cand)
      if (abs(v) > h_probe) small = false;
    if (!small) continue;
    for (const Int& v : cand)
      if (sgn(v) != 0) {
        if (sgn(v) < 0)
          for (Int& w : cand) w = -w;
        break;
      }
    out.push_back(cand);
  }
  std::sort(out.begin(), out.end(), [](const IntVec& a, const IntVec& b) {
    Int ma(0), mb(0);
    for (const Int& v : a) ma = std::max(ma, Int(abs(v)));
    for (const Int& v : b) mb = std::max(mb, Int(abs(v)));
    if (ma != mb) return ma < mb;
    return a < b;
  });
  return out;
}

// Polynomial gcd over the rationals, returned as a primitive integer
// polynomial (low-to-high coefficients).
inline IntVec poly_gcd(IntVec a, IntVec b) {
  auto trim = [](RatVec& v) {
    while (v.size() > 1 && sgn(v.back()) == 0) v.pop_back();
  };
  RatVec f(a.size()), g(b.size());
  for (std::size_t i = 0; i < a.size(); ++i) f[i] = Rat(a[i]);
  for (std::size_t i = 0; i < b.size(); ++i) g[i] = Rat(b[i]);
  trim(f);
  trim(g);
  if (f.size() < g.size()) std::swap(f, g);
  while (!(g.size() == 1 && sgn(g[0]) == 0)) {
    // f mod g
    while (f.size() >= g.size() && !(f.size() == 1 && sgn(f[0]) == 0)) {
      Rat q = f.back() / g.back();
      std::size_t shift = f.size() - g.size();
      for (std::size_t i = 0; i < g.size(); ++i) f[shift + i] -= q * g[i];
      trim(f);
      if (f.size() < g.size()) break;
      if (f.size() == g.size() && sgn(f.back()) == 0) trim(f);
    }
    std::swap(f, g);
  }
  // Clear denominators and strip content.
  Int lcm(1);
  for (const Rat& c : f) lcm = lcm / gcd(lcm, c.get_den()) * c.get_den();
  IntVec out(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    Rat scaled = f[i] * Rat(lcm);
    out[i] = scaled.get_num();
  }
  Int c = content(out);
  if (c > 1)
    for (Int& v : out) v /= c;
  if (!out.empty() && sgn(out.back()) < 0)
    for (Int& v : out) v = -v;
  return out;
}

}  // namespace detail

// Rational-independence gate over the coordinate tuple (1, t_1, ..., t_n):
// certified via an exact algebraic certificate, otherwise an LLL relation
// search up to coefficient height h_probe. A violated status always
// carries an exactly verified relation.
inline IndependenceReport independence_check(const PointSpec& spec, int n, long h_probe = 100) {
  IndependenceReport rep;
  if (n != spec.n)
    throw std::invalid_argument("independence_check: n does not match the point spec");
  switch (spec.kind) {
    case PointSpec::Kind::decimal: {
      RatVec coords;
      coords.push_back(Rat(1));
      for (const std::string& s : spec.decimals) coords.push_back(parse_rat(s));
      for (const IntVec& cand : detail::relation_candidates(coords, h_probe, 256)) {
        Rat sum(0);
        for (std::size_t i = 0; i < coords.size(); ++i) sum += Rat(cand[i]) * coords[i];
        if (sgn(sum) == 0) {
          rep.status = IndependenceStatus::violated;
          rep.relation = cand;
          rep.relation_verified = true;
          rep.note = "exact rational relation within the probe height";
          return rep;
        }
      }
      rep.status = IndependenceStatus::probable;
      rep.note = "rational coordinates, but no relation below the probe height";
      return rep;
    }
    case PointSpec::Kind::algebraic_power: {
      IntVec poly = spec.poly;
      while (poly.size() > 1 && sgn(poly.back()) == 0) poly.pop_back();
      long deg = static_cast<long>(poly.size()) - 1;
      if (deg <= spec.n) {
        // The defining equation itself is a relation among the powers.
        IntVec rel(static_cast<std::size_t>(spec.n + 1), Int(0));
        for (long i = 0; i <= deg; ++i)
          rel[static_cast<std::size_t>(i)] = poly[static_cast<std::size_t>(i)];
        rep.status = IndependenceStatus::violated;
        rep.relation = rel;
        rep.relation_verified = true;  // holds identically: the point is a root
        rep.note = "modulus degree does not exceed the power count; the defining relation applies";
        return rep;
      }
      std::optional<bool> irr = is_irreducible(poly);
      if (irr.has_value() && *irr) {
        rep.status = IndependenceStatus::certified;
        rep.note = "irreducible modulus of degree above the power count";
        return rep;
      }
      // Candidate relations are verified against the modulus: the combo
      // polynomial vanishes at the root iff its gcd with the modulus
      // still has the sign change.
      PointProxy proxy = refine(spec, 512);
      for (const IntVec& cand : detail::relation_candidates(proxy.coords, h_probe, 384)) {
        IntVec combo(cand.begin(), cand.end());
        while (combo.size() > 1 && sgn(combo.back()) == 0) combo.pop_back();
        if (combo.size() < 2) continue;
        IntVec g = detail::poly_gcd(poly, combo);
        if (g.size() < 2) continue;
        Rat ga = eval_poly(g, spec.lo);
        Rat gb = eval_poly(g, spec.hi);
        if (sgn(ga) == 0 || sgn(gb) == 0 || sgn(ga) != sgn(gb)) {
          rep.status = IndependenceStatus::violated;
          rep.relation = cand;
          rep.relation_verified = true;
          rep.note = "relation divides the modulus and vanishes at the isolated root";
          return rep;
        }
      }
      rep.status = IndependenceStatus::probable;
      rep.note = irr.has_value() ? "reducible modulus; no relation found below the probe height"
                                 : "irreducibility undecided; no relation found below the probe height";
      return rep;
    }
    case PointSpec::Kind::sqrt_combination: {
      std::vector<Int> kernels;
      bool factored = true;
      for (std::size_t i = 0; i < spec.radicands.size(); ++i) {
        std::optional<Int> k = detail::squarefree_kernel(spec.radicands[i]);
        if (!k) {
          factored = false;
          break;
        }
        if (*k == 1) {
          // Perfect square: sqrt(m) = s rational.
          Int s = isqrt_floor(Int(spec.radicands[i]));
          IntVec rel(static_cast<std::size_t>(spec.n + 1), Int(0));
          rel[0] = s;
          rel[i + 1] = -1;
          rep.status = IndependenceStatus::violated;
          rep.relation = rel;
          rep.relation_verified = (s * s == Int(spec.radicands[i]));
          rep.note = "a radicand is a perfect square";
          return rep;
        }
        kernels.push_back(*k);
      }
      if (factored) {
        for (std::size_t i = 0; i < kernels.size(); ++i)
          for (std::size_t j = i + 1; j < kernels.size(); ++j)
            if (kernels[i] == kernels[j]) {
              // m_i = a^2 k, m_j = b^2 k: b sqrt(m_i) = a sqrt(m_j).
              Int a = isqrt_floor(Int(spec.radicands[i]) / kernels[i]);
              Int b = isqrt_floor(Int(spec.radicands[j]) / kernels[j]);
              IntVec rel(static_cast<std::size_t>(spec.n + 1), Int(0));
              rel[i + 1] = b;
              rel[j + 1] = -a;
              rep.status = IndependenceStatus::violated;
              rep.relation = rel;
              rep.relation_verified =
                  (b * b * Int(spec.radicands[i]) == a * a * Int(spec.radicands[j]));
              rep.note = "two radicands share a squarefree kernel";
              return rep;
            }
        rep.status = IndependenceStatus::certified;
        rep.note = "distinct squarefree kernels: the roots are independent with 1";
        return rep;
      }
      // Factoring gave out; fall back to a search with exact grouped
      // verification impossible, so candidates cannot be certified.
      rep.status = IndependenceStatus::probable;
      rep.note = "radicand too large to factor within the trial bound";
      return rep;
    }
    case PointSpec::Kind::cf_stream: {
      // Any true relation would need coefficients beyond every probe
      // height; a candidate can never be verified exactly here.
      PointProxy proxy = refine(spec, 512);
      std::size_t found = detail::relation_candidates(proxy.coords, h_probe, 384).size();
      rep.status = IndependenceStatus::probable;
      rep.note = found ? "lacunary series; numeric near-relations were not verifiable"
                       : "lacunary series; no relation found below the probe height";
      return rep;
    }
  }
  return rep;
}


// Text forms:
//   decimal:<d1>[,<d2>,...]
//   poly:<c0>,<c1>,...;interval:<lo>,<hi>;powers:<n>
//   sqrt:<m1>[,<m2>,...]
//   cf:liouville,<tau>
inline PointSpec parse_point_spec(const std::string& text) {
  PointSpec spec;
  spec.text = text;
  std::vector<std::string> parts = detail::split(text, ';');
  auto key_of = [](const std::string& s) {
    std::size_t pos = s.find(':');
    if (pos == std::string::npos) throw std::invalid_argument("point spec: missing ':' in " + s);
    return std::make_pair(s.substr(0, pos), s.substr(pos + 1));
  };
  auto [head, headval] = key_of(parts.at(0));
  if (head == "decimal") {
    spec.kind = PointSpec::Kind::decimal;
    for (const std::string& s : detail::split(headval, ',')) {
      if (s.empty()) throw std::invalid_argument("point spec: empty decimal");
      spec.decimals.push_back(s);
    }
    spec.n = static_cast<int>(spec.decimals.size());
  } else if (head == "sqrt") {
    spec.kind = PointSpec::Kind::sqrt_combination;
    for (const std::string& s : detail::split(headval, ',')) {
      long m = std::stol(s);
      if (m <= 0 || m > 1000000000000L)
        throw std::invalid_argument("point spec: radicand out of range");
      spec.radicands.push_back(m);
    }
    spec.n = static_cast<int>(spec.radicands.size());
  } else if (head == "cf") {
    spec.kind = PointSpec::Kind::cf_stream;
    std::vector<std::string> args = detail::split(headval, ',');
    if (args.size() != 2 || args[0] != "liouville")
      throw std::invalid_argument("point spec: cf form is cf:liouville,<tau>");
    spec.tau = std::stol(args[1]);
    if (spec.tau < 2 || spec.tau > 64) throw std::invalid_argument("point spec: tau out of range");
    spec.n = 1;
  } else if (head == "poly") {
    spec.kind = PointSpec::Kind::algebraic_power;
    for (const std::string& s : detail::split(headval, ',')) {
      bool neg = !s.empty() && s[0] == '-';
      Int c = parse_digits(neg ? s.substr(1) : s);
      spec.poly.push_back(neg ? Int(-c) : c);
    }
    bool have_interval = false, have_powers = false;
    for (std::size_t i = 1; i < parts.size(); ++i) {
      auto [k, v] = key_of(parts[i]);
      if (k == "interval") {
        std::vector<std::string> ab = detail::split(v, ',');
        if (ab.size() != 2) throw std::invalid_argument("point spec: interval needs two endpoints");
        spec.lo = parse_rat(ab[0]);
        spec.hi = parse_rat(ab[1]);
        have_interval = true;
      } else if (k == "powers") {
        spec.n = std::stoi(v);
        have_powers = true;
      } else {
        throw std::invalid_argument("point spec: unknown key " + k);
      }
    }
    if (!have_interval || !have_powers)
      throw std::invalid_argument("point spec: poly form needs interval and powers");
    if (spec.n < 1 || spec.n > 16) throw std::invalid_argument("point spec: powers out of range");
    if (spec.lo >= spec.hi) throw std::invalid_argument("point spec: empty interval");
    while (spec.poly.size() > 1 && sgn(spec.poly.back()) == 0) spec.poly.pop_back();
    if (spec.poly.size() < 2) throw std::invalid_argument("point spec: polynomial is constant");
    Rat fa = eval_poly(spec.poly, spec.lo);
    Rat fb = eval_poly(spec.poly, spec.hi);
    if (sgn(fa) != 0 && sgn(fb) != 0 && sgn(fa) == sgn(fb))
      throw std::invalid_argument("point spec: no sign change over the interval");
  } else {
    throw std::invalid_argument("point spec: unknown form " + head);
  }
  if (spec.kind != PointSpec::Kind::algebraic_power && parts.size() > 1)
    throw std::invalid_argument("point spec: unexpected extra sections");
  if (spec.n < 1) throw std::invalid_argument("point spec: need at least one coordinate");
  return spec;
}

struct CatalogEntry {
  std::string name;
  std::string summary;
  std::string spec_text;
};

inline const std::vector<CatalogEntry>& catalog() {
  static const std::vector<CatalogEntry> entries = {
      {"sqrt2_sqrt3", "square roots of 2 and 3; independence certified (n=2)", "sqrt:2,3"},
      {"cbrt2", "cube root of 2 with its square; independence certified (n=2)",
       "poly:-2,0,0,1;interval:1,2;powers:2"},
      {"plastic", "real root of x^3-x-1 with its square; independence certified (n=2)",
       "poly:-1,-1,0,1;interval:1,2;powers:2"},
      {"qroot2", "fourth root of 2 with square and cube; independence certified (n=3)",
       "poly:-2,0,0,0,1;interval:1,2;powers:3"},
      {"liouville", "lacunary decimal series with gap base 12; huge exponent (n=1)",
       "cf:liouville,12"},
      {"random_digits",
       "two fixed 60-digit decimals; no relation below the probe height, so probable (n=2)",
       "decimal:0.735162408793410258671940352869720518346291075482369104728531,"
       "0.281470936552817094326580143297610584238907156342980127465391"},
  };
  return entries;
}

inline std::optional<CatalogEntry> find_catalog(const std::string& name) {
  for (const CatalogEntry& e : catalog())
    if (e.name == name) return e;
  return std::nullopt;
}

}  // namespace omegad
