#pragma once
// Outward-rounded enclosures for the few transcendental quantities the
// library needs (logs, square roots, the Minkowski search radius). Endpoints
// are exact dyadic rationals recovered from 128-bit directed MPFR values, so
// every downstream comparison stays in exact arithmetic.

#include <mpfr.h>

#include <stdexcept>
#include <string>

#include "omegad/rational.hpp"

namespace omegad {

inline constexpr mpfr_prec_t kEnclosurePrec = 128;

struct RealInterval {
  Rat lo;
  Rat hi;

  bool contains(const Rat& x) const { return lo <= x && x <= hi; }
  Rat width() const { return hi - lo; }
};

namespace detail {

class Mpfr {
 public:
  explicit Mpfr(mpfr_prec_t prec = kEnclosurePrec) { mpfr_init2(v_, prec); }
  ~Mpfr() { mpfr_clear(v_); }
  Mpfr(const Mpfr&) = delete;
  Mpfr& operator=(const Mpfr&) = delete;
  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

 private:
  mpfr_t v_;
};

// Exact: every finite mpfr value is m * 2^e.
inline Rat rat_from_mpfr(mpfr_srcptr x) {
  if (mpfr_zero_p(x)) return Rat(0);
  if (!mpfr_number_p(x)) throw std::domain_error("rat_from_mpfr: non-finite");
  Int mant;
  mpfr_exp_t e = mpfr_get_z_2exp(mant.get_mpz_t(), x);
  Rat r(mant);
  if (e >= 0) {
    Int scale(1);
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
    r *= Rat(scale);
  } else {
    Int scale(1);
    mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(-e));
    r /= Rat(scale);
  }
  return r;
}

}  // namespace detail

// ln(x) for x > 0. Monotone, so rounding the argument and the log the same
// way keeps each endpoint on the right side.
inline RealInterval log_interval(const Rat& x, mpfr_prec_t prec = kEnclosurePrec) {
  if (sgn(x) <= 0) throw std::domain_error("log_interval: x <= 0");
  detail::Mpfr a(prec), lo(prec), hi(prec);
  mpfr_set_q(a.get(), x.get_mpq_t(), MPFR_RNDD);
  mpfr_log(lo.get(), a.get(), MPFR_RNDD);
  mpfr_set_q(a.get(), x.get_mpq_t(), MPFR_RNDU);
  mpfr_log(hi.get(), a.get(), MPFR_RNDU);
  return {detail::rat_from_mpfr(lo.get()), detail::rat_from_mpfr(hi.get())};
}

inline RealInterval sqrt_interval(const Rat& x, mpfr_prec_t prec = kEnclosurePrec) {
  if (sgn(x) < 0) throw std::domain_error("sqrt_interval: x < 0");
  detail::Mpfr a(prec), lo(prec), hi(prec);
  mpfr_set_q(a.get(), x.get_mpq_t(), MPFR_RNDD);
  mpfr_sqrt(lo.get(), a.get(), MPFR_RNDD);
  mpfr_set_q(a.get(), x.get_mpq_t(), MPFR_RNDU);
  mpfr_sqrt(hi.get(), a.get(), MPFR_RNDU);
  return {detail::rat_from_mpfr(lo.get()), detail::rat_from_mpfr(hi.get())};
}

// Certified lower bound for log(num)/log(den) with num in (0,1], den > 1,
// returned as an exact dyadic. Used for exponent fits: both logs are
// enclosed, then the quotient is rounded down.
inline Rat neg_log_ratio_lower(const Rat& num, const Rat& den,
                               mpfr_prec_t prec = kEnclosurePrec) {
  if (sgn(num) <= 0 || num > 1) throw std::domain_error("neg_log_ratio_lower: num out of (0,1]");
  if (den <= 1) throw std::domain_error("neg_log_ratio_lower: den <= 1");
  detail::Mpfr a(prec), n_hi(prec), d_hi(prec), q(prec);
  // -log(num) >= -log(num rounded up), log(den) <= log(den rounded up).
  mpfr_set_q(a.get(), num.get_mpq_t(), MPFR_RNDU);
  mpfr_log(n_hi.get(), a.get(), MPFR_RNDU);
  mpfr_neg(n_hi.get(), n_hi.get(), MPFR_RNDN);  // exact
  if (mpfr_sgn(n_hi.get()) < 0) return Rat(0);
  mpfr_set_q(a.get(), den.get_mpq_t(), MPFR_RNDU);
  mpfr_log(d_hi.get(), a.get(), MPFR_RNDU);
  mpfr_div(q.get(), n_hi.get(), d_hi.get(), MPFR_RNDD);
  return detail::rat_from_mpfr(q.get());
}

// Smallest radius the convex-body theorem needs:
// R = 2 * v_k^(-1/k) * det^(1/k) with v_k = pi^(k/2) / Gamma(1 + k/2),
// i.e. R = 2 * Gamma(1 + k/2)^(1/k) * pi^(-1/2) * det_sq^(1/(2k)) on the
// squared determinant carried here. Outward-rounded.
inline RealInterval minkowski_radius_interval(unsigned k, const Rat& det_sq,
                                              mpfr_prec_t prec = kEnclosurePrec) {
  if (k == 0) throw std::invalid_argument("minkowski_radius_interval: k = 0");
  if (sgn(det_sq) <= 0) throw std::invalid_argument("minkowski_radius_interval: det_sq <= 0");
  detail::Mpfr half_arg(prec), gam(prec), root_g(prec), pi(prec), sq_pi(prec);
  detail::Mpfr dets(prec), root_d(prec), acc(prec), out(prec);
  // Gamma argument 1 + k/2 = (k+2)/2 is an exact dyadic.
  mpfr_set_ui(half_arg.get(), k + 2, MPFR_RNDN);
  mpfr_div_ui(half_arg.get(), half_arg.get(), 2, MPFR_RNDN);  // exact

  RealInterval res;
  for (int side = 0; side < 2; ++side) {
    mpfr_rnd_t rn = side == 0 ? MPFR_RNDD : MPFR_RNDU;
    mpfr_rnd_t ro = side == 0 ? MPFR_RNDU : MPFR_RNDD;  // opposite, for divisors
    mpfr_gamma(gam.get(), half_arg.get(), rn);
    mpfr_rootn_ui(root_g.get(), gam.get(), k, rn);
    mpfr_const_pi(pi.get(), ro);
    mpfr_sqrt(sq_pi.get(), pi.get(), ro);
    mpfr_set_q(dets.get(), det_sq.get_mpq_t(), rn);
    mpfr_rootn_ui(root_d.get(), dets.get(), 2ul * k, rn);
    mpfr_mul(acc.get(), root_g.get(), root_d.get(), rn);
    mpfr_mul_ui(acc.get(), acc.get(), 2, rn);
    mpfr_div(out.get(), acc.get(), sq_pi.get(), rn);
    if (side == 0)
      res.lo = detail::rat_from_mpfr(out.get());
    else
      res.hi = detail::rat_from_mpfr(out.get());
  }
  if (res.lo > res.hi) throw std::logic_error("minkowski_radius_interval: inverted interval");
  return res;
}

}  // namespace omegad
