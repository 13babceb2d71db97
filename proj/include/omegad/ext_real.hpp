#pragma once
// Exact extended reals: rationals plus both infinities, just enough to state
// exponent values and evaluate the linear-fractional transfer thresholds at
// infinite exponents by their limits.

#include <stdexcept>
#include <string>

#include "omegad/rational.hpp"

namespace omegad {

class ExtReal {
 public:
  ExtReal() : cls_(Cls::finite), v_(0) {}
  ExtReal(const Rat& v) : cls_(Cls::finite), v_(v) {}
  ExtReal(const Int& v) : cls_(Cls::finite), v_(Rat(v)) {}
  ExtReal(int v) : cls_(Cls::finite), v_(Rat(v)) {}

  static ExtReal infinity() { return ExtReal(Cls::pos_inf); }
  static ExtReal neg_infinity() { return ExtReal(Cls::neg_inf); }

  bool is_finite() const { return cls_ == Cls::finite; }
  bool is_pos_inf() const { return cls_ == Cls::pos_inf; }
  bool is_neg_inf() const { return cls_ == Cls::neg_inf; }

  const Rat& value() const {
    if (!is_finite()) throw std::domain_error("ExtReal: not finite");
    return v_;
  }

  friend bool operator==(const ExtReal& a, const ExtReal& b) {
    if (a.cls_ != b.cls_) return false;
    return a.cls_ != Cls::finite || a.v_ == b.v_;
  }
  friend bool operator!=(const ExtReal& a, const ExtReal& b) { return !(a == b); }
  friend bool operator<(const ExtReal& a, const ExtReal& b) {
    if (a.cls_ == Cls::neg_inf) return b.cls_ != Cls::neg_inf;
    if (a.cls_ == Cls::pos_inf) return false;
    if (b.cls_ == Cls::pos_inf) return true;
    if (b.cls_ == Cls::neg_inf) return false;
    return a.v_ < b.v_;
  }
  friend bool operator<=(const ExtReal& a, const ExtReal& b) { return a < b || a == b; }
  friend bool operator>(const ExtReal& a, const ExtReal& b) { return b < a; }
  friend bool operator>=(const ExtReal& a, const ExtReal& b) { return b <= a; }

  std::string str() const {
    if (is_pos_inf()) return "inf";
    if (is_neg_inf()) return "-inf";
    return v_.get_str();
  }

 private:
  enum class Cls { finite, pos_inf, neg_inf };
  explicit ExtReal(Cls c) : cls_(c), v_(0) {}
  Cls cls_;
  Rat v_;
};

// (a w + b) / (c w + e) evaluated on the extended line, taking the limit at
// infinite w. Divergent finite cases (zero denominator) go to the signed
// infinity of the numerator; 0/0 is a domain error.
inline ExtReal eval_mobius(const Rat& a, const Rat& b, const Rat& c, const Rat& e,
                           const ExtReal& w) {
  if (w.is_finite()) {
    Rat den = c * w.value() + e;
    Rat num = a * w.value() + b;
    if (sgn(den) == 0) {
      if (sgn(num) > 0) return ExtReal::infinity();
      if (sgn(num) < 0) return ExtReal::neg_infinity();
      throw std::domain_error("eval_mobius: 0/0");
    }
    return ExtReal(num / den);
  }
  bool pos = w.is_pos_inf();
  if (sgn(c) != 0) return ExtReal(a / c);
  if (sgn(a) != 0) {
    bool up = (sgn(a) > 0) == pos;
    return up ? ExtReal::infinity() : ExtReal::neg_infinity();
  }
  if (sgn(e) == 0) throw std::domain_error("eval_mobius: degenerate map");
  return ExtReal(b / e);
}

inline std::string ext_decimal(const ExtReal& x, unsigned digits, RoundDir dir) {
  if (x.is_pos_inf()) return "inf";
  if (x.is_neg_inf()) return "-inf";
  return to_decimal(x.value(), digits, dir);
}

}  // namespace omegad
