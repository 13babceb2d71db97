#pragma once
// Sparse exterior-algebra vectors over exact scalars. A multivector of grade
// k in ambient dimension m is a map from strictly increasing k-tuples of
// {0..m-1} to nonzero coefficients; tuples order lexicographically, which is
// also the iteration order, so serialization and sign normalization are
// canonical for free.

#include <cstdint>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "omegad/linalg.hpp"
#include "omegad/rational.hpp"

namespace omegad {

using BladeKey = std::vector<std::uint8_t>;

template <typename T>
class Multivector {
 public:
  Multivector(int dim, int grade) : dim_(dim), grade_(grade) {
    if (dim < 0 || dim > 255) throw std::invalid_argument("Multivector: bad dim");
    if (grade < 0) throw std::invalid_argument("Multivector: bad grade");
  }

  static Multivector from_vector(const std::vector<T>& v) {
    Multivector mv(static_cast<int>(v.size()), 1);
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (sgn(v[i]) == 0) continue;
      mv.coords_.emplace(BladeKey{static_cast<std::uint8_t>(i)}, v[i]);
    }
    return mv;
  }

  int dim() const { return dim_; }
  int grade() const { return grade_; }
  bool is_zero() const { return coords_.empty(); }
  const std::map<BladeKey, T>& coords() const { return coords_; }

  T coeff(const BladeKey& key) const {
    auto it = coords_.find(key);
    return it == coords_.end() ? T(0) : it->second;
  }

  void set_coeff(const BladeKey& key, const T& value) {
    check_key(key);
    if (sgn(value) == 0)
      coords_.erase(key);
    else
      coords_[key] = value;
  }

  Multivector operator-() const {
    Multivector r(*this);
    for (auto& [k, v] : r.coords_) v = -v;
    return r;
  }

  Multivector& operator+=(const Multivector& o) {
    require_same_shape(o, "operator+=");
    for (const auto& [k, v] : o.coords_) {
      auto it = coords_.find(k);
      if (it == coords_.end()) {
        coords_.emplace(k, v);
      } else {
        it->second += v;
        if (sgn(it->second) == 0) coords_.erase(it);
      }
    }
    return *this;
  }

  Multivector& operator-=(const Multivector& o) { return *this += -o; }

  Multivector& operator*=(const T& s) {
    if (sgn(s) == 0) {
      coords_.clear();
      return *this;
    }
    for (auto& [k, v] : coords_) v *= s;
    return *this;
  }

  friend Multivector operator+(Multivector a, const Multivector& b) { return a += b; }
  friend Multivector operator-(Multivector a, const Multivector& b) { return a -= b; }
  friend Multivector operator*(Multivector a, const T& s) { return a *= s; }

  friend bool operator==(const Multivector& a, const Multivector& b) {
    return a.dim_ == b.dim_ && a.grade_ == b.grade_ && a.coords_ == b.coords_;
  }

 private:
  void check_key(const BladeKey& key) const {
    if (static_cast<int>(key.size()) != grade_) throw std::invalid_argument("blade key: wrong grade");
    for (std::size_t i = 0; i < key.size(); ++i) {
      if (key[i] >= dim_) throw std::invalid_argument("blade key: index out of range");
      if (i > 0 && key[i - 1] >= key[i]) throw std::invalid_argument("blade key: not increasing");
    }
  }

  void require_same_shape(const Multivector& o, const char* where) const {
    if (dim_ != o.dim_ || grade_ != o.grade_)
      throw std::invalid_argument(std::string(where) + ": shape mismatch");
  }

  int dim_;
  int grade_;
  std::map<BladeKey, T> coords_;
};

namespace detail {

// Sign of merging key b after key a, with a collision reported as absent.
// Each element of b walks left past the larger elements of a.
inline std::optional<std::pair<BladeKey, int>> merge_keys(const BladeKey& a, const BladeKey& b) {
  BladeKey merged;
  merged.reserve(a.size() + b.size());
  std::size_t inversions = 0;
  for (std::uint8_t x : b) {
    std::size_t greater = 0;
    for (std::uint8_t y : a) {
      if (y == x) return std::nullopt;
      if (y > x) ++greater;
    }
    inversions += greater;
  }
  std::size_t i = 0, j = 0;
  while (i < a.size() && j < b.size())
    merged.push_back(a[i] < b[j] ? a[i++] : b[j++]);
  while (i < a.size()) merged.push_back(a[i++]);
  while (j < b.size()) merged.push_back(b[j++]);
  return std::make_pair(merged, (inversions % 2 == 0) ? 1 : -1);
}

}  // namespace detail

template <typename T>
inline Multivector<T> wedge(const Multivector<T>& a, const Multivector<T>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dim mismatch");
  Multivector<T> r(a.dim(), a.grade() + b.grade());
  for (const auto& [ka, va] : a.coords())
    for (const auto& [kb, vb] : b.coords()) {
      auto merged = detail::merge_keys(ka, kb);
      if (!merged) continue;
      T term = va * vb;
      if (merged->second < 0) term = -term;
      T now = r.coeff(merged->first) + term;
      r.set_coeff(merged->first, now);
    }
  return r;
}

template <typename T>
inline T dot(const Multivector<T>& a, const Multivector<T>& b) {
  if (a.dim() != b.dim() || a.grade() != b.grade())
    throw std::invalid_argument("dot: shape mismatch");
  T s(0);
  const auto& small = a.coords().size() <= b.coords().size() ? a : b;
  const auto& large = a.coords().size() <= b.coords().size() ? b : a;
  for (const auto& [k, v] : small.coords()) s += v * large.coeff(k);
  return s;
}

template <typename T>
inline T norm_sq(const Multivector<T>& a) {
  T s(0);
  for (const auto& [k, v] : a.coords()) s += v * v;
  return s;
}

inline Int content(const Multivector<Int>& a) {
  Int g(0);
  for (const auto& [k, v] : a.coords()) {
    Int x = abs(v);
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  }
  return g;
}

// Coprime coefficients, lexicographically least blade positive.
inline Multivector<Int> primitive_part(const Multivector<Int>& a) {
  Int g = content(a);
  if (sgn(g) == 0) return a;
  if (sgn(a.coords().begin()->second) < 0) g = -g;
  Multivector<Int> r(a.dim(), a.grade());
  for (const auto& [k, v] : a.coords()) r.set_coeff(k, Int(v / g));
  return r;
}

inline bool is_primitive(const Multivector<Int>& a) {
  if (a.is_zero()) return false;
  return content(a) == 1 && sgn(a.coords().begin()->second) > 0;
}

inline Multivector<Rat> to_rat(const Multivector<Int>& a) {
  Multivector<Rat> r(a.dim(), a.grade());
  for (const auto& [k, v] : a.coords()) r.set_coeff(k, Rat(v));
  return r;
}

// Common-denominator clearing: returns (integer multivector, den) with
// input = result / den.
inline std::pair<Multivector<Int>, Int> clear_denominators(const Multivector<Rat>& a) {
  Int den(1);
  for (const auto& [k, v] : a.coords())
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  Multivector<Int> r(a.dim(), a.grade());
  for (const auto& [k, v] : a.coords()) {
    Rat scaled = v * Rat(den);
    if (scaled.get_den() != 1) throw std::logic_error("clear_denominators: not integral");
    r.set_coeff(k, Int(scaled.get_num()));
  }
  return {r, den};
}

// Integer annihilator {v : v wedge a = 0}, saturated by construction.
inline Mat<Int> annihilator_basis(const Multivector<Int>& a) {
  int dim = a.dim();
  std::map<BladeKey, std::size_t> row_of;
  Mat<Int> cols(static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j) {
    std::vector<Int> unit(static_cast<std::size_t>(dim), Int(0));
    unit[static_cast<std::size_t>(j)] = 1;
    Multivector<Int> ej = Multivector<Int>::from_vector(unit);
    Multivector<Int> w = wedge(ej, a);
    for (const auto& [k, v] : w.coords()) {
      auto [it, fresh] = row_of.emplace(k, row_of.size());
      (void)fresh;
      std::size_t r = it->second;
      auto& col = cols[static_cast<std::size_t>(j)];
      if (col.size() <= r) col.resize(row_of.size(), Int(0));
      col[r] = v;
    }
  }
  std::size_t rows = row_of.size();
  Mat<Int> m = make_mat<Int>(rows, static_cast<std::size_t>(dim));
  for (int j = 0; j < dim; ++j)
    for (std::size_t r = 0; r < cols[static_cast<std::size_t>(j)].size(); ++r)
      m[r][static_cast<std::size_t>(j)] = cols[static_cast<std::size_t>(j)][r];
  return int_kernel(m, static_cast<std::size_t>(dim));
}

// A nonzero grade-k multivector is a wedge of k vectors exactly when its
// annihilator has rank k; the annihilator rows then span that subspace.
inline std::optional<Mat<Int>> is_decomposable(const Multivector<Int>& a) {
  if (a.is_zero()) throw std::invalid_argument("is_decomposable: zero multivector");
  if (a.grade() < 1 || a.grade() > a.dim() - 1)
    throw std::invalid_argument("is_decomposable: grade out of range");
  Mat<Int> ker = annihilator_basis(a);
  if (static_cast<int>(ker.size()) != a.grade()) return std::nullopt;
  return ker;
}

inline std::optional<Mat<Int>> is_decomposable(const Multivector<Rat>& a) {
  auto [scaled, den] = clear_denominators(a);
  (void)den;
  return is_decomposable(scaled);
}

template <typename T>
inline std::string blade_string(const Multivector<T>& a) {
  std::ostringstream os;
  bool first = true;
  for (const auto& [k, v] : a.coords()) {
    if (!first) os << ";";
    first = false;
    os << "(";
    for (std::size_t i = 0; i < k.size(); ++i) {
      if (i) os << ",";
      os << static_cast<int>(k[i]);
    }
    os << "):" << v.get_str();
  }
  if (first) os << "0";
  return os.str();
}

}  // namespace omegad
