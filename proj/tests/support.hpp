#pragma once
// Shared test plumbing: seeded generators and independent brute-force
// oracles. Oracles deliberately avoid the code paths they are used to
// check (cofactor determinants, coordinate-box scans, Gram-Schmidt).

#include <algorithm>
#include <functional>
#include <map>
#include <random>
#include <vector>

#include <omegad/omegad.hpp>

namespace testsupport {

using omegad::BladeKey;
using omegad::Int;
using omegad::IntVec;
using omegad::Mat;
using omegad::Rat;
using omegad::RatVec;

inline std::mt19937_64 test_rng(unsigned long seed) { return std::mt19937_64(seed); }

inline IntVec rand_int_vec(std::mt19937_64& rng, int len, long lo, long hi) {
  std::uniform_int_distribution<long> d(lo, hi);
  IntVec v;
  for (int i = 0; i < len; ++i) v.emplace_back(d(rng));
  return v;
}

inline Mat<Int> rand_int_mat(std::mt19937_64& rng, int rows, int cols, long lo, long hi) {
  Mat<Int> m;
  for (int i = 0; i < rows; ++i) m.push_back(rand_int_vec(rng, cols, lo, hi));
  return m;
}

// Random proper subspace of P^n with small integer generators; retries
// until the requested dimension comes out.
inline omegad::RationalSubspace rand_subspace(std::mt19937_64& rng, int n, int d,
                                              long entry_bound = 9) {
  for (int attempt = 0; attempt < 256; ++attempt) {
    Mat<Int> gens = rand_int_mat(rng, d + 1, n + 1, -entry_bound, entry_bound);
    try {
      omegad::RationalSubspace s = omegad::RationalSubspace::from_generators(n, gens);
      if (s.dim() == d) return s;
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("rand_subspace: exhausted attempts");
}

inline omegad::PointProxy rand_proxy(std::mt19937_64& rng, int n, long den = 1 << 16) {
  std::uniform_int_distribution<long> num(1, den - 1);
  RatVec c;
  c.push_back(Rat(1));
  for (int i = 0; i < n; ++i) c.push_back(omegad::make_rat(Int(num(rng)), Int(den)));
  return omegad::PointProxy(c, Rat(0));
}

// Cofactor-expansion determinant, quadratic-form-free and independent of
// the fraction-free elimination in the library.
template <typename T>
inline T det_cofactor(const Mat<T>& m) {
  std::size_t n = m.size();
  if (n == 0) return T(1);
  if (n == 1) return m[0][0];
  T acc(0);
  for (std::size_t j = 0; j < n; ++j) {
    if (sgn(m[0][j]) == 0) continue;
    Mat<T> minor;
    for (std::size_t i = 1; i < n; ++i) {
      typename Mat<T>::value_type row;
      for (std::size_t k = 0; k < n; ++k)
        if (k != j) row.push_back(m[i][k]);
      minor.push_back(row);
    }
    T term = m[0][j] * det_cofactor(minor);
    if (j % 2 == 0)
      acc += term;
    else
      acc -= term;
  }
  return acc;
}

inline void combinations(int n, int k, const std::function<void(const std::vector<int>&)>& emit) {
  std::vector<int> idx(static_cast<std::size_t>(k));
  std::function<void(int, int)> rec = [&](int start, int depth) {
    if (depth == k) {
      emit(idx);
      return;
    }
    for (int i = start; i < n; ++i) {
      idx[static_cast<std::size_t>(depth)] = i;
      rec(i + 1, depth + 1);
    }
  };
  rec(0, 0);
}

// Grade-(r) coordinates of the wedge of r rows, each coordinate a cofactor
// determinant of the selected column minor.
inline std::map<BladeKey, Int> wedge_minor_oracle(const Mat<Int>& rows) {
  int r = static_cast<int>(rows.size());
  int m = static_cast<int>(rows[0].size());
  std::map<BladeKey, Int> out;
  combinations(m, r, [&](const std::vector<int>& cols) {
    Mat<Int> sq;
    for (int i = 0; i < r; ++i) {
      IntVec row;
      for (int c : cols) row.push_back(rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]);
      sq.push_back(row);
    }
    Int d = det_cofactor(sq);
    if (sgn(d) != 0) {
      BladeKey key;
      for (int c : cols) key.push_back(static_cast<std::uint8_t>(c));
      out.emplace(key, d);
    }
  });
  return out;
}

// Squared sine of the angle between y and the row span, through explicit
// Gram-Schmidt projection.
inline Rat projection_distance_oracle(const RatVec& y, const Mat<Rat>& basis) {
  Mat<Rat> ortho;
  for (const RatVec& row : basis) {
    RatVec v = row;
    for (const RatVec& u : ortho) {
      Rat num(0), den(0);
      for (std::size_t i = 0; i < v.size(); ++i) {
        num += v[i] * u[i];
        den += u[i] * u[i];
      }
      Rat coef = num / den;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= coef * u[i];
    }
    bool zero = true;
    for (const Rat& c : v)
      if (sgn(c) != 0) zero = false;
    if (!zero) ortho.push_back(v);
  }
  RatVec resid = y;
  for (const RatVec& u : ortho) {
    Rat num(0), den(0);
    for (std::size_t i = 0; i < resid.size(); ++i) {
      num += resid[i] * u[i];
      den += u[i] * u[i];
    }
    Rat coef = num / den;
    for (std::size_t i = 0; i < resid.size(); ++i) resid[i] -= coef * u[i];
  }
  Rat rn(0), yn(0);
  for (std::size_t i = 0; i < y.size(); ++i) {
    rn += resid[i] * resid[i];
    yn += y[i] * y[i];
  }
  return rn / yn;
}

// Minimum of the quadratic form over the coefficient box, zero excluded.
inline Rat svp_box_oracle(const Mat<Rat>& gram, long box) {
  int r = static_cast<int>(gram.size());
  std::vector<long> x(static_cast<std::size_t>(r), -box);
  Rat best(-1);
  while (true) {
    bool zero = true;
    for (long c : x)
      if (c != 0) zero = false;
    if (!zero) {
      Rat q(0);
      for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
          q += gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * Rat(x[static_cast<std::size_t>(i)]) *
               Rat(x[static_cast<std::size_t>(j)]);
      if (best < Rat(0) || q < best) best = q;
    }
    int k = 0;
    while (k < r && x[static_cast<std::size_t>(k)] == box) {
      x[static_cast<std::size_t>(k)] = -box;
      ++k;
    }
    if (k == r) break;
    ++x[static_cast<std::size_t>(k)];
  }
  return best;
}

// All d-dimensional rational subvarieties of P^n with height_sq <= h_sq,
// listed by scanning primitive decomposable Grassmann coordinates in the
// coordinate box. Tiny cases only.
inline std::vector<std::string> subspace_scan_oracle(int n, int d, long h_sq) {
  int m = n + 1;
  int k = d + 1;
  std::vector<BladeKey> keys;
  combinations(m, k, [&](const std::vector<int>& cols) {
    BladeKey key;
    for (int c : cols) key.push_back(static_cast<std::uint8_t>(c));
    keys.push_back(key);
  });
  long box = 0;
  while ((box + 1) * (box + 1) <= h_sq) ++box;
  std::vector<std::string> found;
  std::vector<long> coeff(keys.size(), -box);
  while (true) {
    long norm = 0;
    for (long c : coeff) norm += c * c;
    if (norm >= 1 && norm <= h_sq) {
      omegad::Multivector<Int> mv(m, k);
      for (std::size_t i = 0; i < keys.size(); ++i)
        if (coeff[i] != 0) mv.set_coeff(keys[i], Int(coeff[i]));
      if (omegad::is_primitive(mv)) {
        std::optional<Mat<Int>> basis = omegad::is_decomposable(mv);
        if (basis)
          found.push_back(omegad::RationalSubspace::from_generators(n, *basis).serialize());
      }
    }
    std::size_t j = 0;
    while (j < coeff.size() && coeff[j] == box) {
      coeff[j] = -box;
      ++j;
    }
    if (j == coeff.size()) break;
    ++coeff[j];
  }
  std::sort(found.begin(), found.end());
  found.erase(std::unique(found.begin(), found.end()), found.end());
  return found;
}

}  // namespace testsupport
