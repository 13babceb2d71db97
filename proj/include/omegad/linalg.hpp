#pragma once
// Exact integer/rational matrix kit: row-style Hermite form with a tracked
// unimodular transform, integer kernels (always saturated), fraction-free
// determinants, and small rational solves. Matrices are row-major vectors of
// rows; rows of a matrix generate a row lattice.

#include <stdexcept>
#include <vector>

#include "omegad/rational.hpp"

namespace omegad {

template <typename T>
using Mat = std::vector<std::vector<T>>;

template <typename T>
inline Mat<T> make_mat(std::size_t rows, std::size_t cols, const T& fill = T(0)) {
  return Mat<T>(rows, std::vector<T>(cols, fill));
}

template <typename T>
inline Mat<T> identity_mat(std::size_t n) {
  Mat<T> m = make_mat<T>(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = T(1);
  return m;
}

template <typename T>
inline Mat<T> transpose(const Mat<T>& a) {
  if (a.empty()) return {};
  Mat<T> t = make_mat<T>(a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) t[j][i] = a[i][j];
  return t;
}

template <typename T>
inline Mat<T> mat_mul(const Mat<T>& a, const Mat<T>& b) {
  std::size_t n = a.size();
  std::size_t k = a.empty() ? 0 : a[0].size();
  if (k != b.size()) throw std::invalid_argument("mat_mul: shape mismatch");
  std::size_t m = b.empty() ? 0 : b[0].size();
  Mat<T> c = make_mat<T>(n, m);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) c[i][j] += a[i][l] * b[l][j];
    }
  return c;
}

struct HnfResult {
  Mat<Int> h;                   // Hermite form, pivot rows first, zero rows last
  Mat<Int> u;                   // unimodular with h = u * input
  std::vector<int> pivot_cols;  // one per nonzero row, strictly increasing
  int rank = 0;
};

// Row Hermite normal form: pivots positive, entries above each pivot reduced
// into [0, pivot). Canonical for the row lattice.
inline HnfResult row_hnf(const Mat<Int>& a) {
  HnfResult res;
  res.h = a;
  std::size_t m = a.size();
  std::size_t n = m == 0 ? 0 : a[0].size();
  res.u = identity_mat<Int>(m);
  Mat<Int>& h = res.h;
  Mat<Int>& u = res.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < n && r < m; ++c) {
    std::size_t piv = r;
    while (piv < m && sgn(h[piv][c]) == 0) ++piv;
    if (piv == m) continue;
    std::swap(h[r], h[piv]);
    std::swap(u[r], u[piv]);
    for (std::size_t i = r + 1; i < m; ++i) {
      if (sgn(h[i][c]) == 0) continue;
      Int g, s, t;
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), h[r][c].get_mpz_t(),
                 h[i][c].get_mpz_t());
      Int ar = h[r][c] / g;
      Int ai = h[i][c] / g;
      // [[s, t], [-ai, ar]] has determinant 1, so the row span is preserved.
      for (std::size_t j = 0; j < n; ++j) {
        Int nr = s * h[r][j] + t * h[i][j];
        Int ni = ar * h[i][j] - ai * h[r][j];
        h[r][j] = nr;
        h[i][j] = ni;
      }
      for (std::size_t j = 0; j < m; ++j) {
        Int nr = s * u[r][j] + t * u[i][j];
        Int ni = ar * u[i][j] - ai * u[r][j];
        u[r][j] = nr;
        u[i][j] = ni;
      }
    }
    if (sgn(h[r][c]) < 0) {
      for (std::size_t j = 0; j < n; ++j) h[r][j] = -h[r][j];
      for (std::size_t j = 0; j < m; ++j) u[r][j] = -u[r][j];
    }
    for (std::size_t i = 0; i < r; ++i) {
      Int q;
      mpz_fdiv_q(q.get_mpz_t(), h[i][c].get_mpz_t(), h[r][c].get_mpz_t());
      if (sgn(q) == 0) continue;
      for (std::size_t j = 0; j < n; ++j) h[i][j] -= q * h[r][j];
      for (std::size_t j = 0; j < m; ++j) u[i][j] -= q * u[r][j];
    }
    res.pivot_cols.push_back(static_cast<int>(c));
    ++r;
  }
  res.rank = static_cast<int>(r);
  return res;
}

// Basis of {x : a x = 0, x integral}, returned as Hermite-canonical rows.
// Transform rows sitting over the zero rows of HNF(a^T) form the left kernel
// of a^T, which is this kernel; being a direct summand it is saturated.
inline Mat<Int> int_kernel(const Mat<Int>& a, std::size_t ncols) {
  Mat<Int> at = transpose(a);
  if (at.empty()) at = make_mat<Int>(ncols, a.size() == 0 ? 0 : 1, Int(0));
  if (at.size() != ncols) throw std::invalid_argument("int_kernel: column count mismatch");
  HnfResult hr = row_hnf(at);
  Mat<Int> ker;
  for (std::size_t i = hr.rank; i < at.size(); ++i) ker.push_back(hr.u[i]);
  if (ker.empty()) return {};
  HnfResult canon = row_hnf(ker);
  Mat<Int> out(canon.h.begin(), canon.h.begin() + canon.rank);
  return out;
}

// Membership of x in the row lattice spanned by the rows of a Hermite form.
inline bool hnf_row_membership(const HnfResult& hnf, const IntVec& x) {
  IntVec r = x;
  for (int i = 0; i < hnf.rank; ++i) {
    int c = hnf.pivot_cols[static_cast<std::size_t>(i)];
    const Int& p = hnf.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
    if (sgn(r[static_cast<std::size_t>(c)]) == 0) continue;
    Int q, rem;
    mpz_fdiv_qr(q.get_mpz_t(), rem.get_mpz_t(), r[static_cast<std::size_t>(c)].get_mpz_t(),
                p.get_mpz_t());
    if (sgn(rem) != 0) return false;
    for (std::size_t j = 0; j < r.size(); ++j)
      r[j] -= q * hnf.h[static_cast<std::size_t>(i)][j];
  }
  return is_zero_vector(r);
}

inline Int bareiss_det(const Mat<Int>& a) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("bareiss_det: not square");
  if (n == 0) return Int(1);
  Mat<Int> m = a;
  Int prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(m[k][k]) == 0) {
      std::size_t piv = k + 1;
      while (piv < n && sgn(m[piv][k]) == 0) ++piv;
      if (piv == n) return Int(0);
      std::swap(m[k], m[piv]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i)
      for (std::size_t j = k + 1; j < n; ++j) {
        Int t = m[i][j] * m[k][k] - m[i][k] * m[k][j];
        m[i][j] = t / prev;  // exact by the fraction-free identity
      }
    prev = m[k][k];
  }
  Int d = m[n - 1][n - 1];
  if (sign < 0) d = -d;
  return d;
}

inline Rat det_rat(const Mat<Rat>& a) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("det_rat: not square");
  if (n == 0) return Rat(1);
  Mat<Rat> m = a;
  Rat det(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(m[piv][k]) == 0) ++piv;
    if (piv == n) return Rat(0);
    if (piv != k) {
      std::swap(m[k], m[piv]);
      det = -det;
    }
    det *= m[k][k];
    Rat inv = Rat(1) / m[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      if (sgn(m[i][k]) == 0) continue;
      Rat f = m[i][k] * inv;
      for (std::size_t j = k; j < n; ++j) m[i][j] -= f * m[k][j];
    }
  }
  return det;
}

// Gauss-Jordan inverse; throws on singular input.
inline Mat<Rat> inverse_rat(const Mat<Rat>& a) {
  std::size_t n = a.size();
  for (const auto& row : a)
    if (row.size() != n) throw std::invalid_argument("inverse_rat: not square");
  Mat<Rat> m = a;
  Mat<Rat> inv = identity_mat<Rat>(n);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    while (piv < n && sgn(m[piv][k]) == 0) ++piv;
    if (piv == n) throw std::invalid_argument("inverse_rat: singular");
    std::swap(m[k], m[piv]);
    std::swap(inv[k], inv[piv]);
    Rat f = Rat(1) / m[k][k];
    for (std::size_t j = 0; j < n; ++j) {
      m[k][j] *= f;
      inv[k][j] *= f;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == k || sgn(m[i][k]) == 0) continue;
      Rat g = m[i][k];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= g * m[k][j];
        inv[i][j] -= g * inv[k][j];
      }
    }
  }
  return inv;
}

template <typename T>
inline Mat<Rat> gram_matrix(const Mat<T>& rows) {
  std::size_t r = rows.size();
  Mat<Rat> g = make_mat<Rat>(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      Rat s(0);
      for (std::size_t k = 0; k < rows[i].size(); ++k) s += Rat(rows[i][k]) * Rat(rows[j][k]);
      g[i][j] = s;
      g[j][i] = s;
    }
  return g;
}

inline Mat<Int> gram_matrix_int(const Mat<Int>& rows) {
  std::size_t r = rows.size();
  Mat<Int> g = make_mat<Int>(r, r);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i; j < r; ++j) {
      Int s(0);
      for (std::size_t k = 0; k < rows[i].size(); ++k) s += rows[i][k] * rows[j][k];
      g[i][j] = s;
      g[j][i] = s;
    }
  return g;
}

inline int rank_rat(const Mat<Rat>& a) {
  Mat<Rat> m = a;
  std::size_t rows = m.size();
  std::size_t cols = rows == 0 ? 0 : m[0].size();
  int rank = 0;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && sgn(m[piv][c]) == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[r], m[piv]);
    Rat inv = Rat(1) / m[r][c];
    for (std::size_t i = r + 1; i < rows; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      Rat f = m[i][c] * inv;
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    ++r;
    ++rank;
  }
  return rank;
}

inline int rank_int(const Mat<Int>& a) {
  Mat<Rat> m = make_mat<Rat>(a.size(), a.empty() ? 0 : a[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) m[i][j] = Rat(a[i][j]);
  return rank_rat(m);
}

}  // namespace omegad
