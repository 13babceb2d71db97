#pragma once
// Lattices are carried abstractly by an exact rational Gram matrix plus
// optional bookkeeping tying basis elements back to ambient coordinates.
// Everything here is exact: LLL runs on rationals with delta = 3/4, and the
// enumerator derives integer coordinate ranges from scaled integer square
// roots, so no floating point decision is ever made.

#include <algorithm>
#include <functional>
#include <optional>
#include <stdexcept>
#include <vector>

#include "omegad/interval.hpp"
#include "omegad/linalg.hpp"
#include "omegad/rational.hpp"

namespace omegad {

inline constexpr int kMaxEnumRank = 12;

// Canonical basis of a saturated row lattice in ambient integer coordinates.
struct HnfBasis {
  int ambient = 0;
  Mat<Int> rows;

  int rank() const { return static_cast<int>(rows.size()); }
};

// Saturation of the span of the generators: integer points of the rational
// row span, computed as the kernel of the kernel (both kernels come out
// saturated and Hermite-canonical).
inline HnfBasis saturate(const Mat<Int>& generators, int ambient) {
  if (ambient <= 0) throw std::invalid_argument("saturate: bad ambient");
  for (const auto& row : generators)
    if (static_cast<int>(row.size()) != ambient)
      throw std::invalid_argument("saturate: row length mismatch");
  bool any = false;
  for (const auto& row : generators)
    if (!is_zero_vector(row)) any = true;
  if (!any) throw std::invalid_argument("saturate: all generators zero");
  Mat<Int> perp = int_kernel(generators, static_cast<std::size_t>(ambient));
  Mat<Int> sat = int_kernel(perp, static_cast<std::size_t>(ambient));
  return HnfBasis{ambient, sat};
}

struct GramLattice {
  int rank = 0;
  Mat<Rat> gram;
  // Rows of ambient integer vectors mapping abstract basis elements back to
  // the ambient lattice (outputs of orthogonal projection carry the integer
  // preimages here).
  std::optional<Mat<Int>> lift;
  // Exact ambient rational coordinates of the basis elements, when known.
  std::optional<Mat<Rat>> ambient;

  void validate() const {
    if (rank <= 0) throw std::invalid_argument("GramLattice: empty basis");
    if (static_cast<int>(gram.size()) != rank)
      throw std::invalid_argument("GramLattice: gram size");
    for (const auto& row : gram)
      if (static_cast<int>(row.size()) != rank)
        throw std::invalid_argument("GramLattice: gram not square");
    for (int i = 0; i < rank; ++i)
      for (int j = i + 1; j < rank; ++j)
        if (gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
            gram[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)])
          throw std::invalid_argument("GramLattice: gram not symmetric");
    // Positive definiteness via leading principal minors.
    for (int k = 1; k <= rank; ++k) {
      Mat<Rat> lead = make_mat<Rat>(static_cast<std::size_t>(k), static_cast<std::size_t>(k));
      for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j)
          lead[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
              gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (sgn(det_rat(lead)) <= 0)
        throw std::invalid_argument("GramLattice: gram not positive definite");
    }
  }
};

template <typename T>
inline GramLattice gram_lattice_from_rows(const Mat<T>& rows) {
  GramLattice L;
  L.rank = static_cast<int>(rows.size());
  L.gram = gram_matrix(rows);
  if constexpr (std::is_same_v<T, Int>) {
    L.lift = rows;
    Mat<Rat> amb = make_mat<Rat>(rows.size(), rows.empty() ? 0 : rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < rows[i].size(); ++j) amb[i][j] = Rat(rows[i][j]);
    L.ambient = amb;
  } else {
    L.ambient = rows;
  }
  L.validate();
  return L;
}

inline Rat det_sq(const GramLattice& L) { return det_rat(L.gram); }

// Orthogonal projection of the ambient integer lattice onto the complement
// of the span of basis.rows. Basis elements keep exact rational ambient
// coordinates plus the integer ambient vectors they are the projections of.
inline GramLattice project_orthogonal(const HnfBasis& basis) {
  int N = basis.ambient;
  int r = basis.rank();
  if (r <= 0) throw std::invalid_argument("project_orthogonal: empty basis");
  if (r >= N) throw std::invalid_argument("project_orthogonal: nothing orthogonal left");
  Mat<Int> bbt = gram_matrix_int(basis.rows);
  Int d = bareiss_det(bbt);
  if (sgn(d) <= 0) throw std::invalid_argument("project_orthogonal: dependent basis rows");
  // Adjugate via rational inverse; entries are integers by construction.
  Mat<Rat> bbt_q = make_mat<Rat>(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j)
      bbt_q[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          Rat(bbt[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  Mat<Rat> inv = inverse_rat(bbt_q);
  Mat<Int> adj = make_mat<Int>(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
  for (int i = 0; i < r; ++i)
    for (int j = 0; j < r; ++j) {
      Rat e = inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * Rat(d);
      if (e.get_den() != 1) throw std::logic_error("project_orthogonal: adjugate not integral");
      adj[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = e.get_num();
    }
  // d * (I - P) where P projects onto the row span; integer matrix.
  Mat<Int> bt = transpose(basis.rows);
  Mat<Int> m = mat_mul(bt, mat_mul(adj, basis.rows));
  Mat<Int> g = make_mat<Int>(static_cast<std::size_t>(N), static_cast<std::size_t>(N));
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      Int v = -m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (i == j) v += d;
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
    }
  HnfResult hnf = row_hnf(g);
  if (hnf.rank != N - r) throw std::logic_error("project_orthogonal: unexpected projection rank");
  Mat<Int> h_rows(hnf.h.begin(), hnf.h.begin() + hnf.rank);
  Mat<Int> lift_rows(hnf.u.begin(), hnf.u.begin() + hnf.rank);
  GramLattice L;
  L.rank = N - r;
  L.gram = make_mat<Rat>(static_cast<std::size_t>(L.rank), static_cast<std::size_t>(L.rank));
  Rat dsq = Rat(d) * Rat(d);
  for (int i = 0; i < L.rank; ++i)
    for (int j = i; j < L.rank; ++j) {
      Int s(0);
      for (int k = 0; k < N; ++k)
        s += h_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
             h_rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)];
      Rat v = make_rat(s, Int(1)) / dsq;
      L.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
      L.gram[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] = v;
    }
  L.lift = lift_rows;
  Mat<Rat> amb = make_mat<Rat>(static_cast<std::size_t>(L.rank), static_cast<std::size_t>(N));
  for (int i = 0; i < L.rank; ++i)
    for (int k = 0; k < N; ++k)
      amb[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          make_rat(h_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)], d);
  L.ambient = amb;
  L.validate();
  return L;
}

namespace detail {

struct Gso {
  std::vector<Rat> b;  // squared lengths of the orthogonalized vectors
  Mat<Rat> mu;         // lower triangular
  Mat<Rat> c;          // c[i][j] = <b_i, b*_j>
};

inline void gso_row(const Mat<Rat>& g, Gso& s, int i) {
  int n = static_cast<int>(g.size());
  (void)n;
  for (int j = 0; j < i; ++j) {
    Rat cij = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    for (int l = 0; l < j; ++l)
      cij -= s.mu[static_cast<std::size_t>(j)][static_cast<std::size_t>(l)] *
             s.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
    s.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cij;
    s.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = cij / s.b[static_cast<std::size_t>(j)];
  }
  Rat bi = g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
  for (int l = 0; l < i; ++l)
    bi -= s.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] *
          s.c[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)];
  s.b[static_cast<std::size_t>(i)] = bi;
}

inline Gso gso_all(const Mat<Rat>& g) {
  int n = static_cast<int>(g.size());
  Gso s;
  s.b.assign(static_cast<std::size_t>(n), Rat(0));
  s.mu = make_mat<Rat>(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  s.c = make_mat<Rat>(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) gso_row(g, s, i);
  return s;
}

}  // namespace detail

struct LllResult {
  GramLattice lat;
  Mat<Int> change;  // reduced basis = change * input basis
};

// Exact Lovasz-reduction with delta = 3/4 on the Gram matrix alone.
inline LllResult lll_reduce(const GramLattice& L) {
  int n = L.rank;
  Mat<Rat> g = L.gram;
  Mat<Int> t = identity_mat<Int>(static_cast<std::size_t>(n));
  detail::Gso s = detail::gso_all(g);
  const Rat delta(3, 4);

  auto size_reduce = [&](int k, int j) {
    Int q = round_nearest(s.mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]);
    if (sgn(q) == 0) return;
    Rat qq(q);
    Rat gkk = g[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
              Rat(2) * qq * g[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)] +
              qq * qq * g[static_cast<std::size_t>(j)][static_cast<std::size_t>(j)];
    for (int i = 0; i < n; ++i) {
      if (i == k) continue;
      Rat v = g[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] -
              qq * g[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
      g[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = v;
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = v;
    }
    g[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] = gkk;
    for (int i = 0; i < n; ++i)
      t[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] -=
          q * t[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)];
    detail::gso_row(g, s, k);
  };

  int k = 1;
  while (k < n) {
    size_reduce(k, k - 1);
    Rat mu2 = s.mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 1)] *
              s.mu[static_cast<std::size_t>(k)][static_cast<std::size_t>(k - 1)];
    if (s.b[static_cast<std::size_t>(k)] >= (delta - mu2) * s.b[static_cast<std::size_t>(k - 1)]) {
      for (int j = k - 2; j >= 0; --j) size_reduce(k, j);
      ++k;
    } else {
      std::swap(g[static_cast<std::size_t>(k)], g[static_cast<std::size_t>(k - 1)]);
      for (int i = 0; i < n; ++i)
        std::swap(g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                  g[static_cast<std::size_t>(i)][static_cast<std::size_t>(k - 1)]);
      std::swap(t[static_cast<std::size_t>(k)], t[static_cast<std::size_t>(k - 1)]);
      for (int i = k - 1; i < n; ++i) detail::gso_row(g, s, i);
      k = std::max(1, k - 1);
    }
  }

  LllResult out;
  out.lat.rank = n;
  out.lat.gram = g;
  if (L.lift) out.lat.lift = mat_mul(t, *L.lift);
  if (L.ambient) {
    Mat<Rat> tq = make_mat<Rat>(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        tq[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            Rat(t[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    out.lat.ambient = mat_mul(tq, *L.ambient);
  }
  out.change = t;
  out.lat.validate();
  return out;
}

namespace detail {

// Integer range of x with (x + c)^2 <= t, empty when t < 0.
inline bool coord_range(const Rat& c, const Rat& t, Int& lo, Int& hi) {
  if (sgn(t) < 0) return false;
  // (x q + p)^2 <= t q^2 with c = p / q; the left side is an integer.
  const Int& p = c.get_num();
  const Int& q = c.get_den();
  Rat bound = t * Rat(q) * Rat(q);
  Int cap = floor_rat(bound);
  if (sgn(cap) < 0) return false;
  Int root = isqrt_floor(cap);
  lo = ceil_rat(make_rat(-root - p, q));
  hi = floor_rat(make_rat(root - p, q));
  return lo <= hi;
}

struct EnumFrame {
  std::vector<Rat> center;
  std::vector<Rat> partial;
};

}  // namespace detail

// Depth-first traversal of all nonzero lattice vectors with squared norm
// <= bound, in coefficients of the given basis. Visits x and -x separately.
// Returns false when the node budget ran out (the callback may have seen
// only part of the set).
inline bool enumerate_below(const GramLattice& L, const Rat& bound, long max_nodes,
                            const std::function<void(const IntVec&, const Rat&)>& visit) {
  int n = L.rank;
  detail::Gso s = detail::gso_all(L.gram);
  IntVec x(static_cast<std::size_t>(n), Int(0));
  long nodes = 0;
  bool complete = true;

  // partial[j] = contribution of levels > j; center[j] depends on x at
  // levels > j only.
  std::function<void(int, const Rat&)> descend = [&](int level, const Rat& used) {
    if (!complete) return;
    if (++nodes > max_nodes) {
      complete = false;
      return;
    }
    if (level < 0) {
      bool zero = true;
      for (const Int& c : x)
        if (sgn(c) != 0) zero = false;
      if (!zero) visit(x, used);
      return;
    }
    Rat c(0);
    for (int i = level + 1; i < n; ++i)
      c += s.mu[static_cast<std::size_t>(i)][static_cast<std::size_t>(level)] *
           Rat(x[static_cast<std::size_t>(i)]);
    Rat t = (bound - used) / s.b[static_cast<std::size_t>(level)];
    Int lo, hi;
    if (!detail::coord_range(c, t, lo, hi)) return;
    for (Int v = lo; v <= hi; ++v) {
      x[static_cast<std::size_t>(level)] = v;
      Rat term = Rat(v) + c;
      Rat add = s.b[static_cast<std::size_t>(level)] * term * term;
      descend(level - 1, used + add);
      if (!complete) break;
    }
    x[static_cast<std::size_t>(level)] = 0;
  };
  descend(n - 1, Rat(0));
  return complete;
}

struct ShortestResult {
  IntVec coeffs;  // in the lattice's own basis
  Rat norm_sq;
};

// Exact shortest nonzero vector. The tie rule picks, among all minimizers
// after flipping signs so the first nonzero coefficient is positive, the
// lexicographically least coefficient vector.
inline ShortestResult shortest_vector(const GramLattice& L) {
  if (L.rank > kMaxEnumRank)
    throw budget_error("shortest_vector: rank exceeds enumeration budget of 12");
  LllResult red = lll_reduce(L);
  const Mat<Rat>& g = red.lat.gram;
  int n = L.rank;
  Rat best = g[0][0];
  for (int i = 1; i < n; ++i)
    best = std::min(best, g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
  std::vector<IntVec> ties;
  // Two passes keep the logic simple: find the minimum, then collect it.
  for (int pass = 0; pass < 2; ++pass) {
    std::vector<IntVec> collected;
    Rat target = best;
    bool full = enumerate_below(red.lat, target, 400000000L, [&](const IntVec& x, const Rat& nsq) {
      if (pass == 0) {
        if (nsq < best) best = nsq;
      } else if (nsq == best) {
        collected.push_back(x);
      }
    });
    if (!full) throw budget_error("shortest_vector: enumeration node budget exceeded");
    if (pass == 1) ties = std::move(collected);
  }
  // Map back to the original basis and normalize.
  std::vector<IntVec> cands;
  for (const IntVec& x : ties) {
    IntVec orig(static_cast<std::size_t>(n), Int(0));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        orig[static_cast<std::size_t>(j)] +=
            x[static_cast<std::size_t>(i)] *
            red.change[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
    int lead = 0;
    for (const Int& v : orig) {
      if (sgn(v) != 0) {
        lead = sgn(v);
        break;
      }
    }
    if (lead < 0)
      for (Int& v : orig) v = -v;
    cands.push_back(orig);
  }
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  if (cands.empty()) throw std::logic_error("shortest_vector: empty enumeration");
  return ShortestResult{cands.front(), best};
}

inline RealInterval minkowski_radius(unsigned k, const Rat& det_sq_value) {
  return minkowski_radius_interval(k, det_sq_value);
}

}  // namespace omegad
