#pragma once
// Measurement layer. Witness exponents are always reported as certified
// lower bounds: distances are evaluated pessimistically (halo added), logs
// are rounded against the claim, and search exhaustiveness is only asserted
// when a pigeonhole argument proves every stronger competitor was inside the
// enumerated region.

#include <algorithm>
#include <functional>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "omegad/ext_real.hpp"
#include "omegad/interval.hpp"
#include "omegad/lattice.hpp"
#include "omegad/subspace.hpp"
#include "omegad/transfer.hpp"

namespace omegad {

struct BestApprox {
  IntVec x;        // nonzero tuple, all coordinates bounded by X in absolute value
  Rat err;         // exact error of x against the proxy coordinates
  bool certified;  // true when the search is provably exhaustive at this bound
};

inline std::string tuple_label(const IntVec& x) {
  std::ostringstream os;
  os << "tuple=";
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (i) os << ",";
    os << x[i].get_str();
  }
  return os.str();
}

namespace detail {

inline Rat point_err(const RatVec& coords, const IntVec& x) {
  Rat best(0);
  for (std::size_t i = 1; i < coords.size(); ++i) {
    Rat e = Rat(x[0]) * coords[i] - Rat(x[i]);
    if (sgn(e) < 0) e = -e;
    if (e > best) best = e;
  }
  return best;
}

inline Rat form_err(const RatVec& coords, const IntVec& x) {
  Rat s(0);
  for (std::size_t i = 0; i < coords.size(); ++i) s += Rat(x[i]) * coords[i];
  if (sgn(s) < 0) s = -s;
  return s;
}

inline void normalize_tuple(IntVec& x) {
  for (const Int& v : x) {
    if (sgn(v) > 0) return;
    if (sgn(v) < 0) break;
  }
  for (Int& v : x) v = -v;
}

inline bool sup_norm_ok(const IntVec& x, const Int& bound) {
  for (const Int& v : x)
    if (abs(v) > bound) return false;
  return true;
}

// Dyadic coarsening for search lattices: certificates never depend on
// these, they only steer the enumeration.
inline RatVec coarsen(const RatVec& v, long bits) {
  RatVec out(v.size());
  Int scale(1);
  mpz_mul_2exp(scale.get_mpz_t(), scale.get_mpz_t(), static_cast<mp_bitcnt_t>(bits));
  for (std::size_t i = 0; i < v.size(); ++i) {
    Int num = floor_rat(v[i] * Rat(scale));
    out[i] = make_rat(num, scale);
  }
  return out;
}

inline Int ceil_abs_max(const RatVec& coords) {
  Int m(1);
  for (std::size_t i = 1; i < coords.size(); ++i) {
    Rat a = coords[i];
    if (sgn(a) < 0) a = -a;
    Int c = ceil_rat(a);
    if (c > m) m = c;
  }
  return m;
}

struct EllipsoidOutcome {
  std::vector<IntVec> candidates;
  bool complete = true;
};

// Enumerate all x with Q(x) <= c_bound for the positive definite rational
// form given by gram; coordinates come back in the ambient standard basis.
inline EllipsoidOutcome enumerate_form(const Mat<Rat>& gram, const Rat& c_bound,
                                       long max_nodes) {
  GramLattice L;
  L.rank = static_cast<int>(gram.size());
  L.gram = gram;
  L.lift = identity_mat<Int>(gram.size());
  L.validate();
  LllResult red = lll_reduce(L);
  EllipsoidOutcome out;
  out.complete =
      enumerate_below(red.lat, c_bound, max_nodes, [&](const IntVec& c, const Rat&) {
        IntVec amb(gram.size(), Int(0));
        for (std::size_t i = 0; i < c.size(); ++i) {
          if (sgn(c[i]) == 0) continue;
          for (std::size_t j = 0; j < amb.size(); ++j) amb[j] += c[i] * red.change[i][j];
        }
        out.candidates.push_back(std::move(amb));
      });
  return out;
}

}  // namespace detail

// Certification threshold for simultaneous approximation under the full
// sup-norm constraint. With C = ceil(max |t_i|) + 1 and
// Q = floor((X/C)^(1/n)), pigeonhole over denominators up to floor(X/C)
// guarantees error < 1/Q with every coordinate below X; the search is
// certified optimal only when the found error clears the slightly stronger
// level 1/(Q+1) its enumeration provably covers.
inline Rat dirichlet_point_bound(const PointProxy& p, const Int& X_bound) {
  int n = p.ambient_n();
  Int c = detail::ceil_abs_max(p.coords) + 1;
  Int reduced = X_bound / c;
  if (reduced < 1) return Rat(1);
  Int q = root_floor(reduced, static_cast<unsigned long>(n));
  return make_rat(Int(1), q + 1);
}

// Same idea on the form side: with C = n ceil(max |t_i|) + 2 and
// Q = floor(X/C), some tuple bounded by X makes the form value at most
// 1/((Q+1)^n - 1).
inline Rat dirichlet_form_bound(const PointProxy& p, const Int& X_bound) {
  int n = p.ambient_n();
  Int c = Int(n) * detail::ceil_abs_max(p.coords) + 2;
  Int q = X_bound / c;
  Int m = pow_int(q + 1, static_cast<unsigned long>(n)) - 1;
  if (m < 1) return Rat(1);
  return make_rat(Int(1), m);
}

inline BestApprox best_point_error(const PointProxy& p, const Int& X_bound,
                                   long max_nodes = 2000000) {
  if (X_bound < 1) throw std::invalid_argument("best_point_error: bound must be >= 1");
  int n = p.ambient_n();
  Rat eps = dirichlet_point_bound(p, X_bound);
  BestApprox best;
  best.x = IntVec(static_cast<std::size_t>(n + 1), Int(0));
  best.x[static_cast<std::size_t>(n)] = 1;
  best.err = Rat(1);
  best.certified = false;
  auto consider = [&](const IntVec& x) {
    if (is_zero_vector(x) || !detail::sup_norm_ok(x, X_bound)) return;
    IntVec y = x;
    detail::normalize_tuple(y);
    Rat e = sgn(y[0]) == 0 ? Rat(1) : detail::point_err(p.coords, y);
    if (e < best.err || (e == best.err && y < best.x)) {
      best.err = e;
      best.x = y;
    }
  };

  if (X_bound <= 1024) {
    // Direct scan over denominators; the nearest integer is optimal in
    // each coordinate.
    for (Int x0(1); x0 <= X_bound; ++x0) {
      IntVec x(static_cast<std::size_t>(n + 1), Int(0));
      x[0] = x0;
      for (int i = 1; i <= n; ++i) {
        Int xi = round_nearest(Rat(x0) * p.coords[static_cast<std::size_t>(i)]);
        if (xi > X_bound) xi = X_bound;
        if (xi < -X_bound) xi = -X_bound;
        x[static_cast<std::size_t>(i)] = xi;
      }
      consider(x);
    }
    best.certified = true;
    return best;
  }

  // Certified ellipsoid search: any competitor at least as good as eps has
  // Q(x) <= 1 + n up to the negligible coarsening slack, so the bound
  // n + 2 provably covers it. Coarsening scales with X to keep the slack
  // far below eps.
  long xb = static_cast<long>(mpz_sizeinbase(X_bound.get_mpz_t(), 2));
  RatVec t = detail::coarsen(p.coords, 128 + 2 * xb);
  Rat inv_eps_sq = Rat(1) / (eps * eps);
  Rat inv_x_sq = Rat(1) / (Rat(X_bound) * Rat(X_bound));
  Mat<Rat> g = make_mat<Rat>(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  g[0][0] = inv_x_sq;
  for (int i = 1; i <= n; ++i) {
    const Rat& ti = t[static_cast<std::size_t>(i)];
    g[0][0] += ti * ti * inv_eps_sq;
    g[0][static_cast<std::size_t>(i)] = -ti * inv_eps_sq;
    g[static_cast<std::size_t>(i)][0] = g[0][static_cast<std::size_t>(i)];
    g[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = inv_eps_sq;
  }
  detail::EllipsoidOutcome res = detail::enumerate_form(g, Rat(n + 2), max_nodes);
  for (const IntVec& x : res.candidates) consider(x);
  best.certified = res.complete && best.err <= eps;
  return best;
}

inline BestApprox best_form_error(const PointProxy& p, const Int& X_bound,
                                  long max_nodes = 2000000) {
  if (X_bound < 1) throw std::invalid_argument("best_form_error: bound must be >= 1");
  int n = p.ambient_n();
  Rat eps = dirichlet_form_bound(p, X_bound);
  BestApprox best;
  best.x = IntVec(static_cast<std::size_t>(n + 1), Int(0));
  best.x[0] = 1;
  best.err = Rat(1);
  best.certified = false;
  auto consider = [&](const IntVec& x) {
    if (is_zero_vector(x) || !detail::sup_norm_ok(x, X_bound)) return;
    IntVec y = x;
    detail::normalize_tuple(y);
    Rat e = detail::form_err(p.coords, y);
    if (e < best.err || (e == best.err && y < best.x)) {
      best.err = e;
      best.x = y;
    }
  };

  Rat cells = pow_rat(Rat(2) * Rat(X_bound) + 1, static_cast<unsigned long>(n));
  if (cells <= Rat(2000000)) {
    // Scan the outer coordinates; the best x0 per cell is the nearest
    // integer to minus the partial sum.
    IntVec x(static_cast<std::size_t>(n + 1), Int(0));
    std::function<void(int, Rat)> rec = [&](int i, Rat acc) {
      if (i > n) {
        x[0] = -round_nearest(acc);
        if (x[0] > X_bound) x[0] = X_bound;
        if (x[0] < -X_bound) x[0] = -X_bound;
        consider(x);
        return;
      }
      for (Int v = -X_bound; v <= X_bound; ++v) {
        x[static_cast<std::size_t>(i)] = v;
        rec(i + 1, acc + Rat(v) * p.coords[static_cast<std::size_t>(i)]);
      }
    };
    rec(1, Rat(0));
    best.certified = true;
    return best;
  }

  long xb = static_cast<long>(mpz_sizeinbase(X_bound.get_mpz_t(), 2));
  RatVec t = detail::coarsen(p.coords, 128 + 2 * xb);
  Rat inv_eps_sq = Rat(1) / (eps * eps);
  Rat inv_x_sq = Rat(1) / (Rat(X_bound) * Rat(X_bound));
  Mat<Rat> g = make_mat<Rat>(static_cast<std::size_t>(n + 1), static_cast<std::size_t>(n + 1));
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          t[static_cast<std::size_t>(i)] * t[static_cast<std::size_t>(j)] * inv_eps_sq;
      if (i == j && i >= 1)
        g[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += inv_x_sq;
    }
  detail::EllipsoidOutcome res = detail::enumerate_form(g, Rat(n + 2), max_nodes);
  for (const IntVec& x : res.candidates) consider(x);
  best.certified = res.complete && best.err <= eps;
  return best;
}

// Canonical sweep of all saturated subvarieties of dimension d with squared
// height below the bound, each emitted exactly once in Hermite order.
// Throws budget_error naming the configured bound when the search tree
// exceeds it.
inline void enumerate_subspaces(int n, int d, const Rat& h_sq_max, long node_budget,
                                const std::function<void(const RationalSubspace&)>& emit) {
  if (n < 1) throw std::invalid_argument("enumerate_subspaces: n must be >= 1");
  if (d < 0 || d > n - 1) throw std::invalid_argument("enumerate_subspaces: d out of range");
  if (h_sq_max < 1) return;
  int r = d + 1;
  int cols = n + 1;
  Int hmax = isqrt_floor(floor_rat(h_sq_max));
  long nodes = 0;
  auto charge = [&]() {
    if (++nodes > node_budget) {
      std::ostringstream os;
      os << "enumerate_subspaces: combinatorial budget of " << node_budget
         << " nodes exceeded";
      throw budget_error(os.str());
    }
  };

  std::vector<int> pivots(static_cast<std::size_t>(r));
  std::vector<Int> pivot_vals(static_cast<std::size_t>(r));
  Mat<Int> rows = make_mat<Int>(static_cast<std::size_t>(r), static_cast<std::size_t>(cols));

  auto finish = [&]() {
    Multivector<Int> w(cols, 0);
    for (int i = 0; i < r; ++i) {
      Multivector<Int> rv = Multivector<Int>::from_vector(rows[static_cast<std::size_t>(i)]);
      w = (i == 0) ? rv : wedge(w, rv);
    }
    Int nsq = norm_sq(w);
    if (Rat(nsq) > h_sq_max) return;
    if (content(w) != 1) return;  // not saturated; its saturation is emitted elsewhere
    emit(RationalSubspace::from_generators(n, rows));
  };

  // Column-by-column fill with a rank-one-updated prefix Gram; its
  // determinant is the squared height of the truncated rows and can only
  // grow as columns are appended.
  std::function<void(int, const Mat<Int>&)> fill_columns = [&](int c, const Mat<Int>& a) {
    if (c == cols) {
      finish();
      return;
    }
    int pivot_row = -1;
    for (int i = 0; i < r; ++i)
      if (pivots[static_cast<std::size_t>(i)] == c) pivot_row = i;
    std::vector<int> open;  // rows with an earlier pivot that need an entry here
    for (int i = 0; i < r; ++i) {
      rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = 0;
      if (pivots[static_cast<std::size_t>(i)] < c) open.push_back(i);
    }
    if (pivot_row >= 0)
      rows[static_cast<std::size_t>(pivot_row)][static_cast<std::size_t>(c)] =
          pivot_vals[static_cast<std::size_t>(pivot_row)];

    Int prod(1);
    for (int i = 0; i < r; ++i) prod *= pivot_vals[static_cast<std::size_t>(i)];

    std::function<void(std::size_t)> assign = [&](std::size_t oi) {
      if (oi == open.size()) {
        Mat<Int> next = a;
        for (int i = 0; i < r; ++i)
          for (int j = 0; j < r; ++j)
            next[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] *
                rows[static_cast<std::size_t>(j)][static_cast<std::size_t>(c)];
        if (Rat(bareiss_det(next)) > h_sq_max) return;
        fill_columns(c + 1, next);
        return;
      }
      int i = open[oi];
      Int lo, hi;
      if (pivot_row >= 0) {
        // Hermite reduction: entries above a pivot lie in [0, pivot).
        lo = 0;
        hi = pivot_vals[static_cast<std::size_t>(pivot_row)] - 1;
      } else {
        // Entry bound for a saturated Hermite basis: row i is a pivot
        // multiple of an echelon row whose entries are ratios of maximal
        // minors, so |entry| <= (p_i + sum of later reduced pivots) * h / prod.
        Int slack = pivot_vals[static_cast<std::size_t>(i)];
        for (int k = i + 1; k < r; ++k) slack += pivot_vals[static_cast<std::size_t>(k)] - 1;
        Int b = (hmax * slack) / prod;
        lo = -b;
        hi = b;
      }
      for (Int v = lo; v <= hi; ++v) {
        charge();
        rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)] = v;
        assign(oi + 1);
      }
    };
    assign(0);
  };

  std::function<void(std::size_t, const Int&)> choose_pivot_vals = [&](std::size_t i,
                                                                       const Int& prod) {
    if (i == static_cast<std::size_t>(r)) {
      Mat<Int> a = make_mat<Int>(static_cast<std::size_t>(r), static_cast<std::size_t>(r));
      fill_columns(0, a);
      return;
    }
    for (Int v(1); prod * v <= hmax; ++v) {
      charge();
      pivot_vals[i] = v;
      choose_pivot_vals(i + 1, prod * v);
    }
  };

  std::function<void(int, int)> choose_pivots = [&](int idx, int start) {
    if (idx == r) {
      choose_pivot_vals(0, Int(1));
      return;
    }
    for (int c = start; c <= cols - (r - idx); ++c) {
      charge();
      pivots[static_cast<std::size_t>(idx)] = c;
      choose_pivots(idx + 1, c + 1);
    }
  };
  choose_pivots(0, 0);
}

inline std::vector<RationalSubspace> enumerate_subspaces_vec(int n, int d, const Rat& h_sq_max,
                                                             long node_budget = 20000000) {
  std::vector<RationalSubspace> out;
  enumerate_subspaces(n, d, h_sq_max, node_budget,
                      [&](const RationalSubspace& s) { out.push_back(s); });
  return out;
}

enum class Direction { certified_lower, heuristic };

struct Witness {
  std::string subspace;
  Int height_sq;
  Rat distance_sq;  // pessimistic: proxy value plus halo
  ExtReal exponent;
  bool certified = true;
};

struct ExponentEstimate {
  std::string kind;  // "omega" or "uniform"
  int d = 0;
  ExtReal value;
  Direction direction = Direction::heuristic;
  std::vector<Witness> witnesses;  // the records supporting `value`
  std::optional<int> onset_index;
  std::vector<std::string> notes;
};

struct RecordEntry {
  Int height_sq;
  Rat distance_sq;
  std::string subspace;
};

// Best-so-far curve: strictly increasing heights, strictly decreasing
// distances; dominated entries are dropped on insert.
struct RecordSequence {
  std::vector<RecordEntry> entries;

  void insert(const Int& h_sq, const Rat& d_sq, const std::string& subspace) {
    RecordEntry e{h_sq, d_sq, subspace};
    auto it = std::lower_bound(entries.begin(), entries.end(), e,
                               [](const RecordEntry& a, const RecordEntry& b) {
                                 return a.height_sq < b.height_sq;
                               });
    if (it != entries.begin() && std::prev(it)->distance_sq <= d_sq) return;
    if (it != entries.end() && it->height_sq == e.height_sq) {
      if (it->distance_sq <= d_sq) return;
      *it = e;
      ++it;
    } else {
      it = entries.insert(it, e);
      ++it;
    }
    while (it != entries.end()) {
      if (it->distance_sq >= std::prev(it)->distance_sq)
        it = entries.erase(it);
      else
        ++it;
    }
  }
};

namespace detail {

// Certified lower bound of -log(d_sq)/log(h_sq) - 1; nullopt when the
// witness carries no positive information.
inline std::optional<ExtReal> fit_exponent(const Int& h_sq, const Rat& d_sq_pess) {
  if (h_sq <= 1) return std::nullopt;
  if (sgn(d_sq_pess) == 0) return ExtReal::infinity();
  if (d_sq_pess >= 1) return std::nullopt;
  Rat ratio = neg_log_ratio_lower(d_sq_pess, Rat(h_sq));
  Rat w = ratio - 1;
  if (sgn(w) < 0) return std::nullopt;
  return ExtReal(w);
}

// Weighted Gram for witness hunting. Point side penalises the component
// of x orthogonal to the proxy direction; dual side penalises the inner
// product of a normal vector with the proxy.
inline Mat<Rat> weighted_gram(const RatVec& y, const Rat& t, bool dual) {
  std::size_t m = y.size();
  Rat nsq(0);
  for (const Rat& c : y) nsq += c * c;
  Mat<Rat> g = make_mat<Rat>(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      Rat v = t * y[i] * y[j];
      if (!dual) v = -v;
      if (i == j) {
        v += Rat(1);
        if (!dual) v += t * nsq;
      }
      g[i][j] = v;
    }
  return g;
}

inline std::optional<IntVec> ladder_shortest(const RatVec& y, const Rat& t, bool dual) {
  GramLattice L;
  L.rank = static_cast<int>(y.size());
  L.gram = weighted_gram(y, t, dual);
  L.lift = identity_mat<Int>(y.size());
  try {
    L.validate();
    ShortestResult sv = shortest_vector(L);
    return sv.coeffs;
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

}  // namespace detail

struct OmegaMeasurement {
  ExponentEstimate est;
  RecordSequence records;
};

// Lower-estimates the d-dimensional approximation exponent by hunting for
// witnesses along several routes and fitting the best pessimistic record.
inline OmegaMeasurement estimate_omega_d(const PointProxy& p, int d,
                                         const SearchBudget& budget = SearchBudget{}) {
  int n = p.ambient_n();
  if (d < 0 || d > n - 1) throw std::invalid_argument("estimate_omega_d: d out of range");
  OmegaMeasurement out;
  out.est.kind = "omega";
  out.est.d = d;
  out.est.value = ExtReal(0);
  out.est.direction = Direction::certified_lower;

  std::set<std::string> seen;
  Rat best_halo(0);
  auto evaluate = [&](const RationalSubspace& L) {
    if (L.dim() != d) return;
    if (Rat(L.height_sq()) > budget.h_sq_max) return;
    std::string key = L.serialize();
    if (!seen.insert(key).second) return;
    DistanceBound db = L.distance_sq(p);
    Rat pess = db.value + db.halo;
    out.records.insert(L.height_sq(), pess, key);
    std::optional<ExtReal> w = detail::fit_exponent(L.height_sq(), pess);
    if (!w) return;
    if (out.est.witnesses.empty() || *w > out.est.value) {
      out.est.value = *w;
      out.est.witnesses.clear();
      out.est.witnesses.push_back(Witness{key, L.height_sq(), pess, *w, true});
      best_halo = db.halo;
    } else if (*w == out.est.value && out.est.witnesses.size() < 4) {
      out.est.witnesses.push_back(Witness{key, L.height_sq(), pess, *w, true});
    }
  };

  // Exhaustive floor at small heights.
  Rat cutoff = std::min(budget.exhaustive_h_sq, budget.h_sq_max);
  try {
    enumerate_subspaces(n, d, cutoff, budget.max_nodes, evaluate);
  } catch (const budget_error&) {
    out.est.notes.push_back("small-height sweep hit its node budget");
  }

  Rat t_cap = pow_rat(budget.h_sq_max, 3);

  auto point_candidates = [&]() {
    std::vector<RationalSubspace> pool;
    std::set<std::string> pool_seen;
    Rat t(4);
    for (int step = 0; step < budget.ladder_steps && t <= t_cap; ++step, t *= 4) {
      // Coarsening must track the rung: a weight 4^step only separates
      // candidates the proxy resolves below 2^-step.
      RatVec coarse = detail::coarsen(p.coords, 96 + 2 * step);
      std::optional<IntVec> x = detail::ladder_shortest(coarse, t, false);
      if (!x || is_zero_vector(*x)) continue;
      try {
        RationalSubspace pt = RationalSubspace::from_generators(n, Mat<Int>{*x});
        if (pool_seen.insert(pt.serialize()).second) pool.push_back(pt);
      } catch (const std::invalid_argument&) {
      }
    }
    Int x_cap = isqrt_floor(floor_rat(budget.h_sq_max));
    for (Int X(64); X <= x_cap; X *= 8) {
      BestApprox ba = best_point_error(p, X, budget.max_nodes);
      try {
        RationalSubspace pt = RationalSubspace::from_generators(n, Mat<Int>{ba.x});
        if (pool_seen.insert(pt.serialize()).second) pool.push_back(pt);
      } catch (const std::invalid_argument&) {
      }
    }
    return pool;
  };

  if (d == 0) {
    for (const RationalSubspace& pt : point_candidates()) evaluate(pt);
  } else if (d == n - 1) {
    Rat t(4);
    for (int step = 0; step < budget.ladder_steps && t <= t_cap; ++step, t *= 4) {
      RatVec coarse = detail::coarsen(p.coords, 96 + 2 * step);
      std::optional<IntVec> u = detail::ladder_shortest(coarse, t, true);
      if (!u || is_zero_vector(*u)) continue;
      try {
        Mat<Int> ker = int_kernel(Mat<Int>{*u}, static_cast<std::size_t>(n + 1));
        evaluate(RationalSubspace::from_generators(n, ker));
      } catch (const std::invalid_argument&) {
      }
    }
    Int x_cap = isqrt_floor(floor_rat(budget.h_sq_max));
    for (Int X(64); X <= x_cap; X *= 8) {
      BestApprox ba = best_form_error(p, X, budget.max_nodes);
      try {
        Mat<Int> ker = int_kernel(Mat<Int>{ba.x}, static_cast<std::size_t>(n + 1));
        evaluate(RationalSubspace::from_generators(n, ker));
      } catch (const std::invalid_argument&) {
      }
    }
  } else {
    // Intermediate dimension: join good points together, and raise good
    // points step by step with the constructive lift.
    std::vector<RationalSubspace> pool = point_candidates();
    std::size_t cap = std::min<std::size_t>(pool.size(), 10);
    std::function<void(std::size_t, std::optional<RationalSubspace>)> combine =
        [&](std::size_t idx, std::optional<RationalSubspace> acc) {
          if (acc && acc->dim() == d) {
            evaluate(*acc);
            return;
          }
          if (idx >= cap) return;
          combine(idx + 1, acc);
          const RationalSubspace& pt = pool[idx];
          try {
            if (!acc) {
              combine(idx + 1, pt);
            } else {
              RationalSubspace next = *acc;
              for (const IntVec& row : pt.basis().rows) {
                if (!next.contains(row)) {
                  next = next.join(row);
                  break;
                }
              }
              if (next.dim() > acc->dim()) combine(idx + 1, next);
            }
          } catch (const std::invalid_argument&) {
          }
        };
    combine(0, std::nullopt);
    for (const RationalSubspace& pt : pool) {
      try {
        RationalSubspace cur = pt;
        while (cur.dim() < d) cur = going_up_lift(p, cur, budget).lifted;
        evaluate(cur);
      } catch (const std::exception&) {
      }
    }
  }

  if (!out.est.witnesses.empty() && out.est.value.is_finite() && out.est.value > ExtReal(0)) {
    const Witness& top = out.est.witnesses.front();
    if (sgn(top.distance_sq) > 0 && best_halo * Rat(4) > top.distance_sq)
      out.est.notes.push_back("halo-dominant");
  }
  if (out.est.witnesses.empty())
    out.est.notes.push_back("no informative witness below the height budget");
  return out;
}

// Uniform exponent at finite height over an increasing grid. Record errors
// are nonincreasing in X, so the secant value min_k -log m(X_k)/log X_{k+1}
// certifies the whole range from the onset grid point to X_max. Witnesses
// store the far grid point (its square) so each row is a self-contained
// claim d_sq <= h_sq^-value.
inline OmegaMeasurement estimate_uniform(const PointProxy& p, int d_end,
                                         const std::vector<Int>& grid,
                                         const SearchBudget& budget = SearchBudget{},
                                         const Int& onset_height = Int(4096)) {
  int n = p.ambient_n();
  if (d_end != 0 && d_end != n - 1)
    throw std::invalid_argument("estimate_uniform: endpoint dimension only");
  if (grid.empty()) throw std::invalid_argument("estimate_uniform: empty grid");
  if (grid.front() < 2) throw std::invalid_argument("estimate_uniform: grid values must be >= 2");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (grid[i] <= grid[i - 1])
      throw std::invalid_argument("estimate_uniform: grid not increasing");
  bool point_side = (d_end == 0);

  OmegaMeasurement out;
  out.est.kind = "uniform";
  out.est.d = d_end;

  std::vector<Rat> m_up(grid.size());
  std::vector<bool> cert(grid.size());
  std::vector<IntVec> tuples(grid.size());
  for (std::size_t k = 0; k < grid.size(); ++k) {
    BestApprox ba = point_side ? best_point_error(p, grid[k], budget.max_nodes)
                               : best_form_error(p, grid[k], budget.max_nodes);
    // Fold the proxy uncertainty into the error: each coordinate of the
    // point is known to within radius, scaled by at most X (point side)
    // or n X (form side).
    Rat slack = Rat(point_side ? 1 : n) * Rat(grid[k]) * p.radius;
    m_up[k] = ba.err + slack;
    cert[k] = ba.certified;
    tuples[k] = ba.x;
    out.records.insert(grid[k] * grid[k], m_up[k] * m_up[k], tuple_label(ba.x));
  }

  int onset = 0;
  while (onset + 1 < static_cast<int>(grid.size()) &&
         grid[static_cast<std::size_t>(onset)] < onset_height)
    ++onset;
  out.est.onset_index = onset;

  std::optional<ExtReal> value;
  bool all_cert = true;
  for (std::size_t k = static_cast<std::size_t>(onset); k < grid.size(); ++k) {
    const Int& x_next = (k + 1 < grid.size()) ? grid[k + 1] : grid[k];
    ExtReal vk;
    if (sgn(m_up[k]) == 0) {
      vk = ExtReal::infinity();
    } else if (m_up[k] >= 1) {
      vk = ExtReal(0);
    } else {
      vk = ExtReal(neg_log_ratio_lower(m_up[k] * m_up[k], Rat(x_next) * Rat(x_next)));
    }
    if (!cert[k]) all_cert = false;
    if (!value || vk < *value) value = vk;
    std::string sub;
    try {
      if (point_side) {
        sub = RationalSubspace::from_generators(n, Mat<Int>{tuples[k]}).serialize();
      } else {
        Mat<Int> ker = int_kernel(Mat<Int>{tuples[k]}, static_cast<std::size_t>(n + 1));
        sub = RationalSubspace::from_generators(n, ker).serialize();
      }
    } catch (const std::invalid_argument&) {
      sub = tuple_label(tuples[k]);
    }
    out.est.witnesses.push_back(Witness{sub, x_next * x_next, m_up[k] * m_up[k], vk, cert[k]});
  }
  out.est.value = value ? *value : ExtReal(0);
  out.est.direction = all_cert ? Direction::certified_lower : Direction::heuristic;
  if (!all_cert) out.est.notes.push_back("some grid searches were not provably exhaustive");
  {
    std::ostringstream os;
    os << "onset height " << grid[static_cast<std::size_t>(onset)].get_str()
       << "; value covers [onset, X_max]";
    out.est.notes.push_back(os.str());
  }
  return out;
}

struct CampaignResult {
  ExponentEstimate est;
  RecordSequence records;
  int proxy_bits = 0;
};

// Proxy-precision policy: re-refine until no retained witness is dominated
// by its halo (halo <= distance/4 at the top witness), then apply the
// independence gate: points with a verified rational dependence never get
// a certified direction.
inline CampaignResult estimate_omega_d_campaign(
    const std::function<PointProxy(int)>& refine_at, bool independence_violated, int d,
    const SearchBudget& budget = SearchBudget{}, int initial_bits = 192, int max_bits = 3072) {
  int bits = initial_bits;
  OmegaMeasurement m;
  while (true) {
    PointProxy p = refine_at(bits);
    m = estimate_omega_d(p, d, budget);
    bool halo_dominant = false;
    for (const std::string& note : m.est.notes)
      if (note == "halo-dominant") halo_dominant = true;
    if (!halo_dominant || bits >= max_bits) break;
    bits *= 2;
  }
  CampaignResult out{std::move(m.est), std::move(m.records), bits};
  if (independence_violated) {
    out.est.direction = Direction::heuristic;
    out.est.notes.push_back("independence violated: certification refused");
  }
  return out;
}

inline CampaignResult estimate_uniform_campaign(
    const std::function<PointProxy(int)>& refine_at, bool independence_violated, int d_end,
    const std::vector<Int>& grid, const SearchBudget& budget = SearchBudget{},
    int initial_bits = 192, int max_bits = 3072) {
  int bits = initial_bits;
  OmegaMeasurement m;
  while (true) {
    PointProxy p = refine_at(bits);
    m = estimate_uniform(p, d_end, grid, budget);
    // The slack folded into m_up must stay subordinate to the measured
    // error itself; re-refine until the proxy is sharp enough.
    bool slack_heavy = false;
    if (sgn(p.radius) > 0) {
      int n = p.ambient_n();
      for (const Witness& w : m.est.witnesses) {
        Rat slack = Rat(d_end == 0 ? 1 : n) * sqrt_interval(Rat(w.height_sq)).hi * p.radius;
        if (slack * slack * Rat(16) > w.distance_sq) slack_heavy = true;
      }
    }
    if (!slack_heavy || bits >= max_bits) break;
    bits *= 2;
  }
  CampaignResult out{std::move(m.est), std::move(m.records), bits};
  if (independence_violated) {
    out.est.direction = Direction::heuristic;
    out.est.notes.push_back("independence violated: certification refused");
  }
  return out;
}

// CSV schema shared by all witness dumps.
inline void write_witness_csv(std::ostream& os, const ExponentEstimate& est) {
  os << "d,height_sq,distance_sq,exponent,certified\n";
  for (const Witness& w : est.witnesses) {
    os << est.d << "," << w.height_sq.get_str() << "," << w.distance_sq.get_str() << ","
       << ext_decimal(w.exponent, 12, RoundDir::down) << "," << (w.certified ? 1 : 0) << "\n";
  }
}

inline void write_records_csv(std::ostream& os, const RecordSequence& records) {
  os << "height_sq,distance_sq\n";
  for (const RecordEntry& e : records.entries)
    os << e.height_sq.get_str() << "," << to_decimal(e.distance_sq, 17, RoundDir::down) << "\n";
}

// Witness invariant behind every reported estimate: each supporting row
// must itself certify the value, i.e. value (+1 on the omega side, whose
// distances compare against height^-(1+w)) is at most the certified lower
// bound of -log(d_sq)/log(h_sq).
inline bool verify_witnesses(const ExponentEstimate& est) {
  for (const Witness& w : est.witnesses) {
    if (est.value > w.exponent) return false;
    if (!w.exponent.is_finite()) {
      if (sgn(w.distance_sq) != 0) return false;
      continue;
    }
    if (w.height_sq <= 1 || sgn(w.distance_sq) == 0 || w.distance_sq >= 1) {
      if (w.exponent != ExtReal(0)) return false;
      continue;
    }
    Rat shift = est.kind == "omega" ? Rat(1) : Rat(0);
    if (w.exponent.value() + shift > neg_log_ratio_lower(w.distance_sq, Rat(w.height_sq)))
      return false;
  }
  return true;
}

}  // namespace omegad
