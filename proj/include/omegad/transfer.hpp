#pragma once
// Transfer layer: the linear-fractional inequalities tying together the
// approximation exponents of a point across subvariety dimensions, plus the
// constructive dimension-raising step that produces a machine-checkable
// certificate. Predicates use three-state semantics so measured lower bounds
// are never over-claimed: verified / consistent / violated.

#include <json.hpp>

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "omegad/ext_real.hpp"
#include "omegad/subspace.hpp"

namespace omegad {

enum class ValueKind { exact, lower_bound };

struct MeasuredExponent {
  ExtReal value;
  ValueKind kind = ValueKind::exact;

  MeasuredExponent(ExtReal v) : value(std::move(v)) {}
  MeasuredExponent(ExtReal v, ValueKind k) : value(std::move(v)), kind(k) {}
  MeasuredExponent(const Rat& v) : value(v) {}
  MeasuredExponent(int v) : value(v) {}

  static MeasuredExponent lower(ExtReal v) { return {std::move(v), ValueKind::lower_bound}; }
};

enum class CheckStatus { verified, consistent, violated };

inline const char* to_string(CheckStatus s) {
  switch (s) {
    case CheckStatus::verified: return "verified";
    case CheckStatus::consistent: return "consistent";
    case CheckStatus::violated: return "violated";
  }
  return "?";
}

struct CheckReport {
  std::string name;
  CheckStatus status = CheckStatus::consistent;
  ExtReal target;
  ExtReal threshold;
  std::string detail;
};

namespace detail {

// target >= thr(source), thr nondecreasing in the source exponent. With
// lower-bound data the threshold computed from the source is itself only a
// lower bound on the true threshold, which fixes what each comparison can
// prove.
inline CheckReport check_ge(std::string name, const MeasuredExponent& target,
                            const ExtReal& threshold, ValueKind source_kind) {
  CheckReport r;
  r.name = std::move(name);
  r.target = target.value;
  r.threshold = threshold;
  bool holds = target.value >= threshold;
  bool target_exact = target.kind == ValueKind::exact;
  bool source_exact = source_kind == ValueKind::exact;
  if (target_exact && source_exact) {
    r.status = holds ? CheckStatus::verified : CheckStatus::violated;
  } else if (!target_exact && source_exact) {
    r.status = holds ? CheckStatus::verified : CheckStatus::consistent;
  } else if (target_exact && !source_exact) {
    r.status = holds ? CheckStatus::consistent : CheckStatus::violated;
  } else {
    r.status = CheckStatus::consistent;
  }
  std::ostringstream os;
  os << "target " << target.value.str() << (holds ? " >= " : " < ") << threshold.str();
  r.detail = os.str();
  return r;
}

// target <= thr(source), thr nondecreasing in the source exponent.
inline CheckReport check_le(std::string name, const MeasuredExponent& target,
                            const ExtReal& threshold, ValueKind source_kind) {
  CheckReport r;
  r.name = std::move(name);
  r.target = target.value;
  r.threshold = threshold;
  bool holds = target.value <= threshold;
  bool target_exact = target.kind == ValueKind::exact;
  bool source_exact = source_kind == ValueKind::exact;
  if (target_exact && source_exact) {
    r.status = holds ? CheckStatus::verified : CheckStatus::violated;
  } else if (!target_exact && source_exact) {
    r.status = holds ? CheckStatus::consistent : CheckStatus::violated;
  } else if (target_exact && !source_exact) {
    r.status = holds ? CheckStatus::verified : CheckStatus::consistent;
  } else {
    r.status = CheckStatus::consistent;
  }
  std::ostringstream os;
  os << "target " << target.value.str() << (holds ? " <= " : " > ") << threshold.str();
  r.detail = os.str();
  return r;
}

}  // namespace detail

// Raising dimension by one: w_{d+1} >= ((n-d) w_d + 1) / (n-d-1).
inline ExtReal going_up_threshold(int n, int d, const ExtReal& wd) {
  if (d < 0 || d > n - 2) throw std::invalid_argument("going_up_threshold: need 0 <= d <= n-2");
  return eval_mobius(Rat(n - d), Rat(1), Rat(0), Rat(n - d - 1), wd);
}

inline CheckReport check_going_up(int n, int d, const MeasuredExponent& wd,
                                  const MeasuredExponent& wd1) {
  ExtReal thr = going_up_threshold(n, d, wd.value);
  std::ostringstream name;
  name << "up(" << n << "," << d << ")";
  return detail::check_ge(name.str(), wd1, thr, wd.kind);
}

// Lowering dimension by one: w_{d-1} >= d w_d / (w_d + d + 1).
inline ExtReal going_down_threshold(int n, int d, const ExtReal& wd) {
  if (d < 1 || d > n - 1) throw std::invalid_argument("going_down_threshold: need 1 <= d <= n-1");
  return eval_mobius(Rat(d), Rat(0), Rat(1), Rat(d + 1), wd);
}

inline CheckReport check_going_down(int n, int d, const MeasuredExponent& wd,
                                    const MeasuredExponent& wdm1) {
  ExtReal thr = going_down_threshold(n, d, wd.value);
  std::ostringstream name;
  name << "down(" << n << "," << d << ")";
  return detail::check_ge(name.str(), wdm1, thr, wd.kind);
}

struct IteratedBounds {
  std::optional<ExtReal> up;    // lower bound for w_{d+k}
  std::optional<ExtReal> down;  // lower bound for w_{d-k}
};

// k-step composites: w_{d+k} >= ((n-d) w + k) / (n-d-k) when d+k <= n-1,
// w_{d-k} >= (d-k+1) w / (k w + d + 1) when d >= k.
inline IteratedBounds iterated_bounds(int n, int d, int k, const ExtReal& wd) {
  if (k < 1) throw std::invalid_argument("iterated_bounds: k must be >= 1");
  if (d < 0 || d > n - 1) throw std::invalid_argument("iterated_bounds: d out of range");
  IteratedBounds out;
  if (d + k <= n - 1) out.up = eval_mobius(Rat(n - d), Rat(k), Rat(0), Rat(n - d - k), wd);
  if (d - k >= 0) out.down = eval_mobius(Rat(d - k + 1), Rat(0), Rat(k), Rat(d + 1), wd);
  if (!out.up && !out.down)
    throw std::invalid_argument("iterated_bounds: no direction admits k steps");
  return out;
}

// Both endpoint inequalities tying w_0 to w_{n-1}:
// w_0 >= w_{n-1} / ((n-1) w_{n-1} + n) and w_0 <= (w_{n-1} - n + 1) / n.
inline ExtReal khintchine_lower0(int n, const ExtReal& wn1) {
  if (n < 1) throw std::invalid_argument("khintchine_lower0: n must be >= 1");
  return eval_mobius(Rat(1), Rat(0), Rat(n - 1), Rat(n), wn1);
}

inline ExtReal khintchine_upper0(int n, const ExtReal& wn1) {
  if (n < 1) throw std::invalid_argument("khintchine_upper0: n must be >= 1");
  return eval_mobius(Rat(1), Rat(1 - n), Rat(0), Rat(n), wn1);
}

struct KhintchinePair {
  CheckReport lower;
  CheckReport upper;
};

inline KhintchinePair check_khintchine(int n, const MeasuredExponent& w0,
                                       const MeasuredExponent& wn1) {
  KhintchinePair out;
  out.lower = detail::check_ge("khintchine-lower", w0, khintchine_lower0(n, wn1.value), wn1.kind);
  out.upper = detail::check_le("khintchine-upper", w0, khintchine_upper0(n, wn1.value), wn1.kind);
  return out;
}

// Unconditional floor w_d >= (d+1) / (n-d).
inline Rat corollary_floor(int n, int d) {
  if (d < 0 || d > n - 1) throw std::invalid_argument("corollary_floor: d out of range");
  return make_rat(Int(d + 1), Int(n - d));
}

struct JarnikResult {
  ExtReal value;
  std::vector<std::string> warnings;
};

// Planar identity between the two uniform exponents: u0 = 1 - 1/u1.
inline JarnikResult jarnik_identity(const ExtReal& uniform1) {
  JarnikResult out;
  if (uniform1 < ExtReal(2))
    out.warnings.push_back("uniform1 below its unconditional floor 2");
  out.value = eval_mobius(Rat(1), Rat(-1), Rat(1), Rat(0), uniform1);
  return out;
}

struct Theorem3Result {
  ExtReal lower0;
  ExtReal upper0;
  std::vector<std::string> warnings;
};

// Uniform-exponent refinement of the endpoint bounds:
// lower0 = (u_{n-1} - 1) w_{n-1} / (((n-2) u_{n-1} + 1) w_{n-1} + (n-1) u_{n-1})
// upper0 = ((1 - u_0) w_{n-1} - n + 2 - u_0) / (n - 1).
inline Theorem3Result theorem3_bounds(int n, const ExtReal& wn1, const ExtReal& u0,
                                      const ExtReal& un1) {
  if (n < 2) throw std::invalid_argument("theorem3_bounds: n must be >= 2");
  if (!u0.is_finite()) throw std::invalid_argument("theorem3_bounds: uniform0 must be finite");
  Theorem3Result out;
  if (u0 < ExtReal(Rat(1, n)) || u0 > ExtReal(1))
    out.warnings.push_back("uniform0 outside its unconditional range [1/n, 1]");
  if (un1 < ExtReal(n)) out.warnings.push_back("uniform(n-1) below its unconditional floor n");
  if (wn1 < un1) out.warnings.push_back("w(n-1) below uniform(n-1)");

  if (un1.is_finite()) {
    const Rat& u = un1.value();
    out.lower0 = eval_mobius(u - 1, Rat(0), Rat(n - 2) * u + 1, Rat(n - 1) * u, wn1);
  } else {
    // Limit in u: lower0 -> w / ((n-2) w + (n-1)).
    out.lower0 = eval_mobius(Rat(1), Rat(0), Rat(n - 2), Rat(n - 1), wn1);
  }
  Rat a = Rat(1) - u0.value();
  Rat b = Rat(2 - n) - u0.value();
  out.upper0 = eval_mobius(a, b, Rat(0), Rat(n - 1), wn1);

  // In the plane the refined bounds collapse onto the two-exponent form;
  // recompute both ways and insist on exact agreement.
  if (n == 2 && un1.is_finite() && wn1.is_finite()) {
    const Rat& u = un1.value();
    ExtReal lower_planar = eval_mobius(u - 1, Rat(0), Rat(1), u, wn1);
    if (lower_planar != out.lower0)
      throw std::logic_error("theorem3_bounds: planar lower-bound mismatch");
    if (sgn(u) != 0) {
      Rat u0_from_identity = (u - 1) / u;
      ExtReal upper_planar = eval_mobius(Rat(1), Rat(1) - u, Rat(0), u, wn1);
      ExtReal upper_direct =
          eval_mobius(Rat(1) - u0_from_identity, Rat(0) - u0_from_identity, Rat(0), Rat(1), wn1);
      if (upper_planar != upper_direct)
        throw std::logic_error("theorem3_bounds: planar upper-bound mismatch");
    }
  }
  return out;
}

struct SpectrumFamilies {
  std::optional<std::vector<ExtReal>> up;    // valid when w >= 1/n
  std::optional<std::vector<ExtReal>> down;  // valid when w >= n
};

// One-parameter exponent profiles hitting the composite bounds:
// up[d] = (n w + d) / (n - d), down[d] = (d+1) w / ((n-1-d) w + n).
inline SpectrumFamilies spectrum_families(int n, const ExtReal& w) {
  if (n < 1) throw std::invalid_argument("spectrum_families: n must be >= 1");
  SpectrumFamilies out;
  if (w >= ExtReal(Rat(1, n))) {
    std::vector<ExtReal> fam;
    for (int d = 0; d <= n - 1; ++d)
      fam.push_back(eval_mobius(Rat(n), Rat(d), Rat(0), Rat(n - d), w));
    out.up = std::move(fam);
  }
  if (w >= ExtReal(n)) {
    std::vector<ExtReal> fam;
    for (int d = 0; d <= n - 1; ++d)
      fam.push_back(eval_mobius(Rat(d + 1), Rat(0), Rat(n - 1 - d), Rat(n), w));
    out.down = std::move(fam);
  }
  return out;
}

struct ExponentTuple {
  int n = 0;
  std::vector<ExtReal> w;  // w[d] for d = 0..n-1

  ExponentTuple(int n_in, std::vector<ExtReal> w_in) : n(n_in), w(std::move(w_in)) {
    if (n < 1) throw std::invalid_argument("ExponentTuple: n must be >= 1");
    if (static_cast<int>(w.size()) != n)
      throw std::invalid_argument("ExponentTuple: need one exponent per dimension");
    for (const ExtReal& x : w)
      if (x < ExtReal(0)) throw std::invalid_argument("ExponentTuple: negative exponent");
  }
};

// Full consistency sweep over a tuple: floors, both one-step ladders, and
// the endpoint pair.
inline std::vector<CheckReport> check_tuple(const ExponentTuple& t, ValueKind kind) {
  std::vector<CheckReport> reports;
  for (int d = 0; d <= t.n - 1; ++d) {
    std::ostringstream name;
    name << "floor(" << t.n << "," << d << ")";
    MeasuredExponent target(t.w[static_cast<std::size_t>(d)], kind);
    reports.push_back(
        detail::check_ge(name.str(), target, ExtReal(corollary_floor(t.n, d)), ValueKind::exact));
  }
  for (int d = 0; d + 1 <= t.n - 1; ++d)
    reports.push_back(check_going_up(t.n, d,
                                     MeasuredExponent(t.w[static_cast<std::size_t>(d)], kind),
                                     MeasuredExponent(t.w[static_cast<std::size_t>(d + 1)], kind)));
  for (int d = 1; d <= t.n - 1; ++d)
    reports.push_back(check_going_down(t.n, d,
                                       MeasuredExponent(t.w[static_cast<std::size_t>(d)], kind),
                                       MeasuredExponent(t.w[static_cast<std::size_t>(d - 1)], kind)));
  if (t.n >= 2) {
    KhintchinePair kp = check_khintchine(
        t.n, MeasuredExponent(t.w[0], kind),
        MeasuredExponent(t.w[static_cast<std::size_t>(t.n - 1)], kind));
    reports.push_back(kp.lower);
    reports.push_back(kp.upper);
  }
  return reports;
}

struct SearchBudget {
  Rat h_sq_max = Rat(Int("10000000000"));  // heights up to 1e5
  int ladder_steps = 24;
  Rat exhaustive_h_sq = Rat(400);
  long max_nodes = 2000000;
  int max_rank = kMaxEnumRank;
};

struct LiftCertificate {
  int n = 0;
  int d = 0;
  std::string input_subspace;
  std::string input_plucker;
  Int input_height_sq;
  IntVec xi_coeffs;
  IntVec lift_x;
  Rat xi_norm_sq;
  RealInterval radius;
  std::string svp_mode;
  std::string output_plucker;
  Rat output_wedge_norm_sq;
  Rat wedge_lhs;
  Rat wedge_rhs;
  bool bound_svp = false;
  bool bound_norm = false;
  bool bound_wedge = false;

  bool all_bounds() const { return bound_svp && bound_norm && bound_wedge; }

  nlohmann::json to_json() const {
    nlohmann::json j;
    j["n"] = n;
    j["d"] = d;
    j["input_subspace"] = input_subspace;
    j["input_plucker"] = input_plucker;
    j["input_height_sq"] = input_height_sq.get_str();
    nlohmann::json coeffs = nlohmann::json::array();
    for (const Int& c : xi_coeffs) coeffs.push_back(c.get_str());
    j["xi_coeffs"] = coeffs;
    nlohmann::json lift = nlohmann::json::array();
    for (const Int& c : lift_x) lift.push_back(c.get_str());
    j["lift_x"] = lift;
    j["xi_norm_sq"] = xi_norm_sq.get_str();
    j["radius"] = {{"lo", to_decimal(radius.lo, 30, RoundDir::down)},
                   {"hi", to_decimal(radius.hi, 30, RoundDir::up)},
                   {"lo_exact", radius.lo.get_str()},
                   {"hi_exact", radius.hi.get_str()},
                   {"rounding", "outward"}};
    j["svp_mode"] = svp_mode;
    j["output_plucker"] = output_plucker;
    j["output_wedge_norm_sq"] = output_wedge_norm_sq.get_str();
    j["wedge_lhs"] = wedge_lhs.get_str();
    j["wedge_rhs"] = wedge_rhs.get_str();
    j["bound_svp"] = bound_svp;
    j["bound_norm"] = bound_norm;
    j["bound_wedge"] = bound_wedge;
    return j;
  }
};

struct LiftResult {
  RationalSubspace lifted;
  LiftCertificate cert;
};

// Dimension-raising construction: project the integer lattice onto the
// orthogonal complement of the input subspace, take a shortest vector there
// (Minkowski bounds its length by R since the projected lattice has
// determinant 1/|X|), lift it back to an ambient integer vector, and join.
// All certificate inequalities are verified in exact arithmetic.
inline LiftResult going_up_lift(const PointProxy& p, const RationalSubspace& L,
                                const SearchBudget& budget = SearchBudget{}) {
  int n = L.ambient_n();
  int d = L.dim();
  if (p.ambient_n() != n) throw std::invalid_argument("going_up_lift: dimension mismatch");
  if (d > n - 2) throw std::invalid_argument("going_up_lift: no room to raise dimension");

  GramLattice proj = project_orthogonal(L.basis());
  Rat proj_det_sq = det_sq(proj);
  if (proj_det_sq * Rat(L.height_sq()) != Rat(1))
    throw std::logic_error("going_up_lift: projected determinant identity failed");
  unsigned rank = static_cast<unsigned>(proj.rank);
  RealInterval radius = minkowski_radius(rank, proj_det_sq);

  IntVec coeffs;
  Rat xi_norm;
  std::string mode;
  if (proj.rank <= budget.max_rank) {
    ShortestResult sv = shortest_vector(proj);
    coeffs = sv.coeffs;
    xi_norm = sv.norm_sq;
    mode = "exact";
  } else {
    LllResult red = lll_reduce(proj);
    int best = 0;
    for (int i = 1; i < red.lat.rank; ++i)
      if (red.lat.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] <
          red.lat.gram[static_cast<std::size_t>(best)][static_cast<std::size_t>(best)])
        best = i;
    coeffs = red.change[static_cast<std::size_t>(best)];
    xi_norm = red.lat.gram[static_cast<std::size_t>(best)][static_cast<std::size_t>(best)];
    mode = "lll";
  }

  const Mat<Int>& lift_rows = *proj.lift;
  IntVec x(static_cast<std::size_t>(n + 1), Int(0));
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) x[j] += coeffs[i] * lift_rows[i][j];
  }

  const Multivector<Int>& X = L.plucker();
  Multivector<Int> x_mv = Multivector<Int>::from_vector(x);
  Multivector<Int> X_up = wedge(x_mv, X);
  Rat out_norm = Rat(norm_sq(X_up));
  // The projected component of x is exactly xi, and xi is orthogonal to the
  // input span, so |x wedge X|^2 = |xi|^2 |X|^2 must hold on the nose.
  if (out_norm != xi_norm * Rat(L.height_sq()))
    throw std::logic_error("going_up_lift: orthogonal growth identity failed");

  RationalSubspace lifted = L.join(x);

  Multivector<Rat> y = Multivector<Rat>::from_vector(p.coords);
  Rat lhs = norm_sq(wedge(y, to_rat(X_up)));
  Rat rhs = xi_norm * norm_sq(wedge(y, to_rat(X)));

  Rat r_hi_sq = radius.hi * radius.hi;

  LiftCertificate cert;
  cert.n = n;
  cert.d = d;
  cert.input_subspace = L.serialize();
  cert.input_plucker = blade_string(X);
  cert.input_height_sq = L.height_sq();
  cert.xi_coeffs = coeffs;
  cert.lift_x = x;
  cert.xi_norm_sq = xi_norm;
  cert.radius = radius;
  cert.svp_mode = mode;
  cert.output_plucker = blade_string(X_up);
  cert.output_wedge_norm_sq = out_norm;
  cert.wedge_lhs = lhs;
  cert.wedge_rhs = rhs;
  cert.bound_svp = xi_norm <= r_hi_sq;
  cert.bound_norm = out_norm <= r_hi_sq * Rat(L.height_sq());
  cert.bound_wedge = lhs <= rhs;
  return LiftResult{std::move(lifted), std::move(cert)};
}

}  // namespace omegad
