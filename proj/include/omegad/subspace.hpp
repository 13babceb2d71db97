#pragma once
// Rational projective subvarieties carried as saturated integer lattices.
// A subvariety of dimension d in P^n is the projectivization of a rational
// (d+1)-dimensional linear subspace; the canonical data is the Hermite basis
// of its integer points together with the primitive Grassmann coordinate
// vector of that basis. Heights and projective distances are squared exact
// rationals; proxy uncertainty is absorbed by an explicit outward halo.

#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "omegad/interval.hpp"
#include "omegad/lattice.hpp"
#include "omegad/multivector.hpp"

namespace omegad {

// Approximate projective point: exact rational coordinates normalized to
// first coordinate 1, plus a certified Euclidean radius around the true
// point's same-normalized coordinates.
struct PointProxy {
  RatVec coords;
  Rat radius;

  PointProxy(RatVec c, Rat r) : coords(std::move(c)), radius(std::move(r)) {
    if (coords.empty()) throw std::invalid_argument("PointProxy: empty");
    if (coords[0] != 1) throw std::invalid_argument("PointProxy: first coordinate must be 1");
    if (sgn(radius) < 0) throw std::invalid_argument("PointProxy: negative radius");
  }

  int ambient_n() const { return static_cast<int>(coords.size()) - 1; }

  Rat norm_sq_coords() const {
    Rat s(0);
    for (const Rat& c : coords) s += c * c;
    return s;
  }
};

struct DistanceBound {
  Rat value;  // exact squared projective distance to the proxy point
  Rat halo;   // outward margin covering the true point
};

class RationalSubspace {
 public:
  static RationalSubspace from_generators(int n, const Mat<Int>& generators) {
    if (n < 1) throw std::invalid_argument("RationalSubspace: ambient n must be >= 1");
    HnfBasis basis = saturate(generators, n + 1);
    int r = basis.rank();
    if (r == 0) throw std::invalid_argument("RationalSubspace: zero span");
    if (r == n + 1) throw std::invalid_argument("RationalSubspace: full span is not projective");
    return RationalSubspace(n, basis);
  }

  int ambient_n() const { return n_; }
  int dim() const { return static_cast<int>(basis_.rows.size()) - 1; }
  const HnfBasis& basis() const { return basis_; }
  const Multivector<Int>& plucker() const { return plucker_; }

  // Squared height: squared Euclidean norm of the primitive Grassmann
  // vector, cross-checked against the basis Gram determinant.
  const Int& height_sq() const { return height_sq_; }

  bool contains(const IntVec& x) const {
    if (static_cast<int>(x.size()) != n_ + 1)
      throw std::invalid_argument("contains: dimension mismatch");
    if (is_zero_vector(x)) throw std::invalid_argument("contains: zero vector");
    Multivector<Int> xv = Multivector<Int>::from_vector(x);
    return wedge(xv, plucker_).is_zero();
  }

  // sin^2 of the projective angle between the proxy point and this
  // subvariety, plus a halo valid for any true point within the proxy
  // radius: |d(true) - d(proxy)| <= radius because the first proxy
  // coordinate is 1, so the squared value moves by at most
  // 2 sqrt(value) r + r^2.
  DistanceBound distance_sq(const PointProxy& p) const {
    if (p.ambient_n() != n_) throw std::invalid_argument("distance_sq: dimension mismatch");
    Multivector<Rat> y = Multivector<Rat>::from_vector(p.coords);
    Multivector<Rat> w = wedge(y, to_rat(plucker_));
    Rat denom = p.norm_sq_coords() * Rat(height_sq_);
    Rat value = norm_sq(w) / denom;
    Rat halo(0);
    if (sgn(p.radius) > 0) {
      Rat s_hi = sqrt_interval(value).hi;
      halo = Rat(2) * s_hi * p.radius + p.radius * p.radius;
    }
    return {value, halo};
  }

  RationalSubspace join(const IntVec& x) const {
    if (static_cast<int>(x.size()) != n_ + 1)
      throw std::invalid_argument("join: dimension mismatch");
    if (is_zero_vector(x)) throw std::invalid_argument("join: zero vector");
    if (contains(x)) throw std::invalid_argument("join: vector already contained");
    if (dim() + 1 > n_ - 1)
      throw std::invalid_argument("join: result would be the full space");
    Mat<Int> gens = basis_.rows;
    gens.push_back(x);
    return from_generators(n_, gens);
  }

  // Canonical text form: Hermite rows, then the primitive Grassmann vector.
  std::string serialize() const {
    std::ostringstream os;
    os << "n=" << n_ << ";rows=";
    for (std::size_t i = 0; i < basis_.rows.size(); ++i) {
      if (i) os << "|";
      for (std::size_t j = 0; j < basis_.rows[i].size(); ++j) {
        if (j) os << ",";
        os << basis_.rows[i][j].get_str();
      }
    }
    os << ";grassmann=" << blade_string(plucker_);
    return os.str();
  }

  static RationalSubspace parse(const std::string& text) {
    auto need = [&](std::size_t pos, const char* what) {
      if (pos == std::string::npos)
        throw std::invalid_argument(std::string("RationalSubspace::parse: missing ") + what);
      return pos;
    };
    std::size_t npos_start = need(text.find("n="), "n");
    std::size_t rows_start = need(text.find(";rows="), "rows");
    std::size_t gr_start = need(text.find(";grassmann="), "grassmann");
    int n = std::stoi(text.substr(npos_start + 2, rows_start - npos_start - 2));
    std::string rows_text = text.substr(rows_start + 6, gr_start - rows_start - 6);
    Mat<Int> gens;
    std::istringstream rs(rows_text);
    std::string row;
    while (std::getline(rs, row, '|')) {
      IntVec v;
      std::istringstream es(row);
      std::string entry;
      while (std::getline(es, entry, ',')) v.emplace_back(entry);
      gens.push_back(v);
    }
    return from_generators(n, gens);
  }

  friend bool operator==(const RationalSubspace& a, const RationalSubspace& b) {
    return a.n_ == b.n_ && a.basis_.rows == b.basis_.rows;
  }

 private:
  RationalSubspace(int n, HnfBasis basis) : n_(n), basis_(std::move(basis)) , plucker_(0, 0) {
    Multivector<Int> w(n + 1, 0);
    bool first = true;
    for (const IntVec& row : basis_.rows) {
      Multivector<Int> rv = Multivector<Int>::from_vector(row);
      w = first ? rv : wedge(w, rv);
      first = false;
    }
    raw_wedge_norm_sq_ = norm_sq(w);
    plucker_ = primitive_part(w);
    height_sq_ = norm_sq(plucker_);
    // Cross-check against the basis Gram determinant: for a saturated basis
    // the Grassmann vector is primitive, so the two must agree exactly.
    Rat gd = det_rat(gram_matrix(basis_.rows));
    if (gd != Rat(raw_wedge_norm_sq_))
      throw std::logic_error("RationalSubspace: Gram determinant disagrees with wedge norm");
    if (raw_wedge_norm_sq_ != height_sq_)
      throw std::logic_error("RationalSubspace: saturated basis produced imprimitive wedge");
  }

  int n_;
  HnfBasis basis_;
  Multivector<Int> plucker_;
  Int height_sq_;
  Int raw_wedge_norm_sq_;
};

// sin^2 of the projective angle between two proxy points (exact on the
// proxies; no halo, callers fold radii in themselves if needed).
inline Rat point_distance_sq(const PointProxy& a, const PointProxy& b) {
  if (a.ambient_n() != b.ambient_n())
    throw std::invalid_argument("point_distance_sq: dimension mismatch");
  Multivector<Rat> av = Multivector<Rat>::from_vector(a.coords);
  Multivector<Rat> bv = Multivector<Rat>::from_vector(b.coords);
  Rat w = norm_sq(wedge(av, bv));
  return w / (a.norm_sq_coords() * b.norm_sq_coords());
}

// Distance from a proxy point to the projective point of an integer vector.
inline Rat point_to_integer_point_distance_sq(const PointProxy& a, const IntVec& x) {
  if (static_cast<int>(x.size()) != a.ambient_n() + 1)
    throw std::invalid_argument("point_to_integer_point_distance_sq: dimension mismatch");
  if (is_zero_vector(x)) throw std::invalid_argument("point_to_integer_point_distance_sq: zero");
  Multivector<Rat> av = Multivector<Rat>::from_vector(a.coords);
  RatVec xr(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) xr[i] = Rat(x[i]);
  Multivector<Rat> xv = Multivector<Rat>::from_vector(xr);
  Rat xn(0);
  for (const Rat& c : xr) xn += c * c;
  return norm_sq(wedge(av, xv)) / (a.norm_sq_coords() * xn);
}

}  // namespace omegad
