#include <catch2/catch_amalgamated.hpp>

#include <omegad/subspace.hpp>

#include "support.hpp"

using namespace omegad;

namespace {

RationalSubspace line3() {
  return RationalSubspace::from_generators(2, {{Int(1), Int(0), Int(1)}, {Int(0), Int(1), Int(1)}});
}

PointProxy exact_point(std::initializer_list<long> nums, long den) {
  RatVec c;
  c.push_back(Rat(1));
  for (long v : nums) c.push_back(make_rat(Int(v), Int(den)));
  return PointProxy(c, Rat(0));
}

}  // namespace

TEST_CASE("construction canonicalizes generators") {
  RationalSubspace l = line3();
  CHECK(l.dim() == 1);
  CHECK(l.plucker().coeff({0, 1}) == 1);
  CHECK(l.plucker().coeff({0, 2}) == 1);
  CHECK(l.plucker().coeff({1, 2}) == -1);

  RationalSubspace p = RationalSubspace::from_generators(2, {{Int(2), Int(4), Int(6)}});
  CHECK(p.dim() == 0);
  CHECK(p.basis().rows[0] == IntVec{Int(1), Int(2), Int(3)});

  CHECK_THROWS_AS(RationalSubspace::from_generators(
                      2, {{Int(1), Int(0), Int(0)}, {Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(RationalSubspace::from_generators(2, {{Int(0), Int(0), Int(0)}}),
                  std::invalid_argument);
}

TEST_CASE("height examples") {
  RationalSubspace pt = RationalSubspace::from_generators(2, {{Int(1), Int(2), Int(2)}});
  CHECK(pt.height_sq() == 9);
  CHECK(line3().height_sq() == 3);
  RationalSubspace hyper =
      RationalSubspace::from_generators(2, {{Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}});
  CHECK(hyper.height_sq() == 1);
}

TEST_CASE("distance examples from the lemma") {
  RationalSubspace l =
      RationalSubspace::from_generators(2, {{Int(0), Int(1), Int(0)}, {Int(0), Int(0), Int(1)}});
  PointProxy e0(RatVec{Rat(1), Rat(0), Rat(0)}, Rat(0));
  CHECK(l.distance_sq(e0).value == Rat(1));
  CHECK(l.distance_sq(e0).halo == Rat(0));

  PointProxy ones(RatVec{Rat(1), Rat(1), Rat(1)}, Rat(0));
  CHECK(l.distance_sq(ones).value == Rat(1, 3));

  // A rational point on the variety has distance exactly zero.
  PointProxy on(RatVec{Rat(1), Rat(2), Rat(3)}, Rat(0));
  RationalSubspace through = RationalSubspace::from_generators(
      2, {{Int(1), Int(2), Int(3)}, {Int(0), Int(1), Int(0)}});
  CHECK(through.distance_sq(on).value == Rat(0));
}

TEST_CASE("projective distance between points") {
  PointProxy a(RatVec{Rat(1), Rat(0), Rat(1)}, Rat(0));
  CHECK(point_distance_sq(a, a) == Rat(0));
  Rat d = point_distance_sq(PointProxy(RatVec{Rat(1), Rat(0), Rat(1)}, Rat(0)),
                            PointProxy(RatVec{Rat(1), Rat(1), Rat(2)}, Rat(0)));
  CHECK(d >= Rat(0));
  CHECK(d <= Rat(1));
}

TEST_CASE("unnormalized projective point distance matches the lagrange value") {
  // (1,0,1) against (0,1,1): norm products 2*2, wedge norm_sq 3.
  Multivector<Rat> x = Multivector<Rat>::from_vector(RatVec{Rat(1), Rat(0), Rat(1)});
  Multivector<Rat> y = Multivector<Rat>::from_vector(RatVec{Rat(0), Rat(1), Rat(1)});
  CHECK(norm_sq(wedge(x, y)) / (norm_sq(x) * norm_sq(y)) == Rat(3, 4));
}

TEST_CASE("join and containment") {
  RationalSubspace pt = RationalSubspace::from_generators(2, {{Int(1), Int(0), Int(0)}});
  RationalSubspace joined = pt.join({Int(0), Int(1), Int(0)});
  CHECK(joined.dim() == 1);
  CHECK(joined.contains({Int(1), Int(0), Int(0)}));
  CHECK(joined.contains({Int(0), Int(1), Int(0)}));
  CHECK(joined.contains({Int(3), Int(-5), Int(0)}));
  CHECK_FALSE(joined.contains({Int(0), Int(0), Int(1)}));

  RationalSubspace p2 = RationalSubspace::from_generators(2, {{Int(1), Int(2), Int(2)}});
  RationalSubspace j2 = p2.join({Int(0), Int(0), Int(1)});
  Multivector<Int> byhand = wedge(Multivector<Int>::from_vector({Int(1), Int(2), Int(2)}),
                                  Multivector<Int>::from_vector({Int(0), Int(0), Int(1)}));
  CHECK(j2.height_sq() == norm_sq(primitive_part(byhand)));
  CHECK(Rat(j2.height_sq()) == det_rat(gram_matrix(j2.basis().rows)));

  CHECK_THROWS_AS(pt.join({Int(2), Int(0), Int(0)}), std::invalid_argument);
  CHECK_THROWS_AS(joined.join({Int(0), Int(0), Int(0)}), std::invalid_argument);

  RationalSubspace l = line3();
  CHECK(l.contains({Int(1), Int(0), Int(1)}));
  CHECK_FALSE(l.contains({Int(1), Int(0), Int(0)}));
  for (const IntVec& row : l.basis().rows) CHECK(l.contains(row));
}

TEST_CASE("height equals wedge norm equals gram determinant on random subspaces") {
  auto rng = testsupport::test_rng(51);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 5;
    int d = trial % n;
    RationalSubspace s = testsupport::rand_subspace(rng, n, d);
    CHECK(s.height_sq() == norm_sq(s.plucker()));
    CHECK(Rat(s.height_sq()) == det_rat(gram_matrix(s.basis().rows)));
  }
}

TEST_CASE("distance agrees with the orthogonal projection oracle") {
  auto rng = testsupport::test_rng(52);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 2 + trial % 4;
    int d = trial % n;
    RationalSubspace s = testsupport::rand_subspace(rng, n, d);
    PointProxy p = testsupport::rand_proxy(rng, n, 1 << 10);
    Mat<Rat> basis;
    for (const IntVec& row : s.basis().rows) {
      RatVec r;
      for (const Int& v : row) r.emplace_back(v);
      basis.push_back(r);
    }
    Rat oracle = testsupport::projection_distance_oracle(p.coords, basis);
    DistanceBound db = s.distance_sq(p);
    CHECK(db.value == oracle);
    CHECK(db.value >= Rat(0));
    CHECK(db.value <= Rat(1));
  }
}

TEST_CASE("halo covers every true point inside the proxy radius") {
  auto rng = testsupport::test_rng(53);
  RationalSubspace l = line3();
  std::uniform_int_distribution<long> num(-999, 999);
  for (int trial = 0; trial < 50; ++trial) {
    PointProxy center = testsupport::rand_proxy(rng, 2, 1 << 10);
    Rat radius(1, 1000);
    PointProxy fuzzy(center.coords, radius);
    DistanceBound db = l.distance_sq(fuzzy);
    // Perturb within the Euclidean ball and compare against the halo.
    for (int k = 0; k < 8; ++k) {
      Rat dx = make_rat(Int(num(rng)), Int(2000000));
      Rat dy = make_rat(Int(num(rng)), Int(2000000));
      RatVec moved{Rat(1), center.coords[1] + dx, center.coords[2] + dy};
      PointProxy truth(moved, Rat(0));
      Rat actual = l.distance_sq(truth).value;
      CHECK(actual <= db.value + db.halo);
      CHECK(actual >= std::max(Rat(0), Rat(db.value - db.halo)));
    }
  }
}

TEST_CASE("distance and height are invariant under generator recombination") {
  auto rng = testsupport::test_rng(54);
  for (int trial = 0; trial < 20; ++trial) {
    RationalSubspace s = testsupport::rand_subspace(rng, 3, 1);
    Mat<Int> rows = s.basis().rows;
    Mat<Int> mixed = {rows[0], rows[1]};
    // Unimodular recombination.
    for (std::size_t j = 0; j < mixed[0].size(); ++j) mixed[0][j] += 3 * mixed[1][j];
    std::swap(mixed[0], mixed[1]);
    RationalSubspace t = RationalSubspace::from_generators(3, mixed);
    CHECK(s == t);
    CHECK(s.height_sq() == t.height_sq());
    PointProxy p = testsupport::rand_proxy(rng, 3);
    CHECK(s.distance_sq(p).value == t.distance_sq(p).value);
  }
}

TEST_CASE("triangle inequality for the projective point distance") {
  auto rng = testsupport::test_rng(55);
  for (int trial = 0; trial < 40; ++trial) {
    PointProxy a = testsupport::rand_proxy(rng, 3, 1 << 8);
    PointProxy b = testsupport::rand_proxy(rng, 3, 1 << 8);
    PointProxy c = testsupport::rand_proxy(rng, 3, 1 << 8);
    Rat ab = sqrt_interval(point_distance_sq(a, b)).hi;
    Rat bc = sqrt_interval(point_distance_sq(b, c)).hi;
    Rat ac = sqrt_interval(point_distance_sq(a, c)).lo;
    CHECK(ac <= ab + bc);
  }
}

TEST_CASE("serialization round trips through the canonical form") {
  auto rng = testsupport::test_rng(56);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 2 + trial % 4;
    int d = trial % n;
    RationalSubspace s = testsupport::rand_subspace(rng, n, d);
    RationalSubspace back = RationalSubspace::parse(s.serialize());
    CHECK(s == back);
    CHECK(s.serialize() == back.serialize());
  }
  CHECK_THROWS_AS(RationalSubspace::parse("nonsense"), std::invalid_argument);
}

TEST_CASE("point proxy validation") {
  CHECK_THROWS_AS(PointProxy(RatVec{Rat(2), Rat(1)}, Rat(0)), std::invalid_argument);
  CHECK_THROWS_AS(PointProxy(RatVec{Rat(1), Rat(1)}, Rat(-1)), std::invalid_argument);
  PointProxy ok = exact_point({1, 2}, 3);
  CHECK(ok.ambient_n() == 2);
  CHECK(ok.norm_sq_coords() == Rat(1) + Rat(1, 9) + Rat(4, 9));
}
