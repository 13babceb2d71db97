#include <catch2/catch_amalgamated.hpp>

#include <omegad/lattice.hpp>

#include "support.hpp"

using namespace omegad;

TEST_CASE("saturation examples") {
  HnfBasis a = saturate({{Int(2), Int(0), Int(0)}}, 3);
  REQUIRE(a.rank() == 1);
  CHECK(a.rows[0] == IntVec{Int(1), Int(0), Int(0)});

  HnfBasis b = saturate({{Int(1), Int(0), Int(1)}, {Int(0), Int(1), Int(1)}}, 3);
  REQUIRE(b.rank() == 2);
  HnfResult hb = row_hnf({{Int(1), Int(0), Int(1)}, {Int(0), Int(1), Int(1)}});
  CHECK(b.rows == Mat<Int>(hb.h.begin(), hb.h.begin() + hb.rank));

  HnfBasis c = saturate({{Int(1), Int(1), Int(1)}, {Int(1), Int(-1), Int(1)}}, 3);
  REQUIRE(c.rank() == 2);
  HnfResult hc = row_hnf(c.rows);
  CHECK(hnf_row_membership(hc, {Int(0), Int(1), Int(0)}));

  HnfBasis idem = saturate(c.rows, 3);
  CHECK(idem.rows == c.rows);

  CHECK_THROWS_AS(saturate({{Int(0), Int(0)}}, 2), std::invalid_argument);
}

TEST_CASE("gram lattice construction and determinant") {
  GramLattice g = gram_lattice_from_rows<Int>({{Int(1), Int(0), Int(1)}, {Int(0), Int(1), Int(1)}});
  CHECK(g.gram[0][0] == Rat(2));
  CHECK(g.gram[0][1] == Rat(1));
  CHECK(det_sq(g) == Rat(3));

  GramLattice one = gram_lattice_from_rows<Int>({{Int(1), Int(1), Int(1)}});
  CHECK(det_sq(one) == Rat(3));

  GramLattice id = gram_lattice_from_rows<Int>({{Int(1), Int(0)}, {Int(0), Int(1)}});
  CHECK(det_sq(id) == Rat(1));
}

TEST_CASE("orthogonal projection lattice and the determinant identity") {
  HnfBasis v = saturate({{Int(1), Int(1), Int(1)}}, 3);
  GramLattice lam = project_orthogonal(v);
  CHECK(lam.rank == 2);
  CHECK(det_sq(lam) == Rat(1, 3));

  HnfBasis e0 = saturate({{Int(1), Int(0), Int(0)}}, 3);
  GramLattice lam0 = project_orthogonal(e0);
  CHECK(det_sq(lam0) == Rat(1));

  auto rng = testsupport::test_rng(41);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + trial % 5;
    int d = trial % std::max(1, n - 1);
    RationalSubspace s = testsupport::rand_subspace(rng, n, d);
    GramLattice lat = project_orthogonal(s.basis());
    GramLattice vs = gram_lattice_from_rows(s.basis().rows);
    CHECK(det_sq(lat) * det_sq(vs) == Rat(1));
  }
}

TEST_CASE("projection lift map sends basis vectors onto their projections") {
  HnfBasis v = saturate({{Int(1), Int(1), Int(1)}}, 3);
  GramLattice lam = project_orthogonal(v);
  REQUIRE(lam.lift.has_value());
  REQUIRE(lam.ambient.has_value());
  // Each ambient row must be orthogonal to V and differ from its integer
  // lift by an element of the rational span of V.
  for (int i = 0; i < lam.rank; ++i) {
    const RatVec& w = (*lam.ambient)[static_cast<std::size_t>(i)];
    Rat dotv(0);
    for (std::size_t j = 0; j < 3; ++j) dotv += w[j] * Rat(v.rows[0][j]);
    CHECK(sgn(dotv) == 0);
  }
}

TEST_CASE("lll reduction examples and invariants") {
  GramLattice g;
  g.rank = 2;
  g.gram = {{Rat(4), Rat(2)}, {Rat(2), Rat(2)}};
  g.validate();
  LllResult red = lll_reduce(g);
  CHECK(red.lat.gram[0][0] == Rat(2));
  CHECK(det_sq(red.lat) == det_sq(g));
  Int udet = bareiss_det(red.change);
  CHECK((udet == 1 || udet == -1));

  GramLattice id = gram_lattice_from_rows<Int>({{Int(1), Int(0)}, {Int(0), Int(1)}});
  LllResult idred = lll_reduce(id);
  CHECK(idred.lat.gram == id.gram);

  GramLattice r1 = gram_lattice_from_rows<Int>({{Int(5), Int(3)}});
  CHECK(lll_reduce(r1).lat.gram == r1.gram);
}

TEST_CASE("shortest vector examples") {
  GramLattice id = gram_lattice_from_rows<Int>({{Int(1), Int(0)}, {Int(0), Int(1)}});
  CHECK(shortest_vector(id).norm_sq == Rat(1));

  GramLattice g;
  g.rank = 2;
  g.gram = {{Rat(2), Rat(1)}, {Rat(1), Rat(2)}};
  g.validate();
  CHECK(shortest_vector(g).norm_sq == Rat(2));

  HnfBasis v = saturate({{Int(1), Int(1), Int(1)}}, 3);
  CHECK(shortest_vector(project_orthogonal(v)).norm_sq == Rat(2, 3));
}

TEST_CASE("shortest vector agrees with the coefficient-box oracle") {
  auto rng = testsupport::test_rng(42);
  int done = 0;
  while (done < 60) {
    int r = 2 + done % 3;
    Mat<Int> rows = testsupport::rand_int_mat(rng, r, r + 1, -20, 20);
    if (rank_int(rows) != r) continue;
    GramLattice lat = gram_lattice_from_rows(rows);
    ShortestResult sv = shortest_vector(lat);
    Rat oracle = testsupport::svp_box_oracle(lat.gram, 5);
    CHECK(sv.norm_sq == oracle);
    // Reported coefficients must reproduce the reported norm.
    Rat q(0);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j)
        q += lat.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
             Rat(sv.coeffs[static_cast<std::size_t>(i)]) * Rat(sv.coeffs[static_cast<std::size_t>(j)]);
    CHECK(q == sv.norm_sq);
    ++done;
  }
}

TEST_CASE("shortest vector tie-breaking is deterministic") {
  GramLattice id = gram_lattice_from_rows<Int>({{Int(1), Int(0)}, {Int(0), Int(1)}});
  ShortestResult sv = shortest_vector(id);
  CHECK(sv.coeffs == IntVec{Int(0), Int(1)});
  // Rerunning gives the identical canonical answer.
  CHECK(shortest_vector(id).coeffs == sv.coeffs);
}

TEST_CASE("rank over the enumeration budget raises a budget error") {
  GramLattice big;
  big.rank = 13;
  big.gram = make_mat<Rat>(13, 13);
  for (int i = 0; i < 13; ++i) big.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = Rat(1);
  CHECK_THROWS_AS(shortest_vector(big), budget_error);
}

TEST_CASE("enumerate_below visits exactly the short vectors") {
  GramLattice g;
  g.rank = 2;
  g.gram = {{Rat(2), Rat(1)}, {Rat(1), Rat(2)}};
  g.validate();
  std::vector<std::pair<IntVec, Rat>> seen;
  bool complete = enumerate_below(g, Rat(6), 100000, [&](const IntVec& x, const Rat& nsq) {
    seen.emplace_back(x, nsq);
  });
  CHECK(complete);
  long oracle_count = 0;
  for (long a = -4; a <= 4; ++a)
    for (long b = -4; b <= 4; ++b) {
      if (a == 0 && b == 0) continue;
      Rat q = Rat(2 * a * a + 2 * a * b + 2 * b * b);
      if (q <= Rat(6)) ++oracle_count;
    }
  CHECK(static_cast<long>(seen.size()) == oracle_count);
  for (const auto& [x, nsq] : seen) {
    Rat q = Rat(2) * Rat(x[0]) * Rat(x[0]) + Rat(2) * Rat(x[0]) * Rat(x[1]) + Rat(2) * Rat(x[1]) * Rat(x[1]);
    CHECK(q == nsq);
    CHECK(q <= Rat(6));
  }
  // Node budget exhaustion reports incompleteness instead of throwing.
  bool tiny = enumerate_below(g, Rat(6), 2, [&](const IntVec&, const Rat&) {});
  CHECK_FALSE(tiny);
}

TEST_CASE("minkowski radius encloses the exact values") {
  RealInterval r1 = minkowski_radius(1, Rat(1));
  CHECK(r1.contains(Rat(1)));
  CHECK(r1.width() < Rat(1, 1000000));

  // k = 2: R = 2 / sqrt(pi) = 1.12837916709551257...
  RealInterval r2 = minkowski_radius(2, Rat(1));
  CHECK(r2.lo <= parse_rat("1.1283791670955126"));
  CHECK(r2.hi >= parse_rat("1.1283791670955125"));
  CHECK(r2.width() < Rat(1, 1000000));
}

TEST_CASE("minkowski guarantee bounds every shortest vector") {
  auto rng = testsupport::test_rng(43);
  int done = 0;
  while (done < 30) {
    int r = 2 + done % 3;
    Mat<Int> rows = testsupport::rand_int_mat(rng, r, r + 1, -15, 15);
    if (rank_int(rows) != r) continue;
    GramLattice lat = gram_lattice_from_rows(rows);
    RealInterval rad = minkowski_radius(static_cast<unsigned>(r), det_sq(lat));
    CHECK(shortest_vector(lat).norm_sq <= rad.hi * rad.hi);
    ++done;
  }
}
