#include <catch2/catch_amalgamated.hpp>

#include <omegad/linalg.hpp>

#include "support.hpp"

using namespace omegad;

TEST_CASE("hermite form is canonical and spans the same row lattice") {
  auto rng = testsupport::test_rng(21);
  for (int trial = 0; trial < 60; ++trial) {
    Mat<Int> a = testsupport::rand_int_mat(rng, 3, 5, -9, 9);
    HnfResult h = row_hnf(a);
    CHECK(mat_mul(h.u, a) == h.h);
    for (const IntVec& row : a) CHECK(hnf_row_membership(h, row));
    Mat<Int> nonzero(h.h.begin(), h.h.begin() + h.rank);
    HnfResult again = row_hnf(nonzero);
    CHECK(again.h == nonzero);
    for (int i = 0; i < h.rank; ++i) {
      int c = h.pivot_cols[static_cast<std::size_t>(i)];
      const Int& p = h.h[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      CHECK(sgn(p) > 0);
      for (int k = 0; k < i; ++k) {
        const Int& above = h.h[static_cast<std::size_t>(k)][static_cast<std::size_t>(c)];
        CHECK(above >= 0);
        CHECK(above < p);
      }
    }
  }
}

TEST_CASE("integer kernel is orthogonal and saturated") {
  Mat<Int> a = {{Int(1), Int(1), Int(1)}};
  Mat<Int> k = int_kernel(a, 3);
  REQUIRE(k.size() == 2);
  for (const IntVec& row : k) {
    Int s(0);
    for (std::size_t j = 0; j < 3; ++j) s += row[j];
    CHECK(s == 0);
  }
  // Kernel of the kernel recovers the primitive row itself: saturation.
  Mat<Int> back = int_kernel(k, 3);
  REQUIRE(back.size() == 1);
  CHECK(back[0] == IntVec{Int(1), Int(1), Int(1)});

  Mat<Int> scaled = {{Int(2), Int(0), Int(0)}};
  Mat<Int> k2 = int_kernel(int_kernel(scaled, 3), 3);
  REQUIRE(k2.size() == 1);
  CHECK(k2[0] == IntVec{Int(1), Int(0), Int(0)});
}

TEST_CASE("fraction-free determinant matches cofactor expansion") {
  auto rng = testsupport::test_rng(22);
  for (int trial = 0; trial < 40; ++trial) {
    int n = 2 + static_cast<int>(trial % 4);
    Mat<Int> a = testsupport::rand_int_mat(rng, n, n, -12, 12);
    CHECK(bareiss_det(a) == testsupport::det_cofactor(a));
  }
}

TEST_CASE("rational determinant and inverse") {
  auto rng = testsupport::test_rng(23);
  std::uniform_int_distribution<long> num(-9, 9);
  for (int trial = 0; trial < 25; ++trial) {
    int n = 2 + trial % 3;
    Mat<Rat> a = make_mat<Rat>(static_cast<std::size_t>(n), static_cast<std::size_t>(n));
    for (auto& row : a)
      for (Rat& v : row) v = make_rat(Int(num(rng)), Int(1 + (trial % 3)));
    Rat d = det_rat(a);
    CHECK(d == testsupport::det_cofactor(a));
    if (sgn(d) != 0) {
      Mat<Rat> inv = inverse_rat(a);
      CHECK(mat_mul(a, inv) == identity_mat<Rat>(static_cast<std::size_t>(n)));
    }
  }
}

TEST_CASE("gram matrices are symmetric with the right entries") {
  Mat<Int> rows = {{Int(1), Int(0), Int(1)}, {Int(0), Int(1), Int(1)}};
  Mat<Rat> g = gram_matrix(rows);
  CHECK(g[0][0] == Rat(2));
  CHECK(g[0][1] == Rat(1));
  CHECK(g[1][0] == Rat(1));
  CHECK(g[1][1] == Rat(2));
  CHECK(det_rat(g) == Rat(3));
}

TEST_CASE("rank helpers") {
  Mat<Int> a = {{Int(1), Int(2), Int(3)}, {Int(2), Int(4), Int(6)}, {Int(0), Int(1), Int(0)}};
  CHECK(rank_int(a) == 2);
  Mat<Rat> b = {{Rat(1), Rat(0)}, {Rat(0), Rat(1)}};
  CHECK(rank_rat(b) == 2);
}
