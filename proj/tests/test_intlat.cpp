#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "support.hpp"
#include "torusnielsen/errors.hpp"
#include "torusnielsen/intlat.hpp"
#include "torusnielsen/oracle.hpp"

using namespace tn;
using tn::testing::random_matrix;
using tn::testing::random_vector;
using tn::testing::vec;

namespace {

bool is_canonical_hnf(const IntMatrix& H, std::size_t rank) {
  std::size_t prev_pivot = 0;
  for (std::size_t j = 0; j < H.cols(); ++j) {
    std::size_t p = 0;
    while (p < H.rows() && H(p, j) == 0) ++p;
    if (j >= rank) {
      if (p != H.rows()) return false;
      continue;
    }
    if (p == H.rows() || H(p, j) <= 0) return false;
    if (j > 0 && p <= prev_pivot) return false;
    for (std::size_t k = 0; k < j; ++k)
      if (H(p, k) < 0 || H(p, k) >= H(p, j)) return false;
    prev_pivot = p;
  }
  return true;
}

bool divisor_chain(const IntVector& d) {
  for (std::size_t i = 0; i + 1 < d.size(); ++i) {
    if (d[i] < 0) return false;
    if (d[i] == 0 && d[i + 1] != 0) return false;
    if (d[i] != 0 && !divides(d[i], d[i + 1])) return false;
  }
  return d.empty() || d.back() >= 0;
}

IntVector nonzero(const IntVector& d) {
  IntVector out;
  for (const auto& x : d)
    if (x != 0) out.push_back(x);
  return out;
}

}  // namespace

TEST_CASE("hnf of the identity is the identity") {
  const auto h = intlat::hnf(IntMatrix::identity(2));
  CHECK(h.form == IntMatrix::identity(2));
  CHECK(h.transform == IntMatrix::identity(2));
}

TEST_CASE("hnf leaves an already canonical basis alone") {
  const IntMatrix A = IntMatrix::from_rows({{2, 0}, {0, 2}});
  CHECK(intlat::hnf(A).form == A);
}

TEST_CASE("hnf of multiplication by 1+i has determinant equal to the coset count") {
  const IntMatrix A = IntMatrix::from_rows({{1, -1}, {1, 1}});
  const auto h = intlat::hnf(A);
  CHECK(A * h.transform == h.form);
  const auto pts = oracle::parallelepiped_points(A);
  CHECK(abs(intlat::det(h.form)) == Int(static_cast<long>(pts.size())));
  CHECK(abs(intlat::det(h.form)) == 2);
}

TEST_CASE("snf examples") {
  CHECK(intlat::snf(IntMatrix::zero(2, 2)).diag == vec({0, 0}));
  const IntMatrix D = IntMatrix::from_rows({{2, 0}, {0, 3}});
  CHECK(intlat::snf(D).diag == vec({1, 6}));
  CHECK(oracle::minors_snf_check(D) == vec({1, 6}));
  const IntMatrix G = IntMatrix::from_rows({{1, -1}, {1, 1}});
  CHECK(intlat::snf(G).diag == vec({1, 2}));
  CHECK(oracle::minors_snf_check(G) == vec({1, 2}));
}

TEST_CASE("image_lattice examples") {
  CHECK(intlat::image_lattice(IntMatrix::zero(2, 2)).empty());
  const auto L = intlat::image_lattice(IntMatrix::from_rows({{2, 4}, {0, 0}}));
  REQUIRE(L.rank() == 1);
  CHECK(L.basis.column(0) == vec({2, 0}));
  CHECK(intlat::contains(L, vec({4, 0})));
  CHECK(intlat::contains(L, vec({-2, 0})));
  CHECK_FALSE(intlat::contains(L, vec({1, 0})));
  CHECK_FALSE(intlat::contains(L, vec({2, 1})));
  CHECK(intlat::image_lattice(IntMatrix::identity(3)).basis == IntMatrix::identity(3));
}

TEST_CASE("saturation examples") {
  const auto L = intlat::image_lattice(IntMatrix::from_rows({{2}, {0}}));
  const auto S = intlat::saturation(L);
  REQUIRE(S.rank() == 1);
  CHECK(S.basis.column(0) == vec({1, 0}));
  const auto full = intlat::image_lattice(IntMatrix::from_rows({{2, 1}, {0, 3}}));
  CHECK(intlat::saturation(full).basis == IntMatrix::identity(2));
  const auto none = intlat::image_lattice(IntMatrix::zero(3, 0));
  CHECK(intlat::saturation(none).empty());
}

TEST_CASE("solve examples") {
  const auto b = vec({3, -7, 2});
  CHECK(intlat::solve(IntMatrix::identity(3), b) == b);
  CHECK_FALSE(intlat::solve(IntMatrix::from_rows({{2}}), vec({1})).has_value());
  const IntMatrix G = IntMatrix::from_rows({{1, -1}, {1, 1}});
  const auto x = intlat::solve(G, vec({2, 0}));
  REQUIRE(x.has_value());
  CHECK(G * *x == vec({2, 0}));
  bool found = false;
  for (long p = -20; p <= 20; ++p)
    for (long q = -20; q <= 20; ++q)
      if (p - q == 2 && p + q == 0) found = true;
  CHECK(found);
}

TEST_CASE("det examples") {
  CHECK(intlat::det(IntMatrix::identity(3)) == 1);
  CHECK(intlat::det(IntMatrix::from_rows({{0, -1}, {1, 0}})) == 1);
  const IntMatrix G = IntMatrix::from_rows({{1, -1}, {1, 1}});
  CHECK(intlat::det(G) == 2);
  CHECK(oracle::cofactor_det(G) == 2);
  CHECK(intlat::det(IntMatrix(0, 0)) == 1);
  CHECK_THROWS_AS(intlat::det(IntMatrix(2, 3)), Error);
}

TEST_CASE("empty matrices") {
  CHECK(intlat::image_lattice(IntMatrix(3, 0)).empty());
  CHECK(intlat::image_lattice(IntMatrix(3, 0)).ambient_dim == 3);
  CHECK(intlat::kernel(IntMatrix(0, 2)).basis == IntMatrix::identity(2));
  CHECK(intlat::snf(IntMatrix(0, 0)).diag.empty());
}

TEST_CASE("property: Smith decomposition invariants on random matrices") {
  std::mt19937_64 rng(101);
  for (int t = 0; t < 300; ++t) {
    const auto r = tn::testing::random_dim(rng, 1, 6);
    const auto c = tn::testing::random_dim(rng, 1, 6);
    const IntMatrix A = random_matrix(rng, r, c, 9);
    const auto s = intlat::snf(A);
    CHECK(s.U * A * s.V == s.S);
    CHECK(abs(intlat::det(s.U)) == 1);
    CHECK(abs(intlat::det(s.V)) == 1);
    CHECK(s.U * s.U_inv == IntMatrix::identity(r));
    CHECK(s.V * s.V_inv == IntMatrix::identity(c));
    CHECK(divisor_chain(s.diag));
  }
}

TEST_CASE("property: hnf is canonical and image_lattice is idempotent") {
  std::mt19937_64 rng(102);
  for (int t = 0; t < 300; ++t) {
    const auto r = tn::testing::random_dim(rng, 1, 5);
    const auto c = tn::testing::random_dim(rng, 1, 5);
    const IntMatrix A = random_matrix(rng, r, c, 9);
    const auto h = intlat::hnf(A);
    CHECK(A * h.transform == h.form);
    CHECK(abs(intlat::det(h.transform)) == 1);
    CHECK(is_canonical_hnf(h.form, h.rank));
    const auto L = intlat::image_lattice(A);
    CHECK(intlat::image_lattice(L.basis) == L);
    // The same lattice from a scrambled generating set.
    const IntMatrix W = A * oracle::random_unimodular(rng, c, 6);
    CHECK(intlat::image_lattice(W) == L);
  }
}

TEST_CASE("property: saturation is idempotent and its index matches the divisors") {
  std::mt19937_64 rng(103);
  for (int t = 0; t < 200; ++t) {
    const auto n = tn::testing::random_dim(rng, 1, 5);
    const auto m = tn::testing::random_dim(rng, 0, 5);
    const auto L = intlat::image_lattice(random_matrix(rng, n, m, 6));
    const auto S = intlat::saturation(L);
    CHECK(intlat::saturation(S) == S);
    CHECK(S.rank() == L.rank());
    CHECK(intlat::contains(S, L));
    const auto index = intlat::sublattice_index(L, S);
    REQUIRE(index.has_value());
    IntMatrix coords(S.rank(), L.rank());
    for (std::size_t j = 0; j < L.rank(); ++j) {
      const auto c = intlat::coordinates(S, L.basis.column(j));
      REQUIRE(c.has_value());
      coords.set_column(j, *c);
    }
    Int product = 1;
    for (const auto& d : nonzero(intlat::snf(coords).diag)) product *= d;
    CHECK(*index == product);
  }
}

TEST_CASE("property: solve is exact and absence is confirmed by box search") {
  std::mt19937_64 rng(104);
  int absent = 0;
  for (int t = 0; t < 200; ++t) {
    const auto r = tn::testing::random_dim(rng, 1, 2);
    const auto c = tn::testing::random_dim(rng, 1, 2);
    const IntMatrix A = random_matrix(rng, r, c, 4);
    const IntVector b = random_vector(rng, r, 6);
    const auto x = intlat::solve(A, b);
    if (x) {
      CHECK(A * *x == b);
      continue;
    }
    ++absent;
    bool hit = false;
    const long B = 20;
    if (c == 1) {
      for (long p = -B; p <= B && !hit; ++p) hit = A * IntVector{Int(p)} == b;
    } else {
      for (long p = -B; p <= B && !hit; ++p)
        for (long q = -B; q <= B && !hit; ++q) hit = A * IntVector{Int(p), Int(q)} == b;
    }
    CHECK_FALSE(hit);
  }
  CHECK(absent > 10);
}

TEST_CASE("property: det is multiplicative and agrees with cofactor expansion") {
  std::mt19937_64 rng(105);
  for (int t = 0; t < 200; ++t) {
    const auto n = tn::testing::random_dim(rng, 0, 5);
    const IntMatrix A = random_matrix(rng, n, n, 9);
    const IntMatrix B = random_matrix(rng, n, n, 9);
    CHECK(intlat::det(A * B) == intlat::det(A) * intlat::det(B));
    CHECK(intlat::det(A) == oracle::cofactor_det(A));
  }
}

TEST_CASE("property: reduce_modulo is a canonical coset representative") {
  std::mt19937_64 rng(106);
  for (int t = 0; t < 200; ++t) {
    const auto n = tn::testing::random_dim(rng, 1, 4);
    const auto m = tn::testing::random_dim(rng, 0, 4);
    const IntMatrix A = random_matrix(rng, n, m, 5);
    const auto L = intlat::image_lattice(A);
    const IntVector x = random_vector(rng, n, 30);
    const IntVector shifted = x + A * random_vector(rng, m, 5);
    const auto r = intlat::reduce_modulo(L, x);
    CHECK(r == intlat::reduce_modulo(L, shifted));
    CHECK(intlat::contains(L, x - r));
  }
}

TEST_CASE("property: unimodular_inverse inverts") {
  std::mt19937_64 rng(107);
  for (int t = 0; t < 100; ++t) {
    const auto n = tn::testing::random_dim(rng, 1, 5);
    const IntMatrix U = oracle::random_unimodular(rng, n, 8);
    CHECK(U * intlat::unimodular_inverse(U) == IntMatrix::identity(n));
  }
  CHECK_THROWS_AS(intlat::unimodular_inverse(IntMatrix::from_rows({{2}})), Error);
}
