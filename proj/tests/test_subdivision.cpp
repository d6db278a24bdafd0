#include "gact/errors.hpp"
#include "gact/geometry.hpp"
#include "gact/subdivision.hpp"
#include "oracles.hpp"

#include <doctest.h>

using namespace gact;

TEST_CASE("ordered partitions match the brute-force count") {
  for (int k = 0; k <= 5; ++k) CHECK(ordered_partitions(k).size() == oracle::ordered_set_partitions(k));
  CHECK(oracle::ordered_set_partitions(3) == 13);
  CHECK(oracle::ordered_set_partitions(4) == 75);
}

TEST_CASE("Chr top counts and vertex counts against view tuples") {
  for (int n = 0; n <= 3; ++n) {
    auto c = chr(standard_simplex(n));
    auto want = oracle::chr_by_view_tuples(n, 1);
    CHECK(c.count_dim(n) == want.tops);
    CHECK(c.vertices().size() == want.vertices);
    CHECK(validate_complex(c).empty());
  }
  for (int n = 1; n <= 2; ++n) {
    auto c = chr_iter(standard_simplex(n), 2);
    auto want = oracle::chr_by_view_tuples(n, 2);
    CHECK(c.count_dim(n) == want.tops);
    CHECK(c.vertices().size() == want.vertices);
  }
}

TEST_CASE("vertex coordinates") {
  auto s = standard_simplex(2);
  VertexTable& t = s.vertex_table();
  VertexId v = t.intern(0, {0, 1});
  CHECK(t[v].coords == Point{Rational(1, 3), Rational(2, 3), 0});
  VertexId w = t.intern(1, {0, 1, 2});
  CHECK(t[w].coords == Point{Rational(2, 5), Rational(1, 5), Rational(2, 5)});
  CHECK(t[w].base_carrier == Simplex{0, 1, 2});
  // a level-2 vertex is the same formula applied to level-1 corners
  VertexId u = t.intern(0, {0, w});
  Point want(3);
  for (std::size_t i = 0; i < 3; ++i) want[i] = Rational(1, 3) * t[0].coords[i] + Rational(2, 3) * t[w].coords[i];
  CHECK(t[u].coords == want);
  CHECK(t[u].natural_level == 2);
}

TEST_CASE("geometric validity of iterated Chr") {
  for (int n = 0; n <= 3; ++n) {
    int levels = n <= 1 ? 4 : (n == 2 ? 3 : 1);
    std::vector<int> support;
    for (int i = 0; i <= n; ++i) support.push_back(i);
    ChromaticComplex c = standard_simplex(n);
    for (int m = 1; m <= levels; ++m) {
      c = chr(c);
      auto rep = check_subdivision_geometry(c, support);
      CHECK_MESSAGE(rep.ok, "n=" << n << " m=" << m);
      CHECK(rep.total_volume == 1);
    }
  }
}

TEST_CASE("geometry check catches overlap and gaps") {
  auto c = chr(standard_simplex(2));
  auto tops = c.maximal_simplices();
  std::vector<Simplex> missing(tops.begin() + 1, tops.end());
  auto gap = ChromaticComplex::closure_of(c.table(), 2, 1, missing);
  CHECK_FALSE(check_subdivision_geometry(gap, {0, 1, 2}).ok);
  auto s = standard_simplex(2);
  std::vector<Simplex> doubled = tops;
  doubled.push_back(s.maximal_simplices().front());
  auto overlap = ChromaticComplex::closure_of(c.table(), 2, 1, doubled);
  CHECK_FALSE(check_subdivision_geometry(overlap, {0, 1, 2}).ok);
}

TEST_CASE("carriers") {
  auto s = standard_simplex(2);
  auto c2 = chr_iter(s, 2);
  const VertexTable& t = c2.vertex_table();
  for (const auto& top : c2.maximal_simplices()) {
    auto parent = carrier_of(t, top, 2, 1);
    CHECK(parent.size() == 3);
    CHECK(carrier_of(t, top, 2, 0) == Simplex{0, 1, 2});
  }
  // edge on the boundary face {0,1}
  VertexId a = s.vertex_table().intern(0, {0, 1});
  VertexId b = s.vertex_table().intern(1, {0, 1});
  CHECK(base_carrier(t, {a, b}) == Simplex{0, 1});
  CHECK(base_carrier(t, {0}) == Simplex{0});
}

TEST_CASE("subdivision stats") {
  auto st = subdivision_stats(chr(standard_simplex(2)));
  CHECK(st.simplices_by_dim == std::vector<std::size_t>{12, 24, 13});
  CHECK(st.vertices == 12);
  CHECK(st.total_volume == 1);
}

TEST_CASE("face_containing locates points exactly") {
  auto s = standard_simplex(2);
  const VertexTable& t = s.vertex_table();
  Simplex top{0, 1, 2};
  CHECK(face_containing(t, top, {Rational(1, 2), Rational(1, 2), 0}) == Simplex{0, 1});
  CHECK(face_containing(t, top, {1, 0, 0}) == Simplex{0});
  CHECK(face_containing(t, top, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}) == top);
  CHECK_FALSE(face_containing(t, {0, 1}, {Rational(1, 3), Rational(1, 3), Rational(1, 3)}));
}

TEST_CASE("Chr refuses levels over the enumeration budget before building them") {
  CHECK_THROWS_AS(chr(standard_simplex(8)), BudgetExceeded);
  CHECK_THROWS_AS(chr_iter(standard_simplex(2), 6), BudgetExceeded);
  CHECK(chr_iter(standard_simplex(2), 3).count_dim(2) == 2197);
}
