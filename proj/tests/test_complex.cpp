#include "gact/complex.hpp"
#include "gact/errors.hpp"
#include "gact/geometry.hpp"
#include "gact/subdivision.hpp"

#include <doctest.h>

#include <algorithm>
#include <random>

using namespace gact;

namespace {

// Triangle a,b,c plus a dangling edge c-d, colors 0,1,2,0.
struct Fixture {
  TablePtr t = std::make_shared<VertexTable>();
  VertexId a, b, c, d;
  Fixture() {
    a = t->add_base("a", 0);
    b = t->add_base("b", 1);
    c = t->add_base("c", 2);
    d = t->add_base("d", 0);
  }
};

}  // namespace

TEST_CASE("rational formatting and parsing") {
  CHECK(format_rational(Rational(2, 4)) == "1/2");
  CHECK(format_rational(Rational(3)) == "3/1");
  CHECK(format_rational(Rational(-1, 3)) == "-1/3");
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("5") == Rational(5));
  CHECK_THROWS_AS(parse_rational("1/0"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational("x/2"), InvalidArgument);
  CHECK_THROWS_AS(parse_rational(""), InvalidArgument);
}

TEST_CASE("exact determinant and solve") {
  CHECK(determinant({{1, 2}, {3, 4}}) == -2);
  CHECK(determinant({{0, 1}, {1, 0}}) == -1);
  CHECK(determinant({{1, 2}, {2, 4}}) == 0);
  std::vector<Rational> x;
  REQUIRE(solve_exact({{2, 0}, {0, 4}, {1, 1}}, {1, 1, Rational(3, 4)}, x));
  CHECK(x == std::vector<Rational>{Rational(1, 2), Rational(1, 4)});
  CHECK_FALSE(solve_exact({{1, 0}, {0, 1}, {1, 1}}, {1, 1, 3}, x));
}

TEST_CASE("validate_complex reports the usual defects") {
  Fixture f;
  auto ok = ChromaticComplex::closure_of(f.t, 2, 0, {{f.a, f.b, f.c}, {f.c, f.d}});
  CHECK(validate_complex(ok).empty());
  auto missing = ChromaticComplex::raw(f.t, 2, 0, {{f.a, f.b}});
  CHECK_FALSE(validate_complex(missing).empty());
  auto repeated = ChromaticComplex::closure_of(f.t, 2, 0, {{f.a, f.d}});
  CHECK_FALSE(validate_complex(repeated).empty());
  auto too_big = ChromaticComplex::closure_of(f.t, 1, 0, {{f.a, f.b, f.c}});
  CHECK_FALSE(validate_complex(too_big).empty());
  auto unknown = ChromaticComplex::raw(f.t, 2, 0, {{99}});
  CHECK_FALSE(validate_complex(unknown).empty());
}

TEST_CASE("star, closed star and link") {
  Fixture f;
  auto c = ChromaticComplex::closure_of(f.t, 2, 0, {{f.a, f.b, f.c}, {f.c, f.d}});
  auto at_c = local_structure(c, {f.c});
  std::vector<Simplex> link = at_c.link;
  std::sort(link.begin(), link.end());
  std::vector<Simplex> want = {{f.a}, {f.a, f.b}, {f.b}, {f.d}};
  std::sort(want.begin(), want.end());
  CHECK(link == want);
  CHECK(at_c.star.size() == 5);
  // the link of a maximal simplex is empty
  CHECK(local_structure(c, {f.a, f.b, f.c}).link.empty());
  auto at_edge = local_structure(c, {f.a, f.b});
  CHECK(at_edge.link == std::vector<Simplex>{{f.c}});
}

TEST_CASE("connectivity predicates") {
  Fixture f;
  CHECK_FALSE(is_nonempty({}));
  CHECK(is_path_connected({{f.a, f.b}, {f.b, f.c}}));
  CHECK_FALSE(is_path_connected({{f.a}, {f.c}}));
  CHECK(is_k_connected({}, -2) == Tristate::True);
  CHECK(is_k_connected({}, -1) == Tristate::False);
  CHECK(is_k_connected({{f.a}, {f.c}}, 0) == Tristate::False);
  auto tri = downward_closure({{f.a, f.b, f.c}});
  CHECK(is_k_connected(tri, 1) == Tristate::True);
  // hollow triangle: connected, 1-connectedness undecided by collapsing
  auto hollow = downward_closure({{f.a, f.b}, {f.b, f.c}, {f.a, f.c}});
  CHECK(is_k_connected(hollow, 0) == Tristate::True);
  CHECK(is_k_connected(hollow, 1) == Tristate::Unknown);
}

TEST_CASE("link-connectedness of a pinched complex fails at the pinch vertex") {
  Fixture f;
  VertexId e = f.t->add_base("e", 1);
  auto c = ChromaticComplex::closure_of(f.t, 2, 0, {{f.a, f.b, f.c}, {f.c, f.d, e}});
  auto lc = is_link_connected(c);
  CHECK(lc.verdict == Tristate::False);
  CHECK(lc.witness == Simplex{f.c});
  CHECK(lc.required == 0);
  auto tri = ChromaticComplex::closure_of(f.t, 2, 0, {{f.a, f.b, f.c}});
  CHECK(is_link_connected(tri).verdict == Tristate::True);
}

TEST_CASE("skeleton, purity and barycentric subdivision") {
  auto s = standard_simplex(2);
  CHECK(skeleton(s, 1).count_dim(2) == 0);
  CHECK(skeleton(s, 1).count_dim(1) == 3);
  CHECK(is_pure(s, 2));
  auto b = barycentric(s);
  CHECK(b.count_dim(2) == 6);
  CHECK(b.vertices().size() == 7);
  CHECK(validate_complex(b).empty());
  auto rep = check_subdivision_geometry(b, {0, 1, 2});
  CHECK(rep.ok);
  CHECK(rep.total_volume == 1);
}

TEST_CASE("vertex table naming round trip and rollback") {
  auto s = standard_simplex(2);
  VertexTable& t = s.vertex_table();
  auto c2 = chr_iter(s, 2);
  for (VertexId v : c2.vertices()) {
    auto name = t.name(v, 2);
    auto found = t.find_name(name);
    REQUIRE(found);
    CHECK(found->first == v);
    CHECK(found->second == 2);
  }
  VertexId x = t.intern(0, {0, 1});
  CHECK(t.name(x, 1) == "c0@[0,1]");
  CHECK(t.name(x, 2) == "c0@[c0@[0,1]]");
  CHECK(t.intern(0, {0}) == 0);
  auto fresh = standard_simplex(2);
  VertexTable& f = fresh.vertex_table();
  auto mark = f.mark();
  std::size_t before = f.size();
  f.parse_name("c1@[c0@[0,1,2],c1@[0,1,2]]");
  CHECK(f.size() > before);
  f.rollback(mark);
  CHECK(f.size() == before);
  CHECK_FALSE(f.find_name("c1@[c0@[0,1,2],c1@[0,1,2]]"));
  CHECK_THROWS_AS(t.intern(0, {1, 2}), InvalidArgument);
  CHECK_THROWS_AS(t.intern(0, {0, 3}), InvalidArgument);
}

TEST_CASE("property: downward closure is idempotent and contains the family") {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 50; ++iter) {
    std::vector<Simplex> fam;
    int m = 1 + static_cast<int>(rng() % 5);
    for (int i = 0; i < m; ++i) {
      Simplex s;
      for (VertexId v = 0; v < 6; ++v)
        if (rng() % 2) s.push_back(v);
      if (!s.empty()) fam.push_back(s);
    }
    auto once = downward_closure(fam);
    CHECK(downward_closure(once) == once);
    for (const auto& s : fam) CHECK(std::binary_search(once.begin(), once.end(), s));
  }
}
