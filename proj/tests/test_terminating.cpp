#include "gact/errors.hpp"
#include "gact/geometry.hpp"
#include "gact/subdivision.hpp"
#include "gact/terminating.hpp"

#include <doctest.h>

#include <algorithm>
#include <set>

using namespace gact;

namespace {

using PointSet = std::set<std::vector<Point>>;

// Maximal simplices as sets of coordinate points, independent of vertex ids.
PointSet geometric(const ChromaticComplex& c) {
  PointSet out;
  for (const auto& s : c.maximal_simplices()) {
    std::vector<Point> pts;
    for (VertexId v : s) pts.push_back(c.vertex_table()[v].coords);
    std::sort(pts.begin(), pts.end());
    out.insert(pts);
  }
  return out;
}

DecisionMapGACT lift_identity(const TaskSpec& task, int k) {
  auto a = act_search(task, 0);
  REQUIRE(a.found);
  DecisionMapACT m = a.map;
  while (m.k < k) m = compose_with_projection(m, task);
  return DecisionMapGACT{m.eta};
}

}  // namespace

TEST_CASE("partial step with nothing stable is Chr") {
  auto s = standard_simplex(2);
  auto c = partial_chr_step(s, {});
  auto full = chr(s);
  CHECK(c.maximal_simplices() == full.maximal_simplices());
  CHECK(c.maximal_simplices().size() == 13);
}

TEST_CASE("partial step with everything stable is a fixpoint") {
  auto s = standard_simplex(2);
  auto c1 = chr(s);
  auto c2 = partial_chr_step(c1, c1.simplices());
  CHECK(c2.maximal_simplices() == c1.maximal_simplices());
}

TEST_CASE("partial step with one stable edge") {
  auto s = standard_simplex(2);
  const VertexTable& t = s.vertex_table();
  auto c = partial_chr_step(s, downward_closure({Simplex{0, 1}}));
  CHECK(c.contains(Simplex{0, 1}));
  auto a = t.find(0, {0, 1});
  auto b = t.find(1, {0, 1});
  CHECK((!a || !c.has_vertex(*a)));
  CHECK((!b || !c.has_vertex(*b)));
  // the three triangles along the edge collapse onto one
  CHECK(c.maximal_simplices().size() == 11);
  auto g = check_subdivision_geometry(c, {0, 1, 2});
  CHECK(g.ok);
  CHECK(g.total_volume == Rational(1));
  CHECK(validate_complex(c).empty());
}

TEST_CASE("partial step rejects a stable set that is not a subcomplex") {
  auto s = standard_simplex(2);
  CHECK_THROWS_AS(partial_chr_step(s, {Simplex{0, 1}}), InvalidArgument);
  CHECK_THROWS_AS(partial_chr_step(s, downward_closure({Simplex{0, 5}})), Error);
}

TEST_CASE("every partial step over random stable edges stays a valid subdivision") {
  auto s = standard_simplex(2);
  auto c1 = chr(s);
  const auto edges = c1.simplices_of_dim(1);
  std::uint64_t state = 0x9e3779b97f4a7c15ULL;
  for (int trial = 0; trial < 12; ++trial) {
    std::vector<Simplex> chosen;
    for (const auto& e : edges) {
      state = state * 6364136223846793005ULL + 1442695040888963407ULL;
      if ((state >> 61) == 0) chosen.push_back(e);
    }
    auto c2 = partial_chr_step(c1, downward_closure(chosen));
    auto g = check_subdivision_geometry(c2, {0, 1, 2});
    CHECK(g.ok);
    for (const auto& e : chosen) CHECK(c2.contains(e));
  }
}

TEST_CASE("materialize: terminate everything at level 2") {
  auto s = standard_simplex(2);
  auto ts = chr_terminated(s, 2);
  ts->materialize(4);
  auto k = ts->stable_complex(4);
  CHECK(k.maximal_simplices().size() == 169);
  CHECK(ts->level(3).tops.size() == 169);
  CHECK(ts->level(4).tops.size() == 169);
  CHECK(ts->stable_complex(1).empty());
  for (const auto& top : ts->level(2).tops) CHECK(ts->stable_since(top) == 2);
}

TEST_CASE("materialize: empty schedule") {
  auto s = standard_simplex(2);
  auto ts = explicit_subdivision(s, {});
  ts->materialize(3);
  CHECK(ts->stable_complex(3).empty());
  CHECK(ts->level(2).tops.size() == 169);
  auto task = identity_task(s);
  SolvabilityBounds b{1, 1, 3};
  auto rep = admissible_check(*ts, task, ModelSpec::wait_free(), b);
  CHECK_FALSE(rep.ok);
  CHECK(rep.counterexample.has_value());
}

TEST_CASE("stable simplices persist at later levels") {
  auto s = standard_simplex(2);
  auto c1 = chr(s);
  std::vector<Simplex> some;
  for (const auto& top : c1.maximal_simplices())
    if (top.size() == 3 && some.size() < 4) some.push_back(top);
  auto ts = explicit_subdivision(s, {{1, some}});
  ts->materialize(3);
  for (const auto& top : some) {
    CHECK(ts->stable_since(top) == 1);
    for (int k = 2; k <= 3; ++k) {
      CHECK(ts->level(k).complex.contains(top));
      CHECK(ts->is_stable(top, k));
    }
  }
  CHECK(check_subdivision_of_base(ts->level(3).complex, s).ok);
}

TEST_CASE("schedule naming simplices outside C_k is rejected") {
  auto s = standard_simplex(2);
  auto c2 = chr_iter(s, 2);
  auto ts = explicit_subdivision(s, {{1, {c2.maximal_simplices().front()}}});
  CHECK_THROWS(ts->materialize(1));
}

TEST_CASE("wait-free Chr^k terminated with the identity δ verifies") {
  auto s = standard_simplex(2);
  auto task = identity_task(s);
  auto ts = chr_terminated(s, 1);
  auto d = lift_identity(task, 1);
  SolvabilityBounds b{2, 1, 2};
  auto rep = gact_verify(*ts, d, task, ModelSpec::wait_free(), b);
  CHECK(rep.ok);
  CHECK(rep.condition_b);
  CHECK(rep.admissibility.ok);
  CHECK(rep.admissibility.latest_round == 1);
}

TEST_CASE("condition (b) violation is reported") {
  auto task = lt_task(2, 2);
  const VertexTable& t = task.input.vertex_table();
  auto ts = chr_terminated(task.input, 2);
  ts->materialize(2);
  DecisionMapGACT d;
  const auto stable = ts->stable_complex(2);
  for (VertexId v : stable.vertices()) d.delta[v] = v;
  CHECK(check_delta_carrier(*ts, d, task, 2).empty());
  VertexId interior0 = 0;
  for (VertexId v : task.output.vertices())
    if (t[v].color == 0 && t[v].base_carrier.size() == 3) interior0 = v;
  for (auto& [v, w] : d.delta)
    if (t[v].color == 0 && t[v].base_carrier == Simplex{0, 1}) {
      w = interior0;
      break;
    }
  CHECK_FALSE(check_delta_carrier(*ts, d, task, 2).empty());
  SolvabilityBounds b{1, 1, 2};
  auto rep = gact_verify(*ts, d, task, ModelSpec::wait_free(), b);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.condition_b);
}

TEST_CASE("GACT protocol on Chr^k agrees with the ACT protocol") {
  auto s = standard_simplex(2);
  auto task = identity_task(s);
  auto ts = chr_terminated(s, 1);
  auto d = lift_identity(task, 1);
  auto gp = protocol_from_gact(ts, d);
  DecisionMapACT m{1, d.delta};
  auto ap = protocol_from_map(m, task);
  auto table = extract_protocol(*gp, s, 1);
  CHECK(table->entries == ap->entries);
  // later rounds are decided as well
  auto deeper = extract_protocol(*gp, s, 2);
  CHECK(deeper->entries.size() > table->entries.size());
  SolvabilityBounds b{2, 1, 3};
  CHECK(check_protocol_solvability(*gp, task, ModelSpec::wait_free(), b).ok);
}

TEST_CASE("empty stable complex gives an empty protocol") {
  auto s = standard_simplex(1);
  auto ts = explicit_subdivision(s, {});
  auto gp = protocol_from_gact(ts, {});
  CHECK(extract_protocol(*gp, s, 2)->entries.empty());
}

TEST_CASE("subdiv_from_protocol on an empty protocol stabilizes nothing") {
  auto s = standard_simplex(2);
  auto task = identity_task(s);
  TableProtocol empty;
  auto out = subdiv_from_protocol(empty, task, ModelSpec::wait_free(), SolvabilityBounds{2, 1, 2});
  CHECK(out.subdivision->stable_complex(2).empty());
  CHECK(out.delta.delta.empty());
}

TEST_CASE("round trip through the protocol reproduces the stable regions") {
  auto s = standard_simplex(2);
  auto task = identity_task(s);
  for (int k = 1; k <= 2; ++k) {
    auto ts = chr_terminated(s, k);
    ts->materialize(k);
    auto d = lift_identity(task, k);
    auto gp = protocol_from_gact(ts, d);
    auto back = subdiv_from_protocol(*gp, task, ModelSpec::wait_free(), SolvabilityBounds{k, 1, k});
    CHECK(geometric(back.subdivision->stable_complex(k)) == geometric(ts->stable_complex(k)));
    for (const auto& [v, w] : back.delta.delta) CHECK(d.delta.at(v) == w);
  }
}
