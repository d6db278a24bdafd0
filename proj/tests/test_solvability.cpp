#include "gact/errors.hpp"
#include "gact/solvability.hpp"
#include "gact/subdivision.hpp"

#include <doctest.h>

#include <functional>

using namespace gact;

namespace {

OrderedPartition op(std::initializer_list<std::initializer_list<int>> blocks) {
  OrderedPartition p;
  for (const auto& b : blocks) {
    ProcessSet s = 0;
    for (int x : b) s |= 1u << x;
    p.blocks.push_back(s);
  }
  return p;
}

RunSpec tail_only(int processes, OrderedPartition p) {
  RunSpec r;
  r.processes = processes;
  r.tail = {std::move(p)};
  return r;
}

// Number of vertex maps Chr^k I -> O that are chromatic and send every simplex into Δ of its carrier.
std::uint64_t count_maps_brute(const TaskSpec& task, int k) {
  auto c = chr_iter(task.input, k);
  const VertexTable& t = c.vertex_table();
  const auto& verts = c.vertices();
  std::vector<std::vector<VertexId>> dom;
  for (VertexId v : verts) {
    std::vector<VertexId> d;
    for (VertexId w : task.output.vertices())
      if (t[w].color == t[v].color) d.push_back(w);
    dom.push_back(d);
  }
  std::map<VertexId, VertexId> img;
  std::uint64_t count = 0;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == verts.size()) {
      for (const auto& s : c.simplices()) {
        Simplex out;
        for (VertexId v : s) out.push_back(img[v]);
        if (!task.image_contains(base_carrier(t, s), make_simplex(out))) return;
      }
      ++count;
      return;
    }
    for (VertexId w : dom[i]) {
      img[verts[i]] = w;
      rec(i + 1);
    }
  };
  rec(0);
  return count;
}

}  // namespace

TEST_CASE("views encode as subdivided vertices and decode back") {
  auto s = standard_simplex(2);
  VertexTable& t = s.vertex_table();
  auto c = chr_iter(s, 2);
  for (VertexId v : c.vertices()) {
    ViewTree tree = decode_view(t, v, 2);
    CHECK(encode_view(t, tree) == v);
  }
  ViewTree base = decode_view(t, 1, 0);
  CHECK(base.input == 1);
  CHECK(base.seen.empty());
}

TEST_CASE("run_protocol semantics") {
  auto task = identity_task(standard_simplex(2));
  VertexTable& t = task.input.vertex_table();
  auto act = act_search(task, 0);
  REQUIRE(act.found);
  auto p = protocol_from_map(act.map, task);
  auto out = run_protocol(*p, t, tail_only(3, op({{0, 1, 2}})), {0, 1, 2}, 2);
  for (int i = 0; i < 3; ++i) {
    CHECK(out[static_cast<std::size_t>(i)].decided_round == 0);
    CHECK(*out[static_cast<std::size_t>(i)].value == static_cast<VertexId>(i));
  }
  TableProtocol empty;
  auto none = run_protocol(empty, t, tail_only(3, op({{0, 1, 2}})), {0, 1, 2}, 2);
  for (const auto& o : none) CHECK(o.decided_round == -1);
  TableProtocol flaky;
  VertexId v1 = t.intern(0, {0, 1, 2});
  flaky.entries[{1, v1}] = 0;
  VertexId v2 = t.intern(0, {v1, t.intern(1, {0, 1, 2}), t.intern(2, {0, 1, 2})});
  flaky.entries[{2, v2}] = 1;
  auto unstable = run_protocol(flaky, t, tail_only(3, op({{0, 1, 2}})), {0, 1, 2}, 2);
  CHECK(unstable[0].decided_round == 1);
  CHECK(unstable[0].unstable_round == 2);
}

TEST_CASE("ACT search examples") {
  auto id = identity_task(standard_simplex(2));
  auto a = act_search(id, 2);
  REQUIRE(a.found);
  CHECK(a.map.k == 0);
  for (const auto& [v, w] : a.map.eta) CHECK(v == w);
  CHECK(act_verify(a.map, id).empty());

  auto l2 = lt_task(2, 2);
  auto b = act_search(l2, 2);
  REQUIRE(b.found);
  CHECK(b.map.k == 2);
  for (const auto& [v, w] : b.map.eta) CHECK(v == w);
  CHECK(act_verify(b.map, l2).empty());

  auto l0 = lt_task(1, 0);
  auto c = act_search(l0, 3);
  CHECK_FALSE(c.found);
  REQUIRE(c.failures.size() == 4);
  for (const auto& f : c.failures) {
    CHECK(f.reason == "delta-empty");
    CHECK(f.carrier.size() == 1);
  }
}

TEST_CASE("brute force agrees that the t=0 edge task has no map") {
  auto l0 = lt_task(1, 0);
  for (int k = 0; k <= 2; ++k) CHECK(count_maps_brute(l0, k) == 0);
  // and that the identity task has exactly one map at k = 0
  CHECK(count_maps_brute(identity_task(standard_simplex(1)), 0) == 1);
}

TEST_CASE("act_verify reports a perturbed map") {
  auto l2 = lt_task(2, 2);
  auto b = act_search(l2, 2);
  REQUIRE(b.found);
  const VertexTable& t = l2.input.vertex_table();
  auto bad = b.map;
  // send a boundary vertex on face {0,1} to an interior vertex of its color
  for (auto& [v, w] : bad.eta) {
    if (t[v].base_carrier == Simplex{0, 1} && t[v].color == 0) {
      for (VertexId x : l2.output.vertices())
        if (t[x].color == 0 && t[x].base_carrier.size() == 3) {
          w = x;
          break;
        }
      break;
    }
  }
  CHECK_FALSE(act_verify(bad, l2).empty());
}

TEST_CASE("bounded solvability checks") {
  auto id = identity_task(standard_simplex(2));
  auto a = act_search(id, 0);
  auto p = protocol_from_map(a.map, id);
  SolvabilityBounds b;
  b.depth = 3;
  b.period = 1;
  b.horizon = 3;
  auto rep = check_protocol_solvability(*p, id, ModelSpec::wait_free(), b);
  CHECK(rep.ok);
  CHECK(rep.runs_checked == count_runs(2, 3, 1));

  TableProtocol wrong = *p;
  wrong.entries[{0, 0}] = 1;  // process 0 outputs a vertex of color 1
  auto bad = check_protocol_solvability(wrong, id, ModelSpec::wait_free(), b);
  REQUIRE_FALSE(bad.ok);
  CHECK(bad.counterexample->condition == 2);

  TableProtocol silent;
  auto none = check_protocol_solvability(silent, id, ModelSpec::wait_free(), b);
  REQUIRE_FALSE(none.ok);
  CHECK(none.counterexample->condition == 1);
}

TEST_CASE("protocol from an ACT map at k=2 is solvable in the wait-free model") {
  auto l2 = lt_task(2, 2);
  auto b = act_search(l2, 2);
  REQUIRE(b.found);
  auto p = protocol_from_map(b.map, l2);
  for (const auto& [key, w] : p->entries) CHECK(key.first == 2);
  SolvabilityBounds bounds;
  bounds.depth = 2;
  bounds.period = 1;
  bounds.horizon = 4;
  CHECK(check_protocol_solvability(*p, l2, ModelSpec::wait_free(), bounds).ok);
}

TEST_CASE("composition with the carrier projection stays valid one level up") {
  auto id = identity_task(standard_simplex(2));
  auto a = act_search(id, 0);
  auto up = compose_with_projection(a.map, id);
  CHECK(up.k == 1);
  CHECK(act_verify(up, id).empty());
  auto up2 = compose_with_projection(up, id);
  CHECK(up2.k == 2);
  CHECK(act_verify(up2, id).empty());
}
