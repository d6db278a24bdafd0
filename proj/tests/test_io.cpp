#include "gact/certificate.hpp"
#include "gact/errors.hpp"
#include "gact/json_io.hpp"
#include "gact/resilience.hpp"
#include "gact/subdivision.hpp"
#include "gact/svg.hpp"

#include <doctest.h>

using namespace gact;

namespace {

std::size_t count(const std::string& hay, const std::string& needle) {
  std::size_t n = 0;
  for (auto pos = hay.find(needle); pos != std::string::npos; pos = hay.find(needle, pos + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("complex round trip") {
  for (int m = 0; m <= 2; ++m) {
    auto c = chr_iter(standard_simplex(2), m);
    Json j = complex_to_json(c);
    auto back = complex_from_json(parse_json(j.dump()));
    CHECK(complex_to_json(back) == j);
    CHECK(back.maximal_simplices().size() == c.maximal_simplices().size());
    CHECK(validate_complex(back).empty());
  }
  // into the same table the ids come back unchanged
  auto c = chr(standard_simplex(2));
  auto same = complex_from_json(complex_to_json(c), c.table());
  CHECK(same.simplices() == c.simplices());
}

TEST_CASE("run round trip keeps block order") {
  RunSpec r;
  r.processes = 3;
  r.prefix = {OrderedPartition{{0b100, 0b011}}, OrderedPartition{{0b001}}};
  r.tail = {OrderedPartition{{0b010, 0b101}}};
  auto back = run_from_json(parse_json(run_to_json(r).dump()));
  CHECK(back.processes == 3);
  CHECK(back.prefix == r.prefix);
  CHECK(back.tail == r.tail);
}

TEST_CASE("model round trip") {
  for (const auto& m : {ModelSpec::wait_free(), ModelSpec::resilient(1), ModelSpec::obstruction_free(2),
                        ModelSpec::adversary({0b001, 0b110})}) {
    auto back = model_from_json(model_to_json(m));
    CHECK(model_to_json(back) == model_to_json(m));
  }
  CHECK_THROWS_AS(model_to_json(ModelSpec::custom("x", [](const RunSpec&) { return true; })), InvalidArgument);
}

TEST_CASE("task round trip with empty images") {
  auto task = lt_task(1, 0);
  Json j = task_to_json(task);
  bool saw_empty = false;
  for (const auto& e : j["delta"]) saw_empty = saw_empty || e["image_top"].empty();
  CHECK(saw_empty);
  auto back = task_from_json(parse_json(j.dump()));
  CHECK(task_to_json(back) == j);
  CHECK(validate_task(back).empty());
  auto l1 = lt_task(2, 1);
  CHECK(task_to_json(task_from_json(task_to_json(l1))) == task_to_json(l1));
}

TEST_CASE("terminating subdivision and δ round trip") {
  auto task = lt_task(2, 1);
  auto ts = build_res_subdivision(task.input, 1, 3);
  ts->materialize(3);
  auto res = delta_search(*ts, task, 3);
  REQUIRE(res.ok);
  Json j = tsub_to_json(*ts, 3);
  auto back = tsub_from_json(parse_json(j.dump()), task.input.table());
  CHECK(tsub_to_json(*back, 3) == j);
  CHECK(back->stable_complex(3).simplices() == ts->stable_complex(3).simplices());
  Json dj = delta_to_json(res.delta, *ts->table(), 2);
  auto d2 = delta_from_json(parse_json(dj.dump()), *ts->table());
  CHECK(d2.delta == res.delta.delta);
  // into a fresh table
  auto fresh = tsub_from_json(j);
  CHECK(tsub_to_json(*fresh, 3) == j);
}

TEST_CASE("protocol and ACT map round trip") {
  auto task = lt_task(2, 2);
  auto a = act_search(task, 2);
  REQUIRE(a.found);
  VertexTable& t = task.input.vertex_table();
  auto back = act_map_from_json(act_map_to_json(a.map, t, 2), t);
  CHECK(back.k == a.map.k);
  CHECK(back.eta == a.map.eta);
  auto p = protocol_from_map(a.map, task);
  auto pb = protocol_from_json(protocol_to_json(*p, t, 2), t);
  CHECK(pb->entries == p->entries);
}

TEST_CASE("schema errors carry a path") {
  CHECK_THROWS_AS(parse_json("{\"dimension\": 2,"), SchemaError);
  Json j = complex_to_json(standard_simplex(2));
  Json bad = j;
  bad["vertices"][1]["color"] = "one";
  CHECK_THROWS_WITH_AS(complex_from_json(bad), doctest::Contains("$.vertices[1].color"), SchemaError);
  bad = j;
  bad.erase("simplices");
  CHECK_THROWS_WITH_AS(complex_from_json(bad), doctest::Contains("simplices"), SchemaError);
  bad = j;
  bad["vertices"][0]["coords"][0] = "1/0";
  CHECK_THROWS_WITH_AS(complex_from_json(bad), doctest::Contains("$.vertices[0].coords[0]"), SchemaError);
  Json task = task_to_json(identity_task(standard_simplex(1)));
  task["output"]["vertices"][0]["color"] = 7;
  CHECK_THROWS_WITH_AS(task_from_json(task), doctest::Contains("$.output.vertices[0].color"), SchemaError);
  CHECK_THROWS_WITH_AS(model_from_json(Json{{"kind", "eventual"}}), doctest::Contains("$.kind"), SchemaError);
  CHECK_THROWS_AS(run_from_json(Json{{"prefix", Json::array()}}), SchemaError);
}

TEST_CASE("SVG export") {
  auto c = chr(standard_simplex(2));
  std::string a = export_svg(c);
  std::string b = export_svg(chr(standard_simplex(2)));
  CHECK(a == b);
  CHECK(count(a, "<polygon") == 13);
  CHECK(a.rfind("<svg", 0) == 0);
  auto l1 = lt_task(2, 1);
  std::string l = export_svg(l1.output);
  CHECK(count(l, "<polygon") == 142);
  CHECK_THROWS_AS(export_svg(standard_simplex(3)), InvalidArgument);
}

TEST_CASE("certificates") {
  CHECK(fnv1a64("") == 0xcbf29ce484222325ULL);
  CHECK(fnv1a64("a") == 0xaf63dc4c8601ec8cULL);
  CHECK(content_hash("a") == "af63dc4c8601ec8c");
  Json c = make_certificate("act", {{"task", "x"}}, "pass", Json{{"k_max", 2}}, nullptr);
  CHECK(c["kind"] == "act");
  CHECK(c["inputs"]["task"] == content_hash("x"));
  CHECK(c["bounds"]["k_max"] == 2);
  CHECK(c["witnesses"].is_array());
  CHECK(c["witnesses"].empty());
}
