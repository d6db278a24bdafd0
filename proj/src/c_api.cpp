#include "gact/gact.h"

#include "gact/certificate.hpp"
#include "gact/errors.hpp"
#include "gact/json_io.hpp"
#include "gact/resilience.hpp"
#include "gact/subdivision.hpp"
#include "gact/svg.hpp"

#include <cstdlib>
#include <cstring>
#include <new>
#include <string>

using namespace gact;

struct gact_complex {
  ChromaticComplex c;
  std::optional<ChromaticComplex> base;
};

struct gact_task {
  TaskSpec task;
};

struct gact_tsub {
  TSubPtr ts;
};

namespace {

thread_local std::string last_error;

template <class F>
gact_status guard(F&& f) {
  last_error.clear();
  try {
    return f();
  } catch (const SchemaError& e) {
    last_error = e.what();
    return GACT_E_SCHEMA;
  } catch (const BudgetExceeded& e) {
    last_error = e.what();
    return GACT_E_BUDGET;
  } catch (const NotFound& e) {
    last_error = e.what();
    return GACT_E_NOT_FOUND;
  } catch (const InvalidArgument& e) {
    last_error = e.what();
    return GACT_E_INVALID;
  } catch (const Json::exception& e) {
    last_error = e.what();
    return GACT_E_SCHEMA;
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return GACT_E_BUDGET;
  } catch (const std::exception& e) {
    last_error = e.what();
    return GACT_E_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void put(char** out, const std::string& s) {
  if (out) *out = dup(s);
}

void put(char** out, const Json& j) { put(out, j.dump(2) + "\n"); }

template <class T>
void need(const T* p, const char* what) {
  if (!p) throw InvalidArgument(std::string(what) + " is null");
}

ModelSpec model_or_wait_free(const char* model_json) {
  if (!model_json) return ModelSpec::wait_free();
  return model_from_json(parse_json(model_json));
}

std::string canonical(const TaskSpec& t) { return task_to_json(t).dump(); }

std::string bounds_text(const SolvabilityBounds& b) {
  return "prefix depth " + std::to_string(b.depth) + ", tail period " + std::to_string(b.period) +
         ", rounds simulated up to " + std::to_string(b.horizon);
}

Json bounds_json(const SolvabilityBounds& b, const ModelSpec& m) {
  return Json{{"depth", b.depth}, {"period", b.period}, {"horizon", b.horizon}, {"model", m.describe()}};
}

Json counterexample_json(const Counterexample& c, const VertexTable& t) {
  Json omega = Json::array();
  for (VertexId v : c.omega) omega.push_back(t.name(v, 0));
  return Json{{"run", run_to_json(c.run)}, {"omega", omega}, {"round", c.round}, {"condition", c.condition},
              {"detail", c.detail}};
}

SolvabilityBounds make_bounds(int depth, int period, int horizon) {
  SolvabilityBounds b;
  b.depth = depth;
  b.period = period;
  b.horizon = horizon < 0 ? depth : horizon;
  return b;
}

}  // namespace

extern "C" {

const char* gact_last_error(void) { return last_error.c_str(); }

void gact_string_free(char* s) { std::free(s); }

const char* gact_version(void) { return "0.1.0"; }

gact_status gact_complex_standard(int n, gact_complex** out) {
  return guard([&] {
    need(out, "out");
    if (n < 0 || n > 8) throw InvalidArgument("n must be between 0 and 8");
    *out = new gact_complex{standard_simplex(n), std::nullopt};
    return GACT_OK;
  });
}

gact_status gact_complex_from_json(const char* json, gact_complex** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    ChromaticComplex c = complex_from_json(parse_json(json));
    auto problems = validate_complex(c);
    if (!problems.empty()) throw SchemaError("$: " + problems.front());
    *out = new gact_complex{std::move(c), std::nullopt};
    return GACT_OK;
  });
}

gact_status gact_complex_to_json(const gact_complex* c, char** out) {
  return guard([&] {
    need(c, "complex");
    put(out, complex_to_json(c->c));
    return GACT_OK;
  });
}

gact_status gact_complex_subdivide(const gact_complex* c, const char* kind, int m, gact_complex** out) {
  return guard([&] {
    need(c, "complex");
    need(kind, "kind");
    need(out, "out");
    if (m < 0) throw InvalidArgument("negative iteration count");
    std::string k = kind;
    ChromaticComplex result = c->c;
    if (k == "chr") {
      result = chr_iter(c->c, m);
    } else if (k == "bary") {
      for (int i = 0; i < m; ++i) result = barycentric(result);
      *out = new gact_complex{std::move(result), std::nullopt};
      return GACT_OK;
    } else {
      throw InvalidArgument("unknown subdivision kind '" + k + "'");
    }
    *out = new gact_complex{std::move(result), c->base ? c->base : std::optional<ChromaticComplex>(c->c)};
    return GACT_OK;
  });
}

gact_status gact_complex_stats(const gact_complex* c, char** out_json) {
  return guard([&] {
    need(c, "complex");
    SubdivisionStats st = subdivision_stats(c->c);
    Json j = {{"simplices_by_dim", st.simplices_by_dim},
              {"vertices", st.vertices},
              {"total_volume", format_rational(st.total_volume)}};
    if (c->base) {
      GeometryReport rep = check_subdivision_of_base(c->c, *c->base);
      j["geometry_ok"] = rep.ok;
      if (!rep.ok) j["geometry_problems"] = rep.problems;
    }
    put(out_json, j);
    return GACT_OK;
  });
}

gact_status gact_complex_svg(const gact_complex* c, char** out_svg) {
  return guard([&] {
    need(c, "complex");
    put(out_svg, export_svg(c->c));
    return GACT_OK;
  });
}

void gact_complex_free(gact_complex* c) { delete c; }

gact_status gact_count_runs(int n, int depth, int period, uint64_t* out) {
  return guard([&] {
    need(out, "out");
    if (n < 0 || n > 8 || depth < 0 || period < 0) throw InvalidArgument("bad enumeration bounds");
    *out = count_runs(n, depth, period);
    return GACT_OK;
  });
}

gact_status gact_enumerate_runs(int n, int depth, int period, const char* model_json, char** out_json) {
  return guard([&] {
    if (n < 0 || n > 8 || depth < 0 || period < 0) throw InvalidArgument("bad enumeration bounds");
    Json runs = Json::array();
    if (model_json) {
      ModelSpec m = model_from_json(parse_json(model_json));
      enumerate_model_runs(m, n, depth, period, [&](const RunSpec& r) { runs.push_back(run_to_json(r)); });
    } else {
      enumerate_runs(n, depth, period, [&](const RunSpec& r) { runs.push_back(run_to_json(r)); });
    }
    put(out_json, Json{{"n", n}, {"depth", depth}, {"period", period}, {"count", runs.size()}, {"runs", runs}});
    return GACT_OK;
  });
}

gact_status gact_task_build(const char* kind, int n, int t, gact_task** out) {
  return guard([&] {
    need(kind, "kind");
    need(out, "out");
    if (n < 0 || n > 3) throw InvalidArgument("task construction supports 0 <= n <= 3");
    std::string k = kind;
    TaskSpec task;
    if (k == "identity")
      task = identity_task(standard_simplex(n));
    else if (k == "lord")
      task = total_order_task(n);
    else if (k == "lt")
      task = lt_task(n, t);
    else
      throw InvalidArgument("unknown task kind '" + k + "'");
    *out = new gact_task{std::move(task)};
    return GACT_OK;
  });
}

gact_status gact_task_from_json(const char* json, gact_task** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new gact_task{task_from_json(parse_json(json))};
    return GACT_OK;
  });
}

gact_status gact_task_to_json(const gact_task* task, char** out) {
  return guard([&] {
    need(task, "task");
    put(out, task_to_json(task->task));
    return GACT_OK;
  });
}

gact_status gact_task_validate(const gact_task* task, char** out_json) {
  return guard([&] {
    need(task, "task");
    auto problems = validate_task(task->task);
    put(out_json, Json{{"valid", problems.empty()}, {"problems", problems}});
    return problems.empty() ? GACT_OK : GACT_NEGATIVE;
  });
}

gact_status gact_task_output_svg(const gact_task* task, char** out_svg) {
  return guard([&] {
    need(task, "task");
    put(out_svg, export_svg(task->task.output));
    return GACT_OK;
  });
}

void gact_task_free(gact_task* task) { delete task; }

gact_status gact_act_search(const gact_task* task, int kmax, char** map_json, char** certificate) {
  return guard([&] {
    need(task, "task");
    if (kmax < 0) throw InvalidArgument("negative kmax");
    const VertexTable& t = task->task.input.vertex_table();
    ActResult res = act_search(task->task, kmax);
    Json witnesses = Json::array();
    for (const auto& f : res.failures) {
      Json w = {{"k", f.k}, {"reason", f.reason}, {"nodes", f.nodes}};
      if (f.reason == "delta-empty") {
        w["vertex"] = t.name(f.vertex, t[f.vertex].natural_level);
        Json carrier = Json::array();
        for (VertexId v : f.carrier) carrier.push_back(t.name(v, 0));
        w["carrier"] = carrier;
      }
      witnesses.push_back(std::move(w));
    }
    std::string verdict = res.found ? "solvable at k=" + std::to_string(res.map.k)
                                    : "no decision map for k <= " + std::to_string(kmax);
    Json bounds = {{"kmax", kmax}};
    if (res.found) bounds["k"] = res.map.k;
    put(certificate, make_certificate("act", {{"task", canonical(task->task)}}, verdict, bounds, witnesses));
    if (res.found) put(map_json, act_map_to_json(res.map, t, task->task.output.level()));
    return res.found ? GACT_OK : GACT_NEGATIVE;
  });
}

gact_status gact_act_verify(const gact_task* task, const char* map_json, char** certificate) {
  return guard([&] {
    need(task, "task");
    need(map_json, "map");
    DecisionMapACT m = act_map_from_json(parse_json(map_json), task->task.input.vertex_table());
    auto problems = act_verify(m, task->task);
    put(certificate, make_certificate("act", {{"task", canonical(task->task)}, {"map", map_json}},
                                      problems.empty() ? "valid decision map" : "invalid decision map",
                                      Json{{"k", m.k}}, Json(problems)));
    return problems.empty() ? GACT_OK : GACT_NEGATIVE;
  });
}

gact_status gact_act_protocol(const gact_task* task, const char* map_json, char** protocol_json) {
  return guard([&] {
    need(task, "task");
    need(map_json, "map");
    VertexTable& t = task->task.input.vertex_table();
    DecisionMapACT m = act_map_from_json(parse_json(map_json), t);
    auto p = protocol_from_map(m, task->task);
    put(protocol_json, protocol_to_json(*p, t, task->task.output.level()));
    return GACT_OK;
  });
}

gact_status gact_solve_check(const gact_task* task, const char* model_json, const char* protocol_json, int depth,
                             int period, int horizon, char** certificate) {
  return guard([&] {
    need(task, "task");
    need(protocol_json, "protocol");
    VertexTable& t = task->task.input.vertex_table();
    ModelSpec m = model_or_wait_free(model_json);
    auto p = protocol_from_json(parse_json(protocol_json), t);
    SolvabilityBounds b = make_bounds(depth, period, horizon);
    SolvabilityReport rep = check_protocol_solvability(*p, task->task, m, b);
    Json witnesses = Json::array();
    if (rep.counterexample) witnesses.push_back(counterexample_json(*rep.counterexample, t));
    std::string verdict = rep.ok ? "solves the task on every enumerated run (" + bounds_text(b) + ")"
                                 : "violation found (" + bounds_text(b) + ")";
    Json bj = bounds_json(b, m);
    bj["runs_checked"] = rep.runs_checked;
    put(certificate, make_certificate("protocol-check",
                                      {{"task", canonical(task->task)}, {"protocol", protocol_json},
                                       {"model", model_to_json(m).dump()}},
                                      verdict, bj, witnesses));
    return rep.ok ? GACT_OK : GACT_NEGATIVE;
  });
}

gact_status gact_tsub_from_json(const char* json, const gact_task* task, gact_tsub** out) {
  return guard([&] {
    need(json, "json");
    need(out, "out");
    *out = new gact_tsub{tsub_from_json(parse_json(json), task ? task->task.input.table() : nullptr)};
    return GACT_OK;
  });
}

gact_status gact_tsub_to_json(const gact_tsub* ts, int depth, char** out) {
  return guard([&] {
    need(ts, "subdivision");
    if (depth < 0) depth = ts->ts->materialized();
    if (depth > ts->ts->materialized()) throw InvalidArgument("depth exceeds the materialized levels");
    put(out, tsub_to_json(*ts->ts, depth));
    return GACT_OK;
  });
}

gact_status gact_tsub_res(const gact_task* task, int t, int depth, gact_tsub** out) {
  return guard([&] {
    need(task, "task");
    need(out, "out");
    *out = new gact_tsub{build_res_subdivision(task->task.input, t, depth)};
    return GACT_OK;
  });
}

gact_status gact_tsub_chr(const gact_task* task, int k, gact_tsub** out) {
  return guard([&] {
    need(task, "task");
    need(out, "out");
    auto ts = chr_terminated(task->task.input, k);
    ts->materialize(k);
    *out = new gact_tsub{ts};
    return GACT_OK;
  });
}

void gact_tsub_free(gact_tsub* ts) { delete ts; }

gact_status gact_delta_search(gact_tsub* ts, const gact_task* task, int depth, char** delta_json, char** certificate) {
  return guard([&] {
    need(ts, "subdivision");
    need(task, "task");
    const VertexTable& t = task->task.input.vertex_table();
    DeltaSearchResult res = delta_search(*ts->ts, task->task, depth);
    Json witnesses = Json::array();
    if (res.witness) {
      Json s = Json::array();
      for (VertexId v : *res.witness) s.push_back(t.name(v, t[v].natural_level));
      witnesses.push_back(Json{{"reason", res.reason}, {"simplex", s}});
    }
    put(certificate, make_certificate("gact", {{"task", canonical(task->task)}},
                                      res.ok ? "decision map found" : "no decision map: " + res.reason,
                                      Json{{"depth", depth}, {"nodes", res.nodes}}, witnesses));
    if (res.ok) put(delta_json, delta_to_json(res.delta, t, task->task.output.level()));
    return res.ok ? GACT_OK : GACT_NEGATIVE;
  });
}

gact_status gact_gact_verify(gact_tsub* ts, const gact_task* task, const char* delta_json, const char* model_json,
                             int depth, int period, int horizon, char** certificate) {
  return guard([&] {
    need(ts, "subdivision");
    need(task, "task");
    need(delta_json, "delta");
    VertexTable& t = task->task.input.vertex_table();
    if (ts->ts->table() != task->task.input.table())
      throw InvalidArgument("subdivision was not loaded against this task");
    DecisionMapGACT d = delta_from_json(parse_json(delta_json), t);
    ModelSpec m = model_or_wait_free(model_json);
    SolvabilityBounds b = make_bounds(depth, period, horizon);
    GactReport rep = gact_verify(*ts->ts, d, task->task, m, b);
    Json witnesses = Json::array();
    for (const auto& v : rep.b_violations) witnesses.push_back(Json{{"condition", "b"}, {"detail", v}});
    if (rep.admissibility.counterexample) {
      Json omega = Json::array();
      for (VertexId v : rep.admissibility.omega) omega.push_back(t.name(v, 0));
      witnesses.push_back(Json{{"condition", "a"},
                               {"run", run_to_json(*rep.admissibility.counterexample)},
                               {"omega", omega},
                               {"detail", "no stable carrier by the last simulated round"}});
    }
    std::string verdict = rep.ok ? "pass: (b) exhaustive over stable simplices up to level " +
                                       std::to_string(b.horizon) + "; (a) admissible up to bounds (" +
                                       bounds_text(b) + ")"
                                 : std::string("fail: ") + (rep.condition_b ? "" : "(b) violated ") +
                                       (rep.admissibility.ok ? "" : "(a) not admissible within bounds");
    Json bj = bounds_json(b, m);
    bj["runs_checked"] = rep.admissibility.runs_checked;
    bj["stable_simplices_checked"] = rep.stable_simplices_checked;
    bj["latest_admission_round"] = rep.admissibility.latest_round;
    put(certificate, make_certificate("gact",
                                      {{"task", canonical(task->task)},
                                       {"subdivision", tsub_to_json(*ts->ts, b.horizon).dump()},
                                       {"delta", delta_json}, {"model", model_to_json(m).dump()}},
                                      verdict, bj, witnesses));
    return rep.ok ? GACT_OK : GACT_NEGATIVE;
  });
}

gact_status gact_extract_protocol(gact_tsub* ts, const gact_task* task, const char* delta_json, int max_round,
                                  char** protocol_json) {
  return guard([&] {
    need(ts, "subdivision");
    need(task, "task");
    need(delta_json, "delta");
    VertexTable& t = task->task.input.vertex_table();
    DecisionMapGACT d = delta_from_json(parse_json(delta_json), t);
    auto p = protocol_from_gact(ts->ts, d);
    auto table = extract_protocol(*p, ts->ts->base(), max_round);
    put(protocol_json, protocol_to_json(*table, t, task->task.output.level()));
    return GACT_OK;
  });
}

gact_status gact_from_protocol(const gact_task* task, const char* protocol_json, const char* model_json, int depth,
                               int period, int horizon, char** tsub_json, char** delta_json) {
  return guard([&] {
    need(task, "task");
    need(protocol_json, "protocol");
    VertexTable& t = task->task.input.vertex_table();
    auto p = protocol_from_json(parse_json(protocol_json), t);
    ModelSpec m = model_or_wait_free(model_json);
    SolvabilityBounds b = make_bounds(depth, period, horizon);
    SubdivFromProtocol res = subdiv_from_protocol(*p, task->task, m, b);
    put(tsub_json, tsub_to_json(*res.subdivision, res.levels));
    put(delta_json, delta_to_json(res.delta, t, task->task.output.level()));
    return GACT_OK;
  });
}

gact_status gact_res_verify(int n, int t, int depth, int horizon, char** certificate, char** svg) {
  return guard([&] {
    if (n < 1 || n > 2) throw InvalidArgument("the resilient pipeline supports n = 1 or 2");
    if (horizon < depth) horizon = depth;
    TaskSpec task = lt_task(n, t);
    const VertexTable& tab = task.input.vertex_table();
    TSubPtr ts = build_res_subdivision(task.input, t, depth);
    SolvabilityBounds b = make_bounds(depth, 1, horizon);
    ModelSpec m = ModelSpec::resilient(t);
    DeltaSearchResult ds = delta_search(*ts, task, horizon);
    Json witnesses = Json::array();
    Json bj = bounds_json(b, m);
    bool ok = ds.ok;
    std::string verdict;
    if (!ds.ok) {
      Json s = Json::array();
      if (ds.witness)
        for (VertexId v : *ds.witness) s.push_back(tab.name(v, tab[v].natural_level));
      witnesses.push_back(Json{{"stage", "delta-search"}, {"reason", ds.reason}, {"simplex", s}});
      verdict = "fail: no decision map on the stable complex";
    } else {
      GactReport rep = gact_verify(*ts, ds.delta, task, m, b);
      auto proto = protocol_from_gact(ts, ds.delta);
      SolvabilityReport sr = check_protocol_solvability(*proto, task, m, b);
      ok = rep.ok && sr.ok;
      bj["runs_checked"] = rep.admissibility.runs_checked;
      bj["stable_simplices_checked"] = rep.stable_simplices_checked;
      bj["latest_admission_round"] = rep.admissibility.latest_round;
      bj["delta_search_nodes"] = ds.nodes;
      for (const auto& v : rep.b_violations) witnesses.push_back(Json{{"stage", "condition-b"}, {"detail", v}});
      if (rep.admissibility.counterexample)
        witnesses.push_back(Json{{"stage", "condition-a"}, {"run", run_to_json(*rep.admissibility.counterexample)}});
      if (sr.counterexample) witnesses.push_back(Json{{"stage", "protocol"}, {"detail", sr.counterexample->detail},
                                                      {"run", run_to_json(sr.counterexample->run)}});
      verdict = ok ? "pass: task solvable in the t-resilient model within bounds (" + bounds_text(b) + ")"
                   : "fail within bounds (" + bounds_text(b) + ")";
    }
    put(certificate, make_certificate("gact", {{"task", canonical(task)}}, verdict, bj, witnesses));
    if (svg && n == 2) {
      SvgStyle style;
      style.title = "stable regions and decision arrows";
      ChromaticComplex k = ts->stable_complex(std::min(depth, 4));
      for (const auto& top : k.maximal_simplices()) style.group[top] = ts->stable_since(top) - 2;
      if (ds.ok)
        for (const auto& [v, w] : ds.delta.delta)
          if (v != w && ts->stable_since({v}) <= std::min(depth, 4)) style.arrows.emplace_back(tab[v].coords, tab[w].coords);
      put(svg, export_svg(k, style));
    }
    return ok ? GACT_OK : GACT_NEGATIVE;
  });
}

}  // extern "C"
