#include "gact/json_io.hpp"

#include "gact/errors.hpp"

#include <algorithm>
#include <set>

namespace gact {

namespace {

[[noreturn]] void schema(const std::string& path, const std::string& what) { throw SchemaError(path + ": " + what); }

const Json& field(const Json& j, const char* key, const std::string& path) {
  if (!j.is_object()) schema(path, "expected an object");
  auto it = j.find(key);
  if (it == j.end()) schema(path, std::string("missing field '") + key + "'");
  return *it;
}

int get_int(const Json& j, const std::string& path) {
  if (!j.is_number_integer()) schema(path, "expected an integer");
  return j.get<int>();
}

const std::string& get_str(const Json& j, const std::string& path) {
  if (!j.is_string()) schema(path, "expected a string");
  return j.get_ref<const std::string&>();
}

const Json& get_array(const Json& j, const std::string& path) {
  if (!j.is_array()) schema(path, "expected an array");
  return j;
}

std::string idx(const std::string& path, std::size_t i) { return path + "[" + std::to_string(i) + "]"; }

std::string short_name(const VertexTable& t, VertexId v) { return t.name(v, t[v].natural_level); }

Json simplex_names(const VertexTable& t, const Simplex& s, int level) {
  std::vector<std::string> names;
  for (VertexId v : s) names.push_back(t.name(v, level));
  std::sort(names.begin(), names.end());
  return names;
}

Json simplex_list(const VertexTable& t, const std::vector<Simplex>& fam, int level) {
  std::vector<Json> out;
  for (const auto& s : fam) out.push_back(simplex_names(t, s, level));
  std::sort(out.begin(), out.end());
  return out;
}

VertexId lookup(const VertexTable& t, const Json& j, const std::string& path) {
  auto found = t.find_name(get_str(j, path));
  if (!found) schema(path, "unknown vertex '" + j.get<std::string>() + "'");
  return found->first;
}

VertexId intern_name(VertexTable& t, const Json& j, const std::string& path) {
  try {
    return t.parse_name(get_str(j, path)).first;
  } catch (const SchemaError&) {
    throw;
  } catch (const Error& e) {
    schema(path, e.what());
  }
}

Simplex read_simplex(const VertexTable& t, const Json& j, const std::string& path) {
  Simplex s;
  const Json& arr = get_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) s.push_back(lookup(t, arr[i], idx(path, i)));
  Simplex sorted = make_simplex(s);
  if (sorted.size() != s.size()) schema(path, "repeated vertex");
  return sorted;
}

Simplex intern_simplex(VertexTable& t, const Json& j, const std::string& path) {
  Simplex s;
  const Json& arr = get_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) s.push_back(intern_name(t, arr[i], idx(path, i)));
  Simplex sorted = make_simplex(s);
  if (sorted.size() != s.size()) schema(path, "repeated vertex");
  return sorted;
}

std::string process_name(int p) { return "p" + std::to_string(p); }

int parse_process(const Json& j, const std::string& path) {
  const std::string& s = get_str(j, path);
  if (s.size() < 2 || s[0] != 'p' || s.find_first_not_of("0123456789", 1) != std::string::npos || s.size() > 3)
    schema(path, "expected a process name like \"p0\"");
  int p = std::stoi(s.substr(1));
  if (p >= 32) schema(path, "process index out of range");
  return p;
}

Json set_to_json(ProcessSet s) {
  Json out = Json::array();
  for (int p : members(s)) out.push_back(process_name(p));
  return out;
}

ProcessSet set_from_json(const Json& j, const std::string& path) {
  ProcessSet s = 0;
  const Json& arr = get_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    int p = parse_process(arr[i], idx(path, i));
    if (contains(s, p)) schema(idx(path, i), "repeated process");
    s |= 1u << p;
  }
  return s;
}

Json partitions_to_json(const std::vector<OrderedPartition>& parts) {
  Json out = Json::array();
  for (const auto& part : parts) {
    Json blocks = Json::array();
    for (ProcessSet b : part.blocks) blocks.push_back(set_to_json(b));
    out.push_back(std::move(blocks));
  }
  return out;
}

std::vector<OrderedPartition> partitions_from_json(const Json& j, const std::string& path, int& max_process) {
  std::vector<OrderedPartition> out;
  const Json& arr = get_array(j, path);
  for (std::size_t i = 0; i < arr.size(); ++i) {
    OrderedPartition part;
    const Json& blocks = get_array(arr[i], idx(path, i));
    for (std::size_t b = 0; b < blocks.size(); ++b) {
      ProcessSet s = set_from_json(blocks[b], idx(idx(path, i), b));
      for (int p : members(s)) max_process = std::max(max_process, p);
      part.blocks.push_back(s);
    }
    out.push_back(std::move(part));
  }
  return out;
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw SchemaError(std::string("malformed JSON: ") + e.what());
  }
}

Json complex_to_json(const ChromaticComplex& c) {
  const VertexTable& t = c.vertex_table();
  auto vertex_json = [&](VertexId v, int level) {
    Json jv = {{"id", t.name(v, level)}, {"color", t[v].color}};
    if (t[v].has_coords) {
      Json coords = Json::array();
      for (const auto& x : t[v].coords) coords.push_back(format_rational(x));
      jv["coords"] = std::move(coords);
    }
    return jv;
  };
  auto by_id = [](const Json& a, const Json& b) { return a["id"] < b["id"]; };
  std::vector<Json> verts;
  std::set<VertexId> bases;
  for (VertexId v : c.vertices()) {
    verts.push_back(vertex_json(v, c.level()));
    for (VertexId b : t[v].base_carrier) bases.insert(b);
  }
  std::sort(verts.begin(), verts.end(), by_id);
  Json out{{"dimension", c.dimension()}, {"level", c.level()}};
  // Names of subdivided vertices refer to base vertices, which are listed so a fresh reader can resolve them.
  if (c.level() > 0) {
    std::vector<Json> base;
    for (VertexId b : bases) base.push_back(vertex_json(b, 0));
    std::sort(base.begin(), base.end(), by_id);
    out["base"] = base;
  }
  out["vertices"] = verts;
  out["simplices"] = simplex_list(t, c.simplices(), c.level());
  return out;
}

ChromaticComplex complex_from_json(const Json& j, TablePtr table) {
  if (!table) table = std::make_shared<VertexTable>();
  VertexTable& t = *table;
  const int dim = get_int(field(j, "dimension", "$"), "$.dimension");
  if (dim < 0 || dim > 30) schema("$.dimension", "out of range");
  int level = 0;
  if (j.contains("level")) level = get_int(j["level"], "$.level");
  if (level < 0) schema("$.level", "negative level");
  auto read_vertex = [&](const Json& jv, const std::string& path, bool only_base) {
    const std::string& name = get_str(field(jv, "id", path), path + ".id");
    const bool base = name.find('@') == std::string::npos;
    if (only_base && !base) schema(path + ".id", "expected a base vertex name");
    const int color = get_int(field(jv, "color", path), path + ".color");
    if (color < 0 || color > dim) schema(path + ".color", "color out of range");
    std::optional<Point> coords;
    if (jv.contains("coords")) {
      const Json& cj = get_array(jv["coords"], path + ".coords");
      Point p;
      for (std::size_t k = 0; k < cj.size(); ++k) {
        const std::string at = idx(path + ".coords", k);
        try {
          p.push_back(parse_rational(get_str(cj[k], at)));
        } catch (const SchemaError&) {
          throw;
        } catch (const Error& e) {
          schema(at, e.what());
        }
      }
      coords = std::move(p);
    }
    VertexId v;
    if (base) {
      auto existing = t.find_base(name);
      try {
        v = existing ? *existing : t.add_base(name, color, coords);
      } catch (const Error& e) {
        schema(path, e.what());
      }
    } else {
      v = intern_name(t, jv["id"], path + ".id");
    }
    if (t[v].color != color) schema(path + ".color", "color disagrees with the vertex name or an existing vertex");
    if (coords && t[v].has_coords && t[v].coords != *coords)
      schema(path + ".coords", "coordinates disagree with the computed position");
  };
  if (j.contains("base")) {
    const Json& base = get_array(j["base"], "$.base");
    for (std::size_t i = 0; i < base.size(); ++i) read_vertex(base[i], idx("$.base", i), true);
  }
  const Json& verts = get_array(field(j, "vertices", "$"), "$.vertices");
  // Base vertices first so that subdivided names can refer to them.
  for (int pass = 0; pass < 2; ++pass) {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      const std::string path = idx("$.vertices", i);
      const bool base = get_str(field(verts[i], "id", path), path + ".id").find('@') == std::string::npos;
      if (base == (pass == 0)) read_vertex(verts[i], path, false);
    }
  }
  const Json& simps = get_array(field(j, "simplices", "$"), "$.simplices");
  std::vector<Simplex> fam;
  for (std::size_t i = 0; i < simps.size(); ++i) fam.push_back(read_simplex(t, simps[i], idx("$.simplices", i)));
  return ChromaticComplex::raw(table, dim, level, std::move(fam));
}

Json run_to_json(const RunSpec& r) {
  return Json{{"processes", r.processes}, {"prefix", partitions_to_json(r.prefix)}, {"tail", partitions_to_json(r.tail)}};
}

RunSpec run_from_json(const Json& j) {
  RunSpec r;
  int max_p = -1;
  r.prefix = partitions_from_json(field(j, "prefix", "$"), "$.prefix", max_p);
  r.tail = partitions_from_json(field(j, "tail", "$"), "$.tail", max_p);
  r.processes = j.contains("processes") ? get_int(j["processes"], "$.processes") : max_p + 1;
  if (r.processes < 1 || r.processes > 32 || r.processes <= max_p) schema("$.processes", "out of range");
  return r;
}

Json model_to_json(const ModelSpec& m) {
  switch (m.kind) {
    case ModelSpec::Kind::WaitFree:
      return Json{{"kind", "wait-free"}};
    case ModelSpec::Kind::Resilient:
      return Json{{"kind", "resilient"}, {"t", m.t}};
    case ModelSpec::Kind::ObstructionFree:
      return Json{{"kind", "obstruction-free"}, {"k", m.k}};
    case ModelSpec::Kind::Adversary: {
      Json sets = Json::array();
      for (ProcessSet s : m.slow_sets) sets.push_back(set_to_json(s));
      return Json{{"kind", "adversary"}, {"slow_sets", sets}};
    }
    case ModelSpec::Kind::Custom:
      break;
  }
  throw InvalidArgument("custom models have no JSON form");
}

ModelSpec model_from_json(const Json& j) {
  const std::string& kind = get_str(field(j, "kind", "$"), "$.kind");
  if (kind == "wait-free") return ModelSpec::wait_free();
  if (kind == "resilient") return ModelSpec::resilient(get_int(field(j, "t", "$"), "$.t"));
  if (kind == "obstruction-free") return ModelSpec::obstruction_free(get_int(field(j, "k", "$"), "$.k"));
  if (kind == "adversary") {
    const Json& sets = get_array(field(j, "slow_sets", "$"), "$.slow_sets");
    std::vector<ProcessSet> out;
    for (std::size_t i = 0; i < sets.size(); ++i) out.push_back(set_from_json(sets[i], idx("$.slow_sets", i)));
    return ModelSpec::adversary(std::move(out));
  }
  schema("$.kind", "unknown model kind '" + kind + "'");
}

Json task_to_json(const TaskSpec& task) {
  const VertexTable& t = task.input.vertex_table();
  std::vector<Json> delta;
  for (const auto& [sigma, img] : task.delta) {
    delta.push_back(Json{{"simplex", simplex_names(t, sigma, task.input.level())},
                         {"image_top", simplex_list(t, img.maximal_simplices(), task.output.level())}});
  }
  std::sort(delta.begin(), delta.end(), [](const Json& a, const Json& b) { return a["simplex"] < b["simplex"]; });
  return Json{{"input", complex_to_json(task.input)}, {"output", complex_to_json(task.output)}, {"delta", delta}};
}

namespace {

template <class F>
auto nested(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const SchemaError& e) {
    throw SchemaError(path + std::string(e.what()).substr(1));
  }
}

}  // namespace

TaskSpec task_from_json(const Json& j) {
  TaskSpec task;
  task.input = nested("$.input", [&] { return complex_from_json(field(j, "input", "$")); });
  task.output = nested("$.output", [&] { return complex_from_json(field(j, "output", "$"), task.input.table()); });
  VertexTable& t = task.input.vertex_table();
  const Json& delta = get_array(field(j, "delta", "$"), "$.delta");
  for (std::size_t i = 0; i < delta.size(); ++i) {
    const std::string path = idx("$.delta", i);
    Simplex sigma = read_simplex(t, field(delta[i], "simplex", path), path + ".simplex");
    const Json& tops = get_array(field(delta[i], "image_top", path), path + ".image_top");
    std::vector<Simplex> fam;
    for (std::size_t k = 0; k < tops.size(); ++k) fam.push_back(read_simplex(t, tops[k], idx(path + ".image_top", k)));
    if (task.delta.count(sigma)) schema(path + ".simplex", "repeated input simplex");
    task.delta.emplace(sigma, ChromaticComplex::closure_of(task.output.table(), task.output.dimension(),
                                                           task.output.level(), fam));
  }
  return task;
}

Json protocol_to_json(const TableProtocol& p, const VertexTable& t, int output_level) {
  std::vector<Json> out;
  for (const auto& [key, w] : p.entries)
    out.push_back(Json{{"round", key.first},
                       {"view_vertex_id", short_name(t, key.second)},
                       {"output_vertex_id", t.name(w, output_level)}});
  std::sort(out.begin(), out.end(), [](const Json& a, const Json& b) {
    return std::tie(a["round"], a["view_vertex_id"]) < std::tie(b["round"], b["view_vertex_id"]);
  });
  return out;
}

std::shared_ptr<TableProtocol> protocol_from_json(const Json& j, VertexTable& t) {
  auto p = std::make_shared<TableProtocol>();
  const Json& arr = get_array(j, "$");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = idx("$", i);
    int round = get_int(field(arr[i], "round", path), path + ".round");
    if (round < 0) schema(path + ".round", "negative round");
    VertexId v = intern_name(t, field(arr[i], "view_vertex_id", path), path + ".view_vertex_id");
    VertexId w = lookup(t, field(arr[i], "output_vertex_id", path), path + ".output_vertex_id");
    if (!p->entries.emplace(std::make_pair(round, v), w).second) schema(path, "repeated view");
  }
  return p;
}

Json act_map_to_json(const DecisionMapACT& m, const VertexTable& t, int output_level) {
  std::vector<Json> out;
  for (const auto& [v, w] : m.eta)
    out.push_back(Json{{"view_vertex_id", short_name(t, v)}, {"output_vertex_id", t.name(w, output_level)}});
  std::sort(out.begin(), out.end(), [](const Json& a, const Json& b) { return a["view_vertex_id"] < b["view_vertex_id"]; });
  return Json{{"k", m.k}, {"map", out}};
}

DecisionMapACT act_map_from_json(const Json& j, VertexTable& t) {
  DecisionMapACT m;
  m.k = get_int(field(j, "k", "$"), "$.k");
  if (m.k < 0) schema("$.k", "negative subdivision depth");
  const Json& arr = get_array(field(j, "map", "$"), "$.map");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = idx("$.map", i);
    VertexId v = intern_name(t, field(arr[i], "view_vertex_id", path), path + ".view_vertex_id");
    VertexId w = lookup(t, field(arr[i], "output_vertex_id", path), path + ".output_vertex_id");
    if (!m.eta.emplace(v, w).second) schema(path, "repeated vertex");
  }
  return m;
}

Json tsub_to_json(const TerminatingSubdivision& ts, int depth) {
  const VertexTable& t = *ts.table();
  Json levels = Json::array();
  for (int k = 0; k <= depth; ++k) {
    auto fresh = ts.newly_stable(k);
    std::vector<Simplex> tops;
    // Only maximal new simplices; faces follow by closure.
    for (const auto& s : fresh) {
      bool maximal = true;
      for (const auto& o : fresh)
        if (o.size() > s.size() && is_face(s, o)) {
          maximal = false;
          break;
        }
      if (maximal) tops.push_back(s);
    }
    if (tops.empty()) continue;
    levels.push_back(Json{{"k", k}, {"stable_simplices", simplex_list(t, tops, k)}});
  }
  return Json{{"base", complex_to_json(ts.base())}, {"levels", levels}, {"materialized", depth}};
}

TSubPtr tsub_from_json(const Json& j, TablePtr table) {
  ChromaticComplex base = nested("$.base", [&] { return complex_from_json(field(j, "base", "$"), table); });
  VertexTable& t = base.vertex_table();
  std::map<int, std::vector<Simplex>> schedule;
  const Json& levels = get_array(field(j, "levels", "$"), "$.levels");
  int depth = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    const std::string path = idx("$.levels", i);
    int k = get_int(field(levels[i], "k", path), path + ".k");
    if (k < 0 || k > 16) schema(path + ".k", "level out of range");
    const Json& simps = get_array(field(levels[i], "stable_simplices", path), path + ".stable_simplices");
    for (std::size_t s = 0; s < simps.size(); ++s)
      schedule[k].push_back(intern_simplex(t, simps[s], idx(path + ".stable_simplices", s)));
    depth = std::max(depth, k);
  }
  if (j.contains("materialized")) depth = std::max(depth, get_int(j["materialized"], "$.materialized"));
  try {
    auto ts = explicit_subdivision(base, std::move(schedule));
    ts->materialize(depth);
    return ts;
  } catch (const InvalidArgument& e) {
    schema("$.levels", e.what());
  }
}

Json delta_to_json(const DecisionMapGACT& d, const VertexTable& t, int output_level) {
  std::vector<Json> out;
  for (const auto& [v, w] : d.delta)
    out.push_back(Json{{"vertex", short_name(t, v)}, {"output", t.name(w, output_level)}});
  std::sort(out.begin(), out.end(), [](const Json& a, const Json& b) { return a["vertex"] < b["vertex"]; });
  return out;
}

DecisionMapGACT delta_from_json(const Json& j, VertexTable& t) {
  DecisionMapGACT d;
  const Json& arr = get_array(j, "$");
  for (std::size_t i = 0; i < arr.size(); ++i) {
    const std::string path = idx("$", i);
    VertexId v = intern_name(t, field(arr[i], "vertex", path), path + ".vertex");
    VertexId w = lookup(t, field(arr[i], "output", path), path + ".output");
    if (!d.delta.emplace(v, w).second) schema(path, "repeated vertex");
  }
  return d;
}

}  // namespace gact
