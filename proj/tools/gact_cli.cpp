// gact: command-line front end over the C interface.
// Exit status: 0 success or pass, 1 verified negative, 2 usage, schema or operational error.

#include "gact/gact.h"

#include <CLI11.hpp>

#include <algorithm>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>

namespace {

struct CliError {
  std::string message;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError{"cannot read " + path};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw CliError{"cannot write " + path};
  out << text;
}

// Owned C string.
struct Str {
  char* p = nullptr;
  ~Str() { gact_string_free(p); }
  std::string get() const { return p ? p : ""; }
};

int check(gact_status s) {
  if (s == GACT_OK || s == GACT_NEGATIVE) return s;
  throw CliError{gact_last_error()};
}

template <class T, void (*Free)(T*)>
struct Handle {
  T* p = nullptr;
  ~Handle() { Free(p); }
};
using Complex = Handle<gact_complex, gact_complex_free>;
using Task = Handle<gact_task, gact_task_free>;
using Tsub = Handle<gact_tsub, gact_tsub_free>;

void load_task(const std::string& path, Task& task) { check(gact_task_from_json(slurp(path).c_str(), &task.p)); }

std::string optional_file(const std::string& path) { return path.empty() ? std::string() : slurp(path); }

const char* or_null(const std::string& s) { return s.empty() ? nullptr : s.c_str(); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Chromatic subdivisions, IIS runs and task solvability checks"};
  app.require_subcommand(1);
  int result = 0;

  // subdivide
  auto* sub = app.add_subcommand("subdivide", "Iterated chromatic or barycentric subdivision");
  int sub_n = 2, sub_m = 1;
  std::string sub_kind = "chr", sub_input, sub_out, sub_stats, sub_svg;
  sub->add_option("--n", sub_n, "Dimension of the standard simplex")->check(CLI::Range(0, 8));
  sub->add_option("--input", sub_input, "Complex JSON to subdivide instead of the standard simplex");
  sub->add_option("--kind", sub_kind, "chr or bary")->check(CLI::IsMember({"chr", "bary"}));
  sub->add_option("--m", sub_m, "Number of iterations")->check(CLI::NonNegativeNumber);
  sub->add_option("--out", sub_out, "Output complex JSON (stdout when omitted)");
  sub->add_option("--stats", sub_stats, "Write counts and volume JSON here");
  sub->add_option("--svg", sub_svg, "Write an SVG drawing here");
  sub->callback([&] {
    Complex base, out;
    if (sub_input.empty())
      check(gact_complex_standard(sub_n, &base.p));
    else
      check(gact_complex_from_json(slurp(sub_input).c_str(), &base.p));
    check(gact_complex_subdivide(base.p, sub_kind.c_str(), sub_m, &out.p));
    Str json;
    check(gact_complex_to_json(out.p, &json.p));
    emit(sub_out, json.get());
    if (!sub_stats.empty()) {
      Str stats;
      check(gact_complex_stats(out.p, &stats.p));
      emit(sub_stats, stats.get());
    }
    if (!sub_svg.empty()) {
      Str svg;
      check(gact_complex_svg(out.p, &svg.p));
      emit(sub_svg, svg.get());
    }
  });

  // enumerate-runs
  auto* en = app.add_subcommand("enumerate-runs", "Eventually periodic runs with bounded prefix and period");
  int en_n = 2, en_depth = 1, en_period = 1;
  bool en_count = false;
  std::string en_model, en_out;
  en->add_option("--n", en_n)->check(CLI::Range(0, 8));
  en->add_option("--depth", en_depth)->check(CLI::NonNegativeNumber);
  en->add_option("--period", en_period)->check(CLI::NonNegativeNumber);
  en->add_option("--model", en_model, "Model JSON; wait-free when omitted");
  en->add_flag("--count-only", en_count, "Print only the number of runs");
  en->add_option("--out", en_out);
  en->callback([&] {
    if (en_count && en_model.empty()) {
      uint64_t count = 0;
      check(gact_count_runs(en_n, en_depth, en_period, &count));
      emit(en_out, std::to_string(count) + "\n");
      return;
    }
    std::string model = optional_file(en_model);
    Str json;
    check(gact_enumerate_runs(en_n, en_depth, en_period, or_null(model), &json.p));
    if (en_count) {
      std::string text = json.get();
      auto pos = text.find("\"count\":");
      auto end = text.find_first_of(",\n", pos);
      emit(en_out, text.substr(pos + 9, end - pos - 9) + "\n");
    } else {
      emit(en_out, json.get());
    }
  });

  // task
  auto* task = app.add_subcommand("task", "Build or validate tasks");
  task->require_subcommand(1);
  auto* tb = task->add_subcommand("build", "Build a standard task");
  std::string tb_kind = "identity", tb_out, tb_svg;
  int tb_n = 2, tb_t = 0;
  tb->add_option("--kind", tb_kind)->check(CLI::IsMember({"identity", "lord", "lt"}));
  tb->add_option("--n", tb_n)->check(CLI::Range(0, 3));
  tb->add_option("--t", tb_t)->check(CLI::NonNegativeNumber);
  tb->add_option("--out", tb_out);
  tb->add_option("--svg", tb_svg, "Draw the output complex");
  tb->callback([&] {
    Task t;
    check(gact_task_build(tb_kind.c_str(), tb_n, tb_t, &t.p));
    Str json;
    check(gact_task_to_json(t.p, &json.p));
    emit(tb_out, json.get());
    if (!tb_svg.empty()) {
      Str svg;
      check(gact_task_output_svg(t.p, &svg.p));
      emit(tb_svg, svg.get());
    }
  });
  auto* tv = task->add_subcommand("validate", "Check a task file");
  std::string tv_file;
  tv->add_option("--task", tv_file, "Task JSON")->required();
  tv->callback([&] {
    Task t;
    load_task(tv_file, t);
    Str report;
    result = check(gact_task_validate(t.p, &report.p));
    emit("", report.get());
  });

  // act
  auto* act = app.add_subcommand("act", "Decision maps on iterated chromatic subdivisions");
  act->require_subcommand(1);
  auto* as = act->add_subcommand("search", "Smallest k with a decision map");
  std::string as_task, as_out, as_cert;
  int as_kmax = 2;
  as->add_option("--task", as_task)->required();
  as->add_option("--kmax", as_kmax)->check(CLI::NonNegativeNumber);
  as->add_option("--out", as_out, "Decision map JSON");
  as->add_option("--cert", as_cert, "Certificate JSON (stdout when omitted)");
  as->callback([&] {
    Task t;
    load_task(as_task, t);
    Str map, cert;
    result = check(gact_act_search(t.p, as_kmax, &map.p, &cert.p));
    if (result == 0 && !as_out.empty()) emit(as_out, map.get());
    emit(as_cert, cert.get());
  });
  auto* av = act->add_subcommand("verify", "Check a decision map");
  std::string av_task, av_map, av_cert;
  av->add_option("--task", av_task)->required();
  av->add_option("--map", av_map)->required();
  av->add_option("--cert", av_cert);
  av->callback([&] {
    Task t;
    load_task(av_task, t);
    Str cert;
    result = check(gact_act_verify(t.p, slurp(av_map).c_str(), &cert.p));
    emit(av_cert, cert.get());
  });
  auto* ap = act->add_subcommand("protocol", "Decision table of the protocol induced by a map");
  std::string ap_task, ap_map, ap_out;
  ap->add_option("--task", ap_task)->required();
  ap->add_option("--map", ap_map)->required();
  ap->add_option("--out", ap_out);
  ap->callback([&] {
    Task t;
    load_task(ap_task, t);
    Str proto;
    check(gact_act_protocol(t.p, slurp(ap_map).c_str(), &proto.p));
    emit(ap_out, proto.get());
  });

  // solve check
  auto* solve = app.add_subcommand("solve", "Bounded solvability checks");
  solve->require_subcommand(1);
  auto* sc = solve->add_subcommand("check", "Run a decision table on every enumerated run");
  std::string sc_task, sc_model, sc_proto, sc_cert;
  int sc_depth = 1, sc_period = 1, sc_horizon = -1;
  sc->add_option("--task", sc_task)->required();
  sc->add_option("--model", sc_model, "Model JSON; wait-free when omitted");
  sc->add_option("--protocol", sc_proto)->required();
  sc->add_option("--depth", sc_depth)->check(CLI::NonNegativeNumber);
  sc->add_option("--period", sc_period)->check(CLI::PositiveNumber);
  sc->add_option("--horizon", sc_horizon, "Last simulated round (default: depth)");
  sc->add_option("--cert", sc_cert);
  sc->callback([&] {
    Task t;
    load_task(sc_task, t);
    std::string model = optional_file(sc_model);
    Str cert;
    result = check(gact_solve_check(t.p, or_null(model), slurp(sc_proto).c_str(), sc_depth, sc_period, sc_horizon,
                                    &cert.p));
    emit(sc_cert, cert.get());
  });

  // gact
  auto* gact = app.add_subcommand("gact", "Terminating subdivisions and decision maps");
  gact->require_subcommand(1);
  std::string g_task, g_tsub, g_delta, g_model, g_cert, g_out, g_proto, g_tsub_out, g_delta_out;
  int g_depth = 2, g_period = 1, g_horizon = -1, g_rounds = 2;
  auto* gv = gact->add_subcommand("verify", "Check admissibility and the carrier condition");
  gv->add_option("--task", g_task)->required();
  gv->add_option("--tsub", g_tsub)->required();
  gv->add_option("--delta", g_delta)->required();
  gv->add_option("--model", g_model);
  gv->add_option("--depth", g_depth)->check(CLI::NonNegativeNumber);
  gv->add_option("--period", g_period)->check(CLI::PositiveNumber);
  gv->add_option("--horizon", g_horizon);
  gv->add_option("--cert", g_cert);
  gv->callback([&] {
    Task t;
    Tsub ts;
    load_task(g_task, t);
    check(gact_tsub_from_json(slurp(g_tsub).c_str(), t.p, &ts.p));
    std::string model = optional_file(g_model);
    Str cert;
    result = check(gact_gact_verify(ts.p, t.p, slurp(g_delta).c_str(), or_null(model), g_depth, g_period, g_horizon,
                                    &cert.p));
    emit(g_cert, cert.get());
  });
  auto* ge = gact->add_subcommand("extract-protocol", "Decision table induced by a subdivision and δ");
  ge->add_option("--task", g_task)->required();
  ge->add_option("--tsub", g_tsub)->required();
  ge->add_option("--delta", g_delta)->required();
  ge->add_option("--rounds", g_rounds)->check(CLI::NonNegativeNumber);
  ge->add_option("--out", g_out);
  ge->callback([&] {
    Task t;
    Tsub ts;
    load_task(g_task, t);
    check(gact_tsub_from_json(slurp(g_tsub).c_str(), t.p, &ts.p));
    Str proto;
    check(gact_extract_protocol(ts.p, t.p, slurp(g_delta).c_str(), g_rounds, &proto.p));
    emit(g_out, proto.get());
  });
  auto* gf = gact->add_subcommand("from-protocol", "Terminating subdivision read off a decision table");
  gf->add_option("--task", g_task)->required();
  gf->add_option("--protocol", g_proto)->required();
  gf->add_option("--model", g_model);
  gf->add_option("--depth", g_depth)->check(CLI::NonNegativeNumber);
  gf->add_option("--period", g_period)->check(CLI::PositiveNumber);
  gf->add_option("--horizon", g_horizon);
  gf->add_option("--tsub-out", g_tsub_out);
  gf->add_option("--delta-out", g_delta_out);
  gf->callback([&] {
    Task t;
    load_task(g_task, t);
    std::string model = optional_file(g_model);
    Str tsub, delta;
    check(gact_from_protocol(t.p, slurp(g_proto).c_str(), or_null(model), g_depth, g_period, g_horizon, &tsub.p,
                             &delta.p));
    emit(g_tsub_out, tsub.get());
    if (!g_delta_out.empty()) emit(g_delta_out, delta.get());
  });

  // res-example
  auto* res = app.add_subcommand("res-example", "The t-resilient construction");
  res->require_subcommand(1);
  int r_n = 2, r_t = 1, r_depth = 4, r_horizon = -1;
  std::string r_task_out, r_tsub_out, r_delta_out, r_cert, r_svg;
  auto* rb = res->add_subcommand("build", "Materialize the subdivision and search δ");
  rb->add_option("--n", r_n)->check(CLI::Range(1, 2));
  rb->add_option("--t", r_t)->check(CLI::NonNegativeNumber);
  rb->add_option("--depth", r_depth)->check(CLI::Range(2, 8));
  rb->add_option("--horizon", r_horizon, "Levels materialized for δ (default: depth + 2)");
  rb->add_option("--task-out", r_task_out);
  rb->add_option("--tsub-out", r_tsub_out);
  rb->add_option("--delta-out", r_delta_out);
  rb->callback([&] {
    Task t;
    Tsub ts;
    check(gact_task_build("lt", r_n, r_t, &t.p));
    const int horizon = r_horizon < 0 ? r_depth + 2 : std::max(r_horizon, r_depth);
    check(gact_tsub_res(t.p, r_t, horizon, &ts.p));
    Str task_json, tsub_json, delta, cert;
    check(gact_task_to_json(t.p, &task_json.p));
    check(gact_tsub_to_json(ts.p, horizon, &tsub_json.p));
    if (!r_task_out.empty()) emit(r_task_out, task_json.get());
    emit(r_tsub_out, tsub_json.get());
    if (!r_delta_out.empty()) {
      result = check(gact_delta_search(ts.p, t.p, horizon, &delta.p, &cert.p));
      emit(r_delta_out, result == 0 ? delta.get() : cert.get());
    }
  });
  auto* rv = res->add_subcommand("verify", "Full pipeline with certificate");
  rv->add_option("--n", r_n)->check(CLI::Range(1, 2));
  rv->add_option("--t", r_t)->check(CLI::NonNegativeNumber);
  rv->add_option("--depth", r_depth)->check(CLI::Range(2, 8));
  rv->add_option("--horizon", r_horizon, "Last simulated round (default: depth + 2)");
  rv->add_option("--cert", r_cert);
  rv->add_option("--svg", r_svg);
  rv->callback([&] {
    Str cert, svg;
    int horizon = r_horizon < 0 ? r_depth + 2 : r_horizon;
    result = check(gact_res_verify(r_n, r_t, r_depth, horizon, &cert.p, r_svg.empty() ? nullptr : &svg.p));
    emit(r_cert, cert.get());
    if (!r_svg.empty()) emit(r_svg, svg.get());
  });

  // export
  auto* ex = app.add_subcommand("export", "Draw a complex or a task output as SVG");
  std::string ex_complex, ex_task, ex_out;
  ex->add_option("--complex", ex_complex);
  ex->add_option("--task", ex_task);
  ex->add_option("--out", ex_out);
  ex->callback([&] {
    if (ex_complex.empty() == ex_task.empty()) throw CliError{"give exactly one of --complex or --task"};
    Str svg;
    if (!ex_complex.empty()) {
      Complex c;
      check(gact_complex_from_json(slurp(ex_complex).c_str(), &c.p));
      check(gact_complex_svg(c.p, &svg.p));
    } else {
      Task t;
      load_task(ex_task, t);
      check(gact_task_output_svg(t.p, &svg.p));
    }
    emit(ex_out, svg.get());
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  } catch (const CliError& e) {
    std::cerr << "gact: " << e.message << "\n";
    return 2;
  }
  return result;
}
