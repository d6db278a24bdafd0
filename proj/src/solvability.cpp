#include "gact/solvability.hpp"

#include "gact/errors.hpp"
#include "gact/subdivision.hpp"

#include <algorithm>
#include <set>

namespace gact {

std::optional<VertexId> TableProtocol::decide(int round, VertexId view) const {
  auto it = entries.find({round, view});
  if (it == entries.end()) return std::nullopt;
  return it->second;
}

std::vector<ProcessOutcome> run_protocol(const Protocol& p, VertexTable& t, const RunSpec& r, const Simplex& omega,
                                         int rounds) {
  require_run(r);
  if (rounds < 0) throw InvalidArgument("negative round count");
  ViewTracker vt(t, r.processes, omega);
  std::vector<ProcessOutcome> out(static_cast<std::size_t>(r.processes));
  const ProcessSet part = r.round(1).set();
  auto observe = [&](int k, ProcessSet who) {
    for (int q : members(who)) {
      auto d = p.decide(k, vt.current()[static_cast<std::size_t>(q)]);
      if (!d) continue;
      ProcessOutcome& o = out[static_cast<std::size_t>(q)];
      if (!o.value) {
        o.value = d;
        o.decided_round = k;
      } else if (*o.value != *d && o.unstable_round < 0) {
        o.unstable_round = k;
      }
    }
  };
  observe(0, part & vt.participants());
  for (int k = 1; k <= rounds; ++k) {
    vt.step(r.round(k));
    observe(k, vt.participants());
  }
  return out;
}

namespace {

struct CheckState {
  ViewTracker vt;
  std::vector<int> dec_round;
  std::vector<VertexId> dec_val;
  ProcessSet part = 0;
  Simplex face;  // ω restricted to part(r)
  int fail_round = -1;
  int fail_condition = 0;
  std::string detail;
};

class Checker {
 public:
  Checker(const Protocol& p, const TaskSpec& task) : p_(p), task_(task), t_(task.input.vertex_table()) {}

  void observe(CheckState& st, int k, ProcessSet who) const {
    if (st.fail_round >= 0) return;
    for (int q : members(who)) {
      VertexId view = st.vt.current()[static_cast<std::size_t>(q)];
      auto d = p_.decide(k, view);
      if (!d) continue;
      auto qi = static_cast<std::size_t>(q);
      if (st.dec_round[qi] < 0) {
        if (t_[*d].color != q) {
          fail(st, k, 2, "process p" + std::to_string(q) + " outputs a vertex of color " + std::to_string(t_[*d].color));
          return;
        }
        st.dec_round[qi] = k;
        st.dec_val[qi] = *d;
      } else if (st.dec_val[qi] != *d) {
        fail(st, k, 1, "process p" + std::to_string(q) + " changes its output at round " + std::to_string(k));
        return;
      }
    }
    Simplex outs;
    for (std::size_t q = 0; q < st.dec_round.size(); ++q)
      if (st.dec_round[q] >= 0) outs.push_back(st.dec_val[q]);
    if (outs.empty()) return;
    outs = make_simplex(std::move(outs));
    if (!task_.image_contains(st.face, outs))
      fail(st, k, 2, "outputs so far do not form a simplex of Δ(ω ∩ part)");
  }

  static void fail(CheckState& st, int k, int cond, std::string why) {
    st.fail_round = k;
    st.fail_condition = cond;
    st.detail = std::move(why);
  }

 private:
  const Protocol& p_;
  const TaskSpec& task_;
  const VertexTable& t_;
};

}  // namespace

SolvabilityReport check_protocol_solvability(const Protocol& p, const TaskSpec& task, const ModelSpec& m,
                                             const SolvabilityBounds& bounds) {
  const int n = task.n();
  check_model(m, n);
  if (bounds.period < 1) throw InvalidArgument("solvability checks need a tail period of at least 1");
  if (bounds.horizon < bounds.depth) throw InvalidArgument("horizon must be at least the prefix depth");
  SolvabilityReport rep;
  rep.bounds = bounds;
  VertexTable& t = task.input.vertex_table();
  Checker checker(p, task);
  for (const auto& omega : task.input.maximal_simplices()) {
    ProcessSet colors = 0;
    for (VertexId v : omega) colors |= 1u << t[v].color;
    CheckState root{ViewTracker(t, n + 1, omega), std::vector<int>(static_cast<std::size_t>(n + 1), -1),
                    std::vector<VertexId>(static_cast<std::size_t>(n + 1), 0), 0, {}, -1, 0, {}};
    auto step = [&](const CheckState& st, const OrderedPartition& part, int k) {
      CheckState next = st;
      if (k == 1) {
        next.part = part.set();
        if (next.part & ~colors) {
          next.fail_round = -2;  // not a run on this input simplex
          return next;
        }
        for (VertexId v : omega)
          if (contains(next.part, t[v].color)) next.face.push_back(v);
        checker.observe(next, 0, next.part);
      }
      if (next.fail_round == -2) return next;
      next.vt.step(part);
      checker.observe(next, k, next.vt.participants());
      return next;
    };
    auto leaf = [&](const CheckState& st, const RunSpec& r) {
      if (rep.counterexample || st.fail_round == -2) return;
      if (bounds.depth == 0 && (r.tail[0].set() & ~colors)) return;
      if (!model_contains(m, r)) return;
      ++rep.runs_checked;
      auto report = [&](const CheckState& s) {
        rep.ok = false;
        rep.counterexample = Counterexample{r, omega, s.fail_round, s.fail_condition, s.detail};
      };
      if (st.fail_round >= 0) {
        report(st);
        return;
      }
      auto mark = t.mark();
      CheckState cur = st;
      if (bounds.depth == 0) {
        // no prefix round: seed round 0 from the tail's first round
        cur.part = r.round(1).set();
        for (VertexId v : omega)
          if (contains(cur.part, t[v].color)) cur.face.push_back(v);
        checker.observe(cur, 0, cur.part);
      }
      for (int k = bounds.depth + 1; k <= bounds.horizon && cur.fail_round < 0; ++k) {
        cur.vt.step(r.round(k));
        checker.observe(cur, k, cur.vt.participants());
      }
      if (cur.fail_round < 0) {
        for (int q : members(r.tail[0].set()))
          if (cur.dec_round[static_cast<std::size_t>(q)] < 0) {
            Checker::fail(cur, bounds.horizon, 1,
                          "process p" + std::to_string(q) + " takes infinitely many steps but has not output by round " +
                              std::to_string(bounds.horizon));
            break;
          }
      }
      if (cur.fail_round >= 0) report(cur);
      t.rollback(mark);
    };
    walk_runs(n, bounds.depth, bounds.period, root, step, leaf);
    if (rep.counterexample) break;
  }
  return rep;
}

ActResult act_search(const TaskSpec& task, int k_max) {
  if (k_max < 0) throw InvalidArgument("k_max must be nonnegative");
  if (!validate_task(task).empty()) throw InvalidArgument("task does not validate");
  ActResult res;
  const VertexTable& t = task.input.vertex_table();
  ChromaticComplex c = task.input;
  for (int k = 0; k <= k_max; ++k) {
    if (k > 0) c = chr(c);
    // variables in order of carrier dimension, then id
    std::vector<VertexId> order = c.vertices();
    std::stable_sort(order.begin(), order.end(), [&](VertexId a, VertexId b) {
      return t[a].base_carrier.size() < t[b].base_carrier.size();
    });
    std::map<VertexId, std::size_t> pos;
    for (std::size_t i = 0; i < order.size(); ++i) pos[order[i]] = i;
    std::vector<std::vector<VertexId>> domain(order.size());
    ActObstruction obs;
    obs.k = k;
    bool empty = false;
    for (std::size_t i = 0; i < order.size() && !empty; ++i) {
      VertexId v = order[i];
      ChromaticComplex img = task.image(t[v].base_carrier);
      for (VertexId w : img.vertices())
        if (t[w].color == t[v].color) domain[i].push_back(w);
      auto self = std::find(domain[i].begin(), domain[i].end(), v);
      if (self != domain[i].end()) std::rotate(domain[i].begin(), self, self + 1);
      if (domain[i].empty()) {
        empty = true;
        obs.reason = "delta-empty";
        obs.vertex = v;
        obs.carrier = t[v].base_carrier;
      }
    }
    if (empty) {
      res.failures.push_back(obs);
      continue;
    }
    // constraints: every simplex with at least two vertices, against Δ of its base carrier
    std::vector<Simplex> cons;
    std::vector<ChromaticComplex> cons_img;
    std::vector<std::vector<std::size_t>> by_var(order.size());
    for (const auto& s : c.simplices()) {
      if (s.size() < 2) continue;
      for (VertexId v : s) by_var[pos[v]].push_back(cons.size());
      cons.push_back(s);
      cons_img.push_back(task.image(base_carrier(t, s)));
    }
    std::vector<std::optional<VertexId>> value(order.size());
    std::uint64_t nodes = 0;
    // forward checking with an undo trail of pruned domain entries
    std::vector<std::vector<VertexId>> live = domain;
    std::vector<std::pair<std::size_t, VertexId>> trail;
    std::vector<std::size_t> trail_mark;
    std::vector<std::size_t> choice(order.size(), 0);
    auto consistent_prune = [&](std::size_t var) -> bool {
      for (std::size_t ci : by_var[var]) {
        const Simplex& s = cons[ci];
        Simplex img;
        std::vector<std::size_t> open;
        for (VertexId u : s) {
          std::size_t ui = pos[u];
          if (value[ui])
            img.push_back(*value[ui]);
          else
            open.push_back(ui);
        }
        Simplex base = make_simplex(img);
        if (base.size() != img.size() || !cons_img[ci].contains(base)) return false;
        for (std::size_t ui : open) {
          auto& dom = live[ui];
          for (std::size_t j = 0; j < dom.size();) {
            Simplex ext = base;
            ext.push_back(dom[j]);
            ext = make_simplex(std::move(ext));
            if (ext.size() != base.size() + 1 || !cons_img[ci].contains(ext)) {
              trail.emplace_back(ui, dom[j]);
              dom.erase(dom.begin() + static_cast<long>(j));
            } else {
              ++j;
            }
          }
          if (dom.empty()) return false;
        }
      }
      return true;
    };
    auto undo_to = [&](std::size_t mark) {
      while (trail.size() > mark) {
        auto [ui, w] = trail.back();
        trail.pop_back();
        // restore in original domain order
        auto& dom = live[ui];
        const auto& orig = domain[ui];
        auto at = std::find(orig.begin(), orig.end(), w) - orig.begin();
        auto ins = std::find_if(dom.begin(), dom.end(), [&](VertexId x) {
          return std::find(orig.begin(), orig.end(), x) - orig.begin() > at;
        });
        dom.insert(ins, w);
      }
    };
    std::size_t i = 0;
    bool found = false;
    std::vector<std::vector<VertexId>> tried_domain(order.size());
    while (true) {
      if (i == order.size()) {
        found = true;
        break;
      }
      if (choice[i] == 0) tried_domain[i] = live[i];
      bool advanced = false;
      while (choice[i] < tried_domain[i].size()) {
        VertexId w = tried_domain[i][choice[i]++];
        ++nodes;
        trail_mark.push_back(trail.size());
        value[i] = w;
        if (consistent_prune(i)) {
          advanced = true;
          break;
        }
        value[i].reset();
        undo_to(trail_mark.back());
        trail_mark.pop_back();
      }
      if (advanced) {
        ++i;
        continue;
      }
      choice[i] = 0;
      if (i == 0) break;
      --i;
      value[i].reset();
      undo_to(trail_mark.back());
      trail_mark.pop_back();
    }
    if (found) {
      res.found = true;
      res.map.k = k;
      for (std::size_t j = 0; j < order.size(); ++j) res.map.eta[order[j]] = *value[j];
      return res;
    }
    obs.reason = "search-exhausted";
    obs.nodes = nodes;
    res.failures.push_back(obs);
  }
  return res;
}

std::vector<std::string> act_verify(const DecisionMapACT& map, const TaskSpec& task) {
  std::vector<std::string> problems;
  const VertexTable& t = task.input.vertex_table();
  ChromaticComplex c = chr_iter(task.input, map.k);
  for (VertexId v : c.vertices()) {
    auto it = map.eta.find(v);
    if (it == map.eta.end()) {
      problems.push_back("map undefined on vertex " + t.name(v, map.k));
      continue;
    }
    if (t[it->second].color != t[v].color) problems.push_back("map is not chromatic at " + t.name(v, map.k));
  }
  if (!problems.empty()) return problems;
  for (const auto& s : c.simplices()) {
    Simplex img;
    for (VertexId v : s) img.push_back(map.eta.at(v));
    img = make_simplex(std::move(img));
    Simplex carrier = base_carrier(t, s);
    if (!task.output.contains(img)) {
      problems.push_back("image of a simplex is not a simplex of O");
    } else if (!task.image_contains(carrier, img)) {
      std::string sname;
      for (VertexId v : s) sname += (sname.empty() ? "" : ",") + t.name(v, map.k);
      problems.push_back("carrier violation: image of {" + sname + "} is not in Δ of its carrier");
    }
    if (problems.size() >= 20) break;
  }
  return problems;
}

std::shared_ptr<TableProtocol> protocol_from_map(const DecisionMapACT& map, const TaskSpec& task) {
  auto p = std::make_shared<TableProtocol>();
  ChromaticComplex c = chr_iter(task.input, map.k);
  for (VertexId v : c.vertices()) {
    auto it = map.eta.find(v);
    if (it == map.eta.end()) throw InvalidArgument("decision map is not defined on every vertex of Chr^k I");
    p->entries[{map.k, v}] = it->second;
  }
  return p;
}

DecisionMapACT compose_with_projection(const DecisionMapACT& map, const TaskSpec& task) {
  const VertexTable& t = task.input.vertex_table();
  ChromaticComplex c = chr_iter(task.input, map.k + 1);
  DecisionMapACT out;
  out.k = map.k + 1;
  for (VertexId v : c.vertices()) {
    VertexId below = t[v].natural_level == map.k + 1 ? t[v].own : v;
    out.eta[v] = map.eta.at(below);
  }
  return out;
}

}  // namespace gact
