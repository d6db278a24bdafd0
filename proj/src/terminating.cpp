#include "gact/terminating.hpp"

#include "gact/errors.hpp"
#include "gact/geometry.hpp"
#include "gact/subdivision.hpp"

#include <algorithm>
#include <set>

namespace gact {

std::vector<int> SubdivisionLevel::tops_containing(const Simplex& s) const {
  std::vector<int> out;
  if (s.empty()) return out;
  auto it = tops_of_vertex.find(s[0]);
  if (it == tops_of_vertex.end()) return out;
  for (int i : it->second)
    if (is_face(s, tops[static_cast<std::size_t>(i)])) out.push_back(i);
  return out;
}

namespace {

// Images of one maximal simplex under a partial chromatic subdivision step.
std::vector<Simplex> subdivide_top(VertexTable& t, const Simplex& top, bool top_stable,
                                   const std::function<bool(const Simplex&)>& stable) {
  if (top_stable) return {top};
  const int k = static_cast<int>(top.size());
  std::set<Simplex> images;
  for (const auto& blocks : ordered_partitions(k)) {
    Simplex img;
    for (int i = 0; i < k; ++i) {
      Simplex face;
      for (int j = 0; j < k; ++j)
        if (blocks[static_cast<std::size_t>(j)] <= blocks[static_cast<std::size_t>(i)])
          face.push_back(top[static_cast<std::size_t>(j)]);
      VertexId own = top[static_cast<std::size_t>(i)];
      if (face.size() == 1 || stable(face))
        img.push_back(own);
      else
        img.push_back(t.intern(t[own].color, face));
    }
    images.insert(make_simplex(std::move(img)));
  }
  return {images.begin(), images.end()};
}

void index_level(SubdivisionLevel& lvl) {
  lvl.tops_of_vertex.clear();
  for (std::size_t i = 0; i < lvl.tops.size(); ++i)
    for (VertexId v : lvl.tops[i]) lvl.tops_of_vertex[v].push_back(static_cast<int>(i));
}

bool has_all_coords(const ChromaticComplex& c) {
  const VertexTable& t = c.vertex_table();
  for (VertexId v : c.vertices())
    if (!t[v].has_coords) return false;
  return true;
}

}  // namespace

ChromaticComplex partial_chr_step(const ChromaticComplex& c, const std::vector<Simplex>& stable_in,
                                  std::vector<std::vector<Simplex>>* children) {
  std::set<Simplex> stable;
  for (const auto& s : stable_in) stable.insert(make_simplex(s));
  for (const auto& s : stable) {
    if (!c.contains(s)) throw InvalidArgument("stable simplex is not a simplex of the complex");
    for (const auto& f : faces_of(s))
      if (!stable.count(f)) throw InvalidArgument("stable set is not closed under faces");
  }
  auto is_stable = [&](const Simplex& s) { return stable.count(s) > 0; };
  std::vector<Simplex> all;
  if (children) children->clear();
  for (const auto& top : c.maximal_simplices()) {
    auto imgs = subdivide_top(c.vertex_table(), top, is_stable(top), is_stable);
    all.insert(all.end(), imgs.begin(), imgs.end());
    if (children) children->push_back(std::move(imgs));
  }
  return ChromaticComplex::closure_of(c.table(), c.dimension(), c.level() + 1, all);
}

GeometryReport check_subdivision_of_base(const ChromaticComplex& c, const ChromaticComplex& base) {
  GeometryReport total;
  total.total_volume = 0;
  const VertexTable& t = c.vertex_table();
  auto tops = c.maximal_simplices();
  for (const auto& omega : base.maximal_simplices()) {
    std::vector<int> support = support_of(barycenter(t, omega));
    if (support.size() != omega.size()) {
      total.ok = false;
      total.problems.push_back("base simplex is degenerate in coordinates");
      continue;
    }
    std::vector<Simplex> mine;
    for (const auto& top : tops)
      if (is_face(base_carrier(t, top), omega)) mine.push_back(top);
    auto sub = ChromaticComplex::closure_of(c.table(), c.dimension(), c.level(), mine);
    GeometryReport rep = check_subdivision_geometry(sub, support);
    if (abs(normalized_volume(t, omega, support)) != 1) {
      rep.ok = false;
      rep.problems.push_back("base simplex does not map onto a face of the standard simplex");
    }
    total.ok = total.ok && rep.ok;
    total.problems.insert(total.problems.end(), rep.problems.begin(), rep.problems.end());
    total.total_volume += rep.total_volume;
    total.top_simplices += rep.top_simplices;
  }
  return total;
}

TerminatingSubdivision::TerminatingSubdivision(ChromaticComplex base, Schedule schedule, bool validate_geometry)
    : schedule_(std::move(schedule)), validate_(validate_geometry) {
  if (!schedule_) throw InvalidArgument("terminating subdivision needs a schedule");
  auto problems = validate_complex(base);
  if (!problems.empty()) throw InvalidArgument("base complex is invalid: " + problems.front());
  SubdivisionLevel lvl;
  lvl.k = 0;
  base.set_level(0);
  lvl.complex = base;
  lvl.tops = base.maximal_simplices();
  lvl.parent.assign(lvl.tops.size(), -1);
  lvl.children.assign(lvl.tops.size(), {});
  index_level(lvl);
  levels_.push_back(std::move(lvl));
  set_stable(0);
}

void TerminatingSubdivision::set_stable(int k) {
  SubdivisionLevel& lvl = levels_.at(static_cast<std::size_t>(k));
  if (static_cast<int>(new_stable_.size()) <= k) new_stable_.resize(static_cast<std::size_t>(k + 1));
  for (auto s : schedule_(lvl)) {
    s = make_simplex(std::move(s));
    if (s.empty()) continue;
    if (!lvl.complex.contains(s))
      throw InvalidArgument("schedule names a simplex that is not in C_" + std::to_string(k));
    for (const auto& f : faces_of(s)) {
      if (since_.emplace(f, k).second) new_stable_[static_cast<std::size_t>(k)].push_back(f);
    }
  }
  std::sort(new_stable_[static_cast<std::size_t>(k)].begin(), new_stable_[static_cast<std::size_t>(k)].end());
  lvl.top_stable.assign(lvl.tops.size(), false);
  for (std::size_t i = 0; i < lvl.tops.size(); ++i) lvl.top_stable[i] = is_stable(lvl.tops[i], k);
}

void TerminatingSubdivision::build_next() {
  SubdivisionLevel& cur = levels_.back();
  const int k = cur.k;
  VertexTable& t = cur.complex.vertex_table();
  auto stable = [&](const Simplex& s) { return is_stable(s, k); };
  SubdivisionLevel next;
  next.k = k + 1;
  cur.children.assign(cur.tops.size(), {});
  for (std::size_t i = 0; i < cur.tops.size(); ++i) {
    for (auto& img : subdivide_top(t, cur.tops[i], cur.top_stable[i], stable)) {
      cur.children[i].push_back(static_cast<int>(next.tops.size()));
      next.parent.push_back(static_cast<int>(i));
      next.tops.push_back(std::move(img));
    }
  }
  next.children.assign(next.tops.size(), {});
  next.complex = ChromaticComplex::closure_of(cur.complex.table(), cur.complex.dimension(), k + 1, next.tops);
  index_level(next);
  if (validate_ && has_all_coords(next.complex)) {
    GeometryReport rep = check_subdivision_of_base(next.complex, levels_.front().complex);
    if (!rep.ok)
      throw InvalidArgument("level " + std::to_string(k + 1) + " is not a subdivision: " +
                            (rep.problems.empty() ? std::string("?") : rep.problems.front()));
  }
  levels_.push_back(std::move(next));
  set_stable(k + 1);
}

void TerminatingSubdivision::materialize(int depth) {
  if (depth < 0) throw InvalidArgument("negative materialization depth");
  if (depth > 16) throw BudgetExceeded("materialization beyond level 16");
  while (materialized() < depth) build_next();
}

const SubdivisionLevel& TerminatingSubdivision::level(int k) const {
  if (k < 0 || k > materialized()) throw InvalidArgument("level " + std::to_string(k) + " is not materialized");
  return levels_[static_cast<std::size_t>(k)];
}

bool TerminatingSubdivision::is_stable(const Simplex& s, int k) const {
  auto it = since_.find(s);
  return it != since_.end() && it->second <= k;
}

int TerminatingSubdivision::stable_since(const Simplex& s) const {
  auto it = since_.find(s);
  return it == since_.end() ? -1 : it->second;
}

std::vector<Simplex> TerminatingSubdivision::newly_stable(int k) const {
  if (k < 0 || k >= static_cast<int>(new_stable_.size())) return {};
  return new_stable_[static_cast<std::size_t>(k)];
}

ChromaticComplex TerminatingSubdivision::stable_complex(int depth) const {
  std::vector<Simplex> fam;
  for (const auto& [s, k] : since_)
    if (k <= depth) fam.push_back(s);
  return ChromaticComplex::raw(table(), base().dimension(), depth, std::move(fam));
}

TerminatingSubdivision::Location TerminatingSubdivision::locate_view(VertexId v, int k) {
  VertexTable& t = *table();
  if (k > materialized()) materialize(k);
  if (cache_.size() <= v) cache_.resize(std::max<std::size_t>(t.size(), static_cast<std::size_t>(v) + 1));
  {
    CacheEntry& e = cache_[v];
    if (e.serial == t[v].serial) {
      for (const auto& [lvl, loc] : e.by_level)
        if (lvl == k) return loc;
    } else {
      e.serial = t[v].serial;
      e.by_level.clear();
    }
  }
  Location loc;
  const SubdivisionLevel& L = level(k);
  if (k == 0) {
    if (t[v].natural_level != 0) throw InvalidArgument("vertex is not a round-0 view");
    auto tops = L.tops_containing({v});
    if (tops.empty()) throw InvalidArgument("input vertex is not in the base complex");
    loc.top = tops.front();
    loc.face = {v};
  } else {
    Simplex hull;
    for (VertexId u : t.carrier_at(v, k)) hull = simplex_union(hull, locate_view(u, k - 1).face);
    const SubdivisionLevel& prev = level(k - 1);
    auto parents = prev.tops_containing(hull);
    if (parents.empty()) throw InternalError("carrier of a view is not a simplex of the previous level");
    int p = parents.front();
    const auto& kids = prev.children[static_cast<std::size_t>(p)];
    if (prev.top_stable[static_cast<std::size_t>(p)]) {
      loc.top = kids.front();
      loc.face = hull;
    } else {
      if (!t[v].has_coords) throw InvalidArgument("point location needs coordinates");
      for (int c : kids) {
        auto f = face_containing(t, L.tops[static_cast<std::size_t>(c)], t[v].coords);
        if (f) {
          loc.top = c;
          loc.face = std::move(*f);
          break;
        }
      }
      if (loc.top < 0) throw InternalError("view vertex lies in no child simplex");
    }
  }
  if (cache_.size() <= v) cache_.resize(static_cast<std::size_t>(v) + 1);
  cache_[v].by_level.emplace_back(k, loc);
  return loc;
}

Simplex TerminatingSubdivision::carrier_of_view_simplex(const Simplex& sigma, int k) {
  Simplex out;
  for (VertexId v : sigma) out = simplex_union(out, locate_view(v, k).face);
  return out;
}

bool TerminatingSubdivision::closed_star_stable(const Simplex& face, int k) const {
  const SubdivisionLevel& L = level(k);
  for (int i : L.tops_containing(face))
    if (!L.top_stable[static_cast<std::size_t>(i)]) return false;
  return true;
}

TSubPtr chr_terminated(const ChromaticComplex& base, int k) {
  if (k < 0) throw InvalidArgument("negative termination level");
  return std::make_shared<TerminatingSubdivision>(base, [k](const SubdivisionLevel& lvl) {
    return lvl.k == k ? lvl.tops : std::vector<Simplex>{};
  });
}

TSubPtr explicit_subdivision(const ChromaticComplex& base, std::map<int, std::vector<Simplex>> schedule) {
  return std::make_shared<TerminatingSubdivision>(base, [schedule](const SubdivisionLevel& lvl) {
    auto it = schedule.find(lvl.k);
    return it == schedule.end() ? std::vector<Simplex>{} : it->second;
  });
}

AdmissibilityReport admissible_check(TerminatingSubdivision& ts, const TaskSpec& task, const ModelSpec& m,
                                     const SolvabilityBounds& bounds) {
  const int n = task.n();
  check_model(m, n);
  if (bounds.period < 1) throw InvalidArgument("admissibility needs a tail period of at least 1");
  if (bounds.horizon < bounds.depth) throw InvalidArgument("horizon must be at least the prefix depth");
  ts.materialize(bounds.horizon);
  AdmissibilityReport rep;
  VertexTable& t = *ts.table();
  struct St {
    ViewTracker vt;
    int admitted = -1;
    bool foreign = false;
  };
  for (const auto& omega : ts.base().maximal_simplices()) {
    ProcessSet colors = 0;
    for (VertexId v : omega) colors |= 1u << t[v].color;
    auto round0 = [&](St& st, ProcessSet part) {
      Simplex s0;
      for (VertexId v : omega)
        if (contains(part, t[v].color)) s0.push_back(v);
      if (ts.is_stable(make_simplex(s0), 0)) st.admitted = 0;
    };
    auto advance = [&](St& st, const OrderedPartition& part, int k) {
      st.vt.step(part);
      if (ts.is_stable(ts.carrier_of_view_simplex(st.vt.simplex(), k), k)) st.admitted = k;
    };
    St root{ViewTracker(t, n + 1, omega), -1, false};
    auto step = [&](const St& st, const OrderedPartition& part, int k) {
      St next = st;
      if (next.foreign || next.admitted >= 0) return next;
      if (k == 1) {
        if (part.set() & ~colors) {
          next.foreign = true;
          return next;
        }
        round0(next, part.set());
        if (next.admitted >= 0) return next;
      }
      advance(next, part, k);
      return next;
    };
    auto leaf = [&](const St& st, const RunSpec& r) {
      if (rep.counterexample || st.foreign) return;
      if (bounds.depth == 0 && (r.tail[0].set() & ~colors)) return;
      if (!model_contains(m, r)) return;
      ++rep.runs_checked;
      int admitted = st.admitted;
      if (admitted < 0) {
        auto mark = t.mark();
        St cur = st;
        if (bounds.depth == 0) round0(cur, r.round(1).set());
        for (int k = bounds.depth + 1; k <= bounds.horizon && cur.admitted < 0; ++k) advance(cur, r.round(k), k);
        admitted = cur.admitted;
        t.rollback(mark);
      }
      if (admitted < 0) {
        rep.ok = false;
        rep.counterexample = r;
        rep.omega = omega;
        return;
      }
      rep.latest_round = std::max(rep.latest_round, admitted);
    };
    walk_runs(n, bounds.depth, bounds.period, root, step, leaf);
    if (rep.counterexample) break;
  }
  return rep;
}

std::vector<std::string> check_delta_carrier(const TerminatingSubdivision& ts, const DecisionMapGACT& d,
                                             const TaskSpec& task, int depth) {
  std::vector<std::string> out;
  const VertexTable& t = *ts.table();
  ChromaticComplex k = ts.stable_complex(depth);
  for (const auto& tau : k.simplices()) {
    Simplex img;
    bool defined = true;
    for (VertexId v : tau) {
      auto it = d.delta.find(v);
      if (it == d.delta.end()) {
        defined = false;
        break;
      }
      img.push_back(it->second);
    }
    int since = ts.stable_since(tau);
    if (!defined) {
      out.push_back("δ undefined on a vertex of a stable simplex (round " + std::to_string(since) + ")");
    } else {
      Simplex s = make_simplex(img);
      if (s.size() != img.size() || !task.image_contains(base_carrier(t, tau), s)) {
        std::string name;
        for (VertexId v : tau) name += (name.empty() ? "" : ",") + t.name(v, since);
        out.push_back("δ of stable simplex {" + name + "} is not in Δ of its carrier");
      }
    }
    if (out.size() >= 20) break;
  }
  return out;
}

GactReport gact_verify(TerminatingSubdivision& ts, const DecisionMapGACT& d, const TaskSpec& task, const ModelSpec& m,
                       const SolvabilityBounds& bounds) {
  GactReport rep;
  rep.bounds = bounds;
  ts.materialize(bounds.horizon);
  rep.b_violations = check_delta_carrier(ts, d, task, bounds.horizon);
  rep.condition_b = rep.b_violations.empty();
  rep.stable_simplices_checked = ts.stable_complex(bounds.horizon).simplices().size();
  rep.admissibility = admissible_check(ts, task, m, bounds);
  rep.ok = rep.condition_b && rep.admissibility.ok;
  return rep;
}

std::optional<VertexId> GactProtocol::decide(int round, VertexId view) const {
  VertexTable& t = *t_->table();
  auto loc = t_->locate_view(view, round);
  if (!t_->closed_star_stable(loc.face, round)) return std::nullopt;
  for (VertexId u : loc.face) {
    if (t[u].color != t[view].color) continue;
    auto it = d_.delta.find(u);
    if (it == d_.delta.end()) throw InvalidArgument("δ is undefined on a stable vertex");
    return it->second;
  }
  throw InternalError("stable carrier lacks the view's color");
}

std::shared_ptr<GactProtocol> protocol_from_gact(TSubPtr t, const DecisionMapGACT& d) {
  return std::make_shared<GactProtocol>(std::move(t), d);
}

std::shared_ptr<TableProtocol> extract_protocol(const Protocol& p, const ChromaticComplex& base, int max_round) {
  if (max_round < 0) throw InvalidArgument("negative round bound");
  auto out = std::make_shared<TableProtocol>();
  ChromaticComplex c = base;
  std::uint64_t seen = 0;
  for (int j = 0; j <= max_round; ++j) {
    if (j > 0) c = chr(c);
    seen += c.vertices().size();
    if (seen > enumeration_budget()) throw_budget(seen);
    for (VertexId v : c.vertices()) {
      auto d = p.decide(j, v);
      if (d) out->entries[{j, v}] = *d;
    }
  }
  return out;
}

SubdivFromProtocol subdiv_from_protocol(const Protocol& p, const TaskSpec& task, const ModelSpec& m,
                                        const SolvabilityBounds& bounds) {
  const int n = task.n();
  check_model(m, n);
  if (bounds.period < 1) throw InvalidArgument("needs a tail period of at least 1");
  SubdivFromProtocol out;
  VertexTable& t = task.input.vertex_table();
  auto delta = std::make_shared<std::map<VertexId, VertexId>>();
  auto live = std::make_shared<bool>(true);
  const ChromaticComplex base = task.input;
  // Only the levels built here consult the protocol; later levels gain no stable simplices.
  auto schedule = [&, delta, live](const SubdivisionLevel& lvl) {
    if (!*live) return std::vector<Simplex>{};
    const int k = lvl.k;
    std::set<Simplex> found;
    for (const auto& omega : base.maximal_simplices()) {
      ProcessSet colors = 0;
      for (VertexId v : omega) colors |= 1u << t[v].color;
      enumerate_runs(n, bounds.depth, bounds.period, [&](const RunSpec& r) {
        if ((r.round(1).set() & ~colors) || !model_contains(m, r)) return;
        auto mark = t.mark();
        ViewTracker vt(t, n + 1, omega);
        ProcessSet who = r.round(1).set();
        for (int j = 1; j <= k; ++j) {
          vt.step(r.round(j));
          who = vt.participants();
        }
        Simplex sigma;
        std::vector<std::pair<VertexId, VertexId>> outs;
        for (int q : members(who)) {
          VertexId v = vt.current()[static_cast<std::size_t>(q)];
          if (v >= mark.records || !lvl.complex.has_vertex(v)) continue;
          auto d = p.decide(k, v);
          if (!d) continue;
          sigma.push_back(v);
          outs.emplace_back(v, *d);
        }
        t.rollback(mark);
        sigma = make_simplex(std::move(sigma));
        if (sigma.empty() || !lvl.complex.contains(sigma)) return;
        found.insert(sigma);
        for (auto [v, w] : outs) {
          auto [it, fresh] = delta->emplace(v, w);
          if (!fresh && it->second != w) throw InvalidArgument("protocol assigns two outputs to one stable vertex");
        }
      });
    }
    return std::vector<Simplex>(found.begin(), found.end());
  };
  out.subdivision = std::make_shared<TerminatingSubdivision>(base, schedule);
  out.subdivision->materialize(bounds.horizon);
  *live = false;
  out.delta.delta = *delta;
  out.levels = bounds.horizon;
  return out;
}

}  // namespace gact
