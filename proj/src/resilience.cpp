#include "gact/resilience.hpp"

#include "gact/errors.hpp"
#include "gact/geometry.hpp"
#include "gact/runs.hpp"
#include "gact/subdivision.hpp"

#include <algorithm>
#include <mutex>
#include <set>

namespace gact {

namespace {

bool all_carriers_at_least(const VertexTable& t, const Simplex& s, int dim) {
  for (VertexId v : s)
    if (carrier_dimension(t, v) < dim) return false;
  return true;
}

std::vector<int> all_colors(int n) {
  std::vector<int> out;
  for (int i = 0; i <= n; ++i) out.push_back(i);
  return out;
}

void require_standard(const ChromaticComplex& base) {
  const VertexTable& t = base.vertex_table();
  const int n = base.dimension();
  auto tops = base.maximal_simplices();
  if (tops.size() != 1 || static_cast<int>(tops[0].size()) != n + 1)
    throw InvalidArgument("resilient construction needs a single n-simplex as base");
  for (VertexId v : tops[0]) {
    if (!t[v].has_coords) throw InvalidArgument("base vertex without coordinates");
    for (int i = 0; i <= n; ++i)
      if (t[v].coords[static_cast<std::size_t>(i)] != (i == t[v].color ? 1 : 0))
        throw InvalidArgument("base vertex is not a corner of the standard simplex");
  }
}

}  // namespace

RegionDecomposition regions(int n, int t, int j_max) {
  if (n < 0 || t < 0 || t > n) throw InvalidArgument("regions need 0 <= t <= n");
  if (j_max < 0) throw InvalidArgument("negative region index");
  std::uint64_t tops = 1;
  const std::uint64_t bell[] = {1, 1, 3, 13, 75, 541};
  if (n + 1 > 5) throw InvalidArgument("too many processes for region enumeration");
  for (int i = 0; i < j_max + 2; ++i) {
    tops *= bell[n + 1];
    if (tops > enumeration_budget()) throw_budget(tops);
  }
  RegionDecomposition rd;
  rd.n = n;
  rd.t = t;
  ChromaticComplex c = chr_iter(standard_simplex(n), 2);
  rd.table = c.table();
  const VertexTable& tab = *rd.table;
  const auto support = all_colors(n);
  std::set<Simplex> previous;
  Rational running = 0;
  for (int j = 0; j <= j_max; ++j) {
    if (j > 0) c = chr(c);
    std::vector<Simplex> tilde, region;
    Rational tilde_volume = 0, region_volume = 0;
    for (const auto& top : c.maximal_simplices()) {
      if (!all_carriers_at_least(tab, top, n - t)) continue;
      tilde.push_back(top);
      Rational vol = abs(normalized_volume(tab, top, support));
      tilde_volume += vol;
      if (j > 0 && previous.count(carrier_of(tab, top, j + 2, j + 1))) continue;
      region.push_back(top);
      region_volume += vol;
    }
    running += region_volume;
    if (running != tilde_volume) throw InternalError("regions do not tile the filtered subdivision");
    previous = std::set<Simplex>(tilde.begin(), tilde.end());
    rd.tilde.push_back(std::move(tilde));
    rd.regions.push_back(std::move(region));
    rd.volumes.push_back(region_volume);
  }
  return rd;
}

TSubPtr build_res_subdivision(const ChromaticComplex& base, int t, int depth) {
  const int n = base.dimension();
  if (t < 0 || t > n) throw InvalidArgument("resilience needs 0 <= t <= n");
  if (depth < 2) throw InvalidArgument("resilient construction needs depth >= 2");
  require_standard(base);
  auto ts = std::make_shared<TerminatingSubdivision>(base, [n, t](const SubdivisionLevel& lvl) {
    std::vector<Simplex> out;
    if (lvl.k < 2) return out;
    const VertexTable& tab = lvl.complex.vertex_table();
    for (const auto& top : lvl.tops)
      if (all_carriers_at_least(tab, top, n - t)) out.push_back(top);
    return out;
  });
  ts->materialize(depth);
  return ts;
}

TSubPtr build_res_subdivision(int n, int t, int depth) {
  return build_res_subdivision(standard_simplex(n), t, depth);
}

namespace {

struct StarBoundary {
  // Per corner, the edges of the link of that corner in Chr² s.
  std::vector<std::vector<std::pair<Point, Point>>> edges;
};

const StarBoundary& star_boundary() {
  static std::once_flag once;
  static StarBoundary sb;
  std::call_once(once, [] {
    ChromaticComplex s = standard_simplex(2);
    ChromaticComplex c2 = chr_iter(s, 2);
    const VertexTable& t = c2.vertex_table();
    sb.edges.resize(3);
    for (VertexId corner : s.vertices()) {
      auto ls = local_structure(c2, {corner});
      for (const auto& e : ls.link)
        if (e.size() == 2) sb.edges[static_cast<std::size_t>(t[corner].color)].emplace_back(t[e[0]].coords, t[e[1]].coords);
    }
  });
  return sb;
}

}  // namespace

Point radial_heuristic(const Point& p) {
  if (p.size() != 3) throw InvalidArgument("radial projection is defined for three processes only");
  if (p[0] + p[1] + p[2] != 1) throw InvalidArgument("point coordinates must sum to 1");
  for (const auto& x : p)
    if (x < 0) throw InvalidArgument("point lies outside the simplex");
  std::size_t c = 0;
  for (std::size_t i = 1; i < 3; ++i)
    if (p[i] > p[c]) c = i;
  if (p[c] == 1) throw InvalidArgument("radial projection is undefined at a corner");
  Point corner(3, Rational(0));
  corner[c] = 1;
  Rational d0 = p[0] - corner[0], d1 = p[1] - corner[1];
  std::optional<Rational> best;
  for (const auto& [a, b] : star_boundary().edges[c]) {
    Rational e0 = b[0] - a[0], e1 = b[1] - a[1];
    Rational r0 = a[0] - corner[0], r1 = a[1] - corner[1];
    Rational det = e0 * d1 - d0 * e1;
    if (det == 0) continue;
    Rational lambda = (e0 * r1 - r0 * e1) / det;
    Rational mu = (d0 * r1 - d1 * r0) / det;
    if (lambda <= 0 || mu < 0 || mu > 1) continue;
    if (!best || lambda < *best) best = lambda;
  }
  if (!best) throw InternalError("ray misses the star boundary");
  Point out(3);
  for (std::size_t i = 0; i < 3; ++i) out[i] = corner[i] + *best * (p[i] - corner[i]);
  return out;
}

namespace {

constexpr VertexId kUnassigned = static_cast<VertexId>(-1);

class DeltaSearch {
 public:
  DeltaSearch(TerminatingSubdivision& ts, const TaskSpec& task, int depth)
      : t_(*ts.table()), task_(task), stable_(ts.stable_complex(depth)) {}

  DeltaSearchResult run() {
    DeltaSearchResult res;
    if (!setup(res)) return res;
    if (!solve()) {
      res.reason = res_reason_.empty() ? "search exhausted" : res_reason_;
      res.witness = witness_;
      res.nodes = nodes_;
      return res;
    }
    res.ok = true;
    res.nodes = nodes_;
    for (std::size_t i = 0; i < verts_.size(); ++i) res.delta.delta[verts_[i]] = value_[i];
    return res;
  }

 private:
  struct Constraint {
    std::vector<std::size_t> members;
    std::size_t image;
  };

  bool setup(DeltaSearchResult& res) {
    verts_ = stable_.vertices();
    value_.assign(verts_.size(), kUnassigned);
    for (std::size_t i = 0; i < verts_.size(); ++i) index_[verts_[i]] = i;
    cand_.resize(verts_.size());
    alive_.resize(verts_.size());
    count_.assign(verts_.size(), 0);
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      VertexId v = verts_[i];
      if (task_.output.has_vertex(v)) {
        value_[i] = v;
        continue;
      }
      const ChromaticComplex& img = image_of(t_[v].base_carrier);
      std::vector<std::pair<Rational, VertexId>> ranked;
      Point target = t_[v].coords;
      if (t_[v].has_coords && target.size() == 3) {
        try {
          target = radial_heuristic(target);
        } catch (const InvalidArgument&) {
        }
      }
      for (VertexId w : img.vertices()) {
        if (t_[w].color != t_[v].color) continue;
        Rational dist = 0;
        if (t_[v].has_coords && t_[w].has_coords)
          for (std::size_t k = 0; k < target.size(); ++k) {
            Rational d = t_[w].coords[k] - target[k];
            dist += d * d;
          }
        ranked.emplace_back(dist, w);
      }
      std::sort(ranked.begin(), ranked.end());
      for (auto& [d, w] : ranked) cand_[i].push_back(w);
      alive_[i].assign(cand_[i].size(), 1);
      count_[i] = cand_[i].size();
      if (cand_[i].empty()) {
        res.reason = "no output vertex of the right color in Δ of the carrier";
        res.witness = Simplex{v};
        return false;
      }
    }
    cons_of_.resize(verts_.size());
    for (const auto& s : stable_.simplices()) {
      Constraint c;
      for (VertexId v : s) c.members.push_back(index_.at(v));
      c.image = image_index(base_carrier(t_, s));
      cons_.push_back(std::move(c));
      for (std::size_t m : cons_.back().members) cons_of_[m].push_back(cons_.size() - 1);
    }
    for (std::size_t ci = 0; ci < cons_.size(); ++ci) {
      if (!prune(ci)) {
        res.reason = res_reason_;
        res.witness = witness_;
        return false;
      }
    }
    return true;
  }

  const ChromaticComplex& image_of(const Simplex& carrier) { return images_[image_index(carrier)]; }

  std::size_t image_index(const Simplex& carrier) {
    auto it = image_ids_.find(carrier);
    if (it != image_ids_.end()) return it->second;
    images_.push_back(task_.image(carrier));
    image_ids_.emplace(carrier, images_.size() - 1);
    return images_.size() - 1;
  }

  Simplex stable_simplex(const Constraint& c) const {
    Simplex s;
    for (std::size_t m : c.members) s.push_back(verts_[m]);
    return make_simplex(std::move(s));
  }

  // Removes candidates of unassigned members that cannot extend the assigned part into Δ.
  bool prune(std::size_t ci) {
    const Constraint& c = cons_[ci];
    const ChromaticComplex& img = images_[c.image];
    Simplex assigned;
    for (std::size_t m : c.members)
      if (value_[m] != kUnassigned) assigned.push_back(value_[m]);
    assigned = make_simplex(std::move(assigned));
    if (!assigned.empty() && !img.contains(assigned)) {
      fail(ci, "stable simplex is mapped outside Δ of its carrier");
      return false;
    }
    for (std::size_t m : c.members) {
      if (value_[m] != kUnassigned) continue;
      for (std::size_t k = 0; k < cand_[m].size(); ++k) {
        if (!alive_[m][k]) continue;
        Simplex ext = assigned;
        ext.push_back(cand_[m][k]);
        ext = make_simplex(std::move(ext));
        if (img.contains(ext)) continue;
        alive_[m][k] = 0;
        --count_[m];
        trail_.emplace_back(m, k);
      }
      if (count_[m] == 0) {
        fail(ci, "no candidate left for a vertex of a stable simplex");
        return false;
      }
    }
    return true;
  }

  void fail(std::size_t ci, const char* why) {
    witness_ = stable_simplex(cons_[ci]);
    res_reason_ = why;
  }

  void undo(std::size_t mark) {
    while (trail_.size() > mark) {
      auto [m, k] = trail_.back();
      trail_.pop_back();
      alive_[m][k] = 1;
      ++count_[m];
    }
  }

  bool solve() {
    std::size_t pick = verts_.size();
    for (std::size_t i = 0; i < verts_.size(); ++i) {
      if (value_[i] != kUnassigned) continue;
      if (pick == verts_.size() || count_[i] < count_[pick]) pick = i;
    }
    if (pick == verts_.size()) return true;
    for (std::size_t k = 0; k < cand_[pick].size(); ++k) {
      if (!alive_[pick][k]) continue;
      if (++nodes_ > enumeration_budget()) throw_budget(nodes_);
      value_[pick] = cand_[pick][k];
      const std::size_t mark = trail_.size();
      bool ok = true;
      for (std::size_t ci : cons_of_[pick])
        if (!prune(ci)) {
          ok = false;
          break;
        }
      if (ok && solve()) return true;
      undo(mark);
      value_[pick] = kUnassigned;
    }
    return false;
  }

  VertexTable& t_;
  const TaskSpec& task_;
  ChromaticComplex stable_;
  std::vector<VertexId> verts_;
  std::vector<VertexId> value_;
  std::map<VertexId, std::size_t> index_;
  std::vector<std::vector<VertexId>> cand_;
  std::vector<std::vector<char>> alive_;
  std::vector<std::size_t> count_;
  std::vector<Constraint> cons_;
  std::vector<std::vector<std::size_t>> cons_of_;
  std::vector<ChromaticComplex> images_;
  std::map<Simplex, std::size_t> image_ids_;
  std::vector<std::pair<std::size_t, std::size_t>> trail_;
  std::uint64_t nodes_ = 0;
  std::optional<Simplex> witness_;
  std::string res_reason_;
};

}  // namespace

DeltaSearchResult delta_search(TerminatingSubdivision& ts, const TaskSpec& task, int depth) {
  if (ts.table() != task.input.table()) throw InvalidArgument("subdivision and task must share a vertex table");
  ts.materialize(depth);
  return DeltaSearch(ts, task, depth).run();
}

}  // namespace gact
