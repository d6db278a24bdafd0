#include "gact/complex.hpp"

#include "gact/errors.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>

namespace gact {

ChromaticComplex::ChromaticComplex(TablePtr table, int dimension, int level)
    : table_(std::move(table)), dimension_(dimension), level_(level) {
  if (!table_) throw InvalidArgument("complex needs a vertex table");
  if (dimension_ < 0) throw InvalidArgument("negative complex dimension");
}

ChromaticComplex ChromaticComplex::closure_of(TablePtr table, int dimension, int level,
                                              const std::vector<Simplex>& family) {
  ChromaticComplex c(std::move(table), dimension, level);
  c.simplices_ = downward_closure(family);
  c.rebuild_vertices();
  return c;
}

ChromaticComplex ChromaticComplex::raw(TablePtr table, int dimension, int level, std::vector<Simplex> family) {
  ChromaticComplex c(std::move(table), dimension, level);
  for (auto& s : family) s = make_simplex(std::move(s));
  family.erase(std::remove_if(family.begin(), family.end(), [](const Simplex& s) { return s.empty(); }),
               family.end());
  std::sort(family.begin(), family.end());
  family.erase(std::unique(family.begin(), family.end()), family.end());
  c.simplices_ = std::move(family);
  c.rebuild_vertices();
  return c;
}

void ChromaticComplex::rebuild_vertices() {
  std::vector<VertexId> vs;
  for (const auto& s : simplices_) vs.insert(vs.end(), s.begin(), s.end());
  vertices_ = make_simplex(std::move(vs));
}

bool ChromaticComplex::contains(const Simplex& s) const {
  return std::binary_search(simplices_.begin(), simplices_.end(), s);
}

bool ChromaticComplex::has_vertex(VertexId v) const {
  return std::binary_search(vertices_.begin(), vertices_.end(), v);
}

int ChromaticComplex::top_dimension() const {
  int d = -1;
  for (const auto& s : simplices_) d = std::max(d, static_cast<int>(s.size()) - 1);
  return d;
}

std::vector<Simplex> ChromaticComplex::maximal_simplices() const {
  // a simplex is maximal iff no simplex one dimension up contains it
  std::set<Simplex> covered;
  for (const auto& s : simplices_) {
    if (s.size() < 2) continue;
    for (std::size_t i = 0; i < s.size(); ++i) {
      Simplex f = s;
      f.erase(f.begin() + static_cast<long>(i));
      covered.insert(std::move(f));
    }
  }
  std::vector<Simplex> out;
  for (const auto& s : simplices_)
    if (!covered.count(s)) out.push_back(s);
  return out;
}

std::vector<Simplex> ChromaticComplex::simplices_of_dim(int d) const {
  std::vector<Simplex> out;
  for (const auto& s : simplices_)
    if (static_cast<int>(s.size()) == d + 1) out.push_back(s);
  return out;
}

std::size_t ChromaticComplex::count_dim(int d) const {
  std::size_t n = 0;
  for (const auto& s : simplices_)
    if (static_cast<int>(s.size()) == d + 1) ++n;
  return n;
}

std::vector<int> ChromaticComplex::colors_of(const Simplex& s) const {
  std::vector<int> out;
  for (VertexId v : s) out.push_back((*table_)[v].color);
  std::sort(out.begin(), out.end());
  return out;
}

bool operator==(const ChromaticComplex& a, const ChromaticComplex& b) {
  return a.table() == b.table() && a.dimension() == b.dimension() && a.simplices() == b.simplices();
}

std::vector<Simplex> faces_of(const Simplex& s) {
  std::vector<Simplex> out;
  const std::size_t k = s.size();
  if (k > 20) throw InvalidArgument("simplex too large to enumerate faces");
  for (std::uint32_t mask = 1; mask < (1u << k); ++mask) {
    Simplex f;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) f.push_back(s[i]);
    out.push_back(std::move(f));
  }
  return out;
}

std::vector<Simplex> downward_closure(const std::vector<Simplex>& family) {
  std::vector<Simplex> out;
  for (const auto& raw : family) {
    Simplex s = make_simplex(raw);
    if (s.empty()) continue;
    auto fs = faces_of(s);
    out.insert(out.end(), fs.begin(), fs.end());
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::string> validate_complex(const ChromaticComplex& c) {
  std::vector<std::string> problems;
  const VertexTable& t = c.vertex_table();
  for (const auto& s : c.simplices()) {
    bool ids_ok = true;
    for (VertexId v : s) {
      if (v >= t.size()) {
        problems.push_back("unknown vertex id " + std::to_string(v));
        ids_ok = false;
      }
    }
    if (!ids_ok) continue;
    if (static_cast<int>(s.size()) - 1 > c.dimension())
      problems.push_back("simplex of dimension " + std::to_string(s.size() - 1) + " exceeds complex dimension");
    std::vector<int> colors;
    for (VertexId v : s) {
      int col = t[v].color;
      if (col < 0 || col > c.dimension())
        problems.push_back("vertex " + t.name(v, t[v].natural_level) + " has color outside 0.." +
                           std::to_string(c.dimension()));
      colors.push_back(col);
    }
    std::sort(colors.begin(), colors.end());
    if (std::adjacent_find(colors.begin(), colors.end()) != colors.end())
      problems.push_back("simplex with repeated colors (size " + std::to_string(s.size()) + ")");
    if (s.size() >= 2) {
      for (std::size_t i = 0; i < s.size(); ++i) {
        Simplex f = s;
        f.erase(f.begin() + static_cast<long>(i));
        if (!c.contains(f)) {
          problems.push_back("not closed under faces: a facet of a " + std::to_string(s.size() - 1) +
                             "-simplex is missing");
          break;
        }
      }
    }
  }
  return problems;
}

LocalStructure local_structure(const ChromaticComplex& c, const Simplex& sigma_in) {
  Simplex sigma = make_simplex(sigma_in);
  if (sigma.empty() || !c.contains(sigma)) throw InvalidArgument("simplex is not in the complex");
  LocalStructure ls;
  for (const auto& s : c.simplices())
    if (is_face(sigma, s)) ls.star.push_back(s);
  ls.closed_star = downward_closure(ls.star);
  for (const auto& s : ls.closed_star)
    if (simplex_intersection(s, sigma).empty()) ls.link.push_back(s);
  return ls;
}

ChromaticComplex skeleton(const ChromaticComplex& c, int k) {
  std::vector<Simplex> fam;
  for (const auto& s : c.simplices())
    if (static_cast<int>(s.size()) - 1 <= k) fam.push_back(s);
  return ChromaticComplex::raw(c.table(), c.dimension(), c.level(), std::move(fam));
}

bool is_pure(const ChromaticComplex& c, int d) {
  for (const auto& s : c.maximal_simplices())
    if (static_cast<int>(s.size()) - 1 != d) return false;
  return true;
}

ChromaticComplex barycentric(const ChromaticComplex& c) {
  auto table = std::make_shared<VertexTable>();
  const VertexTable& src = c.vertex_table();
  std::map<Simplex, VertexId> node;
  std::size_t idx = 0;
  for (const auto& s : c.simplices()) {
    std::optional<Point> coords;
    bool have = true;
    for (VertexId v : s) have = have && src[v].has_coords;
    if (have && !s.empty()) {
      Point p(src[s[0]].coords.size(), 0);
      for (VertexId v : s)
        for (std::size_t i = 0; i < p.size(); ++i) p[i] += src[v].coords[i];
      for (auto& x : p) x /= static_cast<long>(s.size());
      coords = p;
    }
    node[s] = table->add_base("b" + std::to_string(idx++), static_cast<int>(s.size()) - 1, coords);
  }
  std::vector<Simplex> family;
  for (const auto& top : c.maximal_simplices()) {
    std::vector<VertexId> perm = top;
    do {
      Simplex chain;
      Simplex prefix;
      for (VertexId v : perm) {
        prefix.push_back(v);
        chain.push_back(node.at(make_simplex(prefix)));
      }
      family.push_back(make_simplex(chain));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return ChromaticComplex::closure_of(table, std::max(0, c.top_dimension()), 0, family);
}

const char* to_string(Tristate t) {
  switch (t) {
    case Tristate::False: return "false";
    case Tristate::True: return "true";
    default: return "unknown";
  }
}

bool is_nonempty(const std::vector<Simplex>& family) {
  for (const auto& s : family)
    if (!s.empty()) return true;
  return false;
}

bool is_path_connected(const std::vector<Simplex>& family) {
  std::map<VertexId, VertexId> parent;
  std::function<VertexId(VertexId)> find = [&](VertexId v) -> VertexId {
    VertexId p = parent.at(v);
    if (p == v) return v;
    VertexId r = find(p);
    parent[v] = r;
    return r;
  };
  for (const auto& s : family)
    for (VertexId v : s) parent.emplace(v, v);
  if (parent.empty()) return false;
  for (const auto& s : family)
    for (std::size_t i = 1; i < s.size(); ++i) parent[find(s[i])] = find(s[0]);
  VertexId root = find(parent.begin()->first);
  for (auto& [v, p] : parent)
    if (find(v) != root) return false;
  return true;
}

bool collapses_to_point(const std::vector<Simplex>& family) {
  std::set<Simplex> alive(family.begin(), family.end());
  if (alive.empty()) return false;
  bool progress = true;
  while (progress && alive.size() > 1) {
    progress = false;
    for (auto it = alive.begin(); it != alive.end(); ++it) {
      const Simplex& tau = *it;
      const Simplex* only = nullptr;
      int cofaces = 0;
      for (const auto& s : alive) {
        if (s.size() <= tau.size() || !is_face(tau, s)) continue;
        ++cofaces;
        if (s.size() == tau.size() + 1) only = &s;
        if (cofaces > 1) break;
      }
      if (cofaces == 1 && only) {
        Simplex sigma = *only;
        Simplex t = tau;
        alive.erase(sigma);
        alive.erase(t);
        progress = true;
        break;
      }
    }
  }
  return alive.size() == 1;
}

Tristate is_k_connected(const std::vector<Simplex>& family, int k) {
  if (k <= -2) return Tristate::True;
  if (!is_nonempty(family)) return Tristate::False;
  if (k == -1) return Tristate::True;
  if (!is_path_connected(family)) return Tristate::False;
  if (k == 0) return Tristate::True;
  return collapses_to_point(downward_closure(family)) ? Tristate::True : Tristate::Unknown;
}

LinkConnectivity is_link_connected(const ChromaticComplex& c) {
  LinkConnectivity out;
  const int d = c.top_dimension();
  for (const auto& sigma : c.simplices()) {
    int required = d - (static_cast<int>(sigma.size()) - 1) - 2;
    if (required <= -2) continue;
    Tristate t = is_k_connected(local_structure(c, sigma).link, required);
    if (t == Tristate::False) {
      out.verdict = Tristate::False;
      out.witness = sigma;
      out.required = required;
      return out;
    }
    if (t == Tristate::Unknown && out.verdict == Tristate::True) {
      out.verdict = Tristate::Unknown;
      out.witness = sigma;
      out.required = required;
    }
  }
  return out;
}

}  // namespace gact
