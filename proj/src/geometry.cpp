#include "gact/geometry.hpp"

#include "gact/errors.hpp"

#include <algorithm>
#include <map>

namespace gact {

std::vector<int> support_of(const Point& p) {
  std::vector<int> out;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] != 0) out.push_back(static_cast<int>(i));
  return out;
}

static const Point& coords_of(const VertexTable& t, VertexId v) {
  const VertexRecord& r = t[v];
  if (!r.has_coords) throw InvalidArgument("vertex without coordinates in a geometric query");
  return r.coords;
}

Rational normalized_volume(const VertexTable& t, const Simplex& s, const std::vector<int>& support) {
  if (s.size() != support.size()) throw InvalidArgument("simplex size does not match face support");
  std::vector<std::vector<Rational>> m;
  for (VertexId v : s) {
    const Point& p = coords_of(t, v);
    std::vector<Rational> row;
    for (int i : support) row.push_back(p.at(static_cast<std::size_t>(i)));
    m.push_back(std::move(row));
  }
  return determinant(std::move(m));
}

std::optional<std::vector<Rational>> affine_weights(const VertexTable& t, const Simplex& s, const Point& p) {
  if (s.empty()) return std::nullopt;
  // coordinates already sum to one, so the affine condition is implied by the linear system
  const std::size_t dim = p.size();
  std::vector<std::vector<Rational>> rows(dim, std::vector<Rational>(s.size()));
  for (std::size_t j = 0; j < s.size(); ++j) {
    const Point& c = coords_of(t, s[j]);
    if (c.size() != dim) throw InvalidArgument("coordinate arity mismatch");
    for (std::size_t i = 0; i < dim; ++i) rows[i][j] = c[i];
  }
  std::vector<Rational> x;
  if (!solve_exact(rows, p, x)) return std::nullopt;
  return x;
}

std::optional<Simplex> face_containing(const VertexTable& t, const Simplex& s, const Point& p) {
  auto w = affine_weights(t, s, p);
  if (!w) return std::nullopt;
  Simplex face;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if ((*w)[i] < 0) return std::nullopt;
    if ((*w)[i] > 0) face.push_back(s[i]);
  }
  return face;
}

Point barycenter(const VertexTable& t, const Simplex& s) {
  if (s.empty()) throw InvalidArgument("barycenter of the empty simplex");
  Point out(coords_of(t, s[0]).size(), 0);
  for (VertexId v : s) {
    const Point& c = coords_of(t, v);
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c[i];
  }
  for (auto& x : out) x /= static_cast<long>(s.size());
  return out;
}

GeometryReport check_subdivision_geometry(const ChromaticComplex& c, const std::vector<int>& support) {
  GeometryReport rep;
  rep.total_volume = 0;
  const VertexTable& t = c.vertex_table();
  const std::size_t m = support.size();
  auto fail = [&](std::string why) {
    rep.ok = false;
    if (rep.problems.size() < 20) rep.problems.push_back(std::move(why));
  };
  for (VertexId v : c.vertices()) {
    const VertexRecord& r = t[v];
    if (!r.has_coords) {
      fail("vertex without coordinates");
      return rep;
    }
    for (std::size_t i = 0; i < r.coords.size(); ++i) {
      bool in_support = std::find(support.begin(), support.end(), static_cast<int>(i)) != support.end();
      if (r.coords[i] < 0 || (!in_support && r.coords[i] != 0)) fail("vertex outside the face");
    }
  }
  auto tops = c.maximal_simplices();
  rep.top_simplices = tops.size();
  // facet -> (apex, orientation of facet+apex with the facet in sorted order)
  std::map<Simplex, std::vector<int>> facet_sides;
  for (const auto& top : tops) {
    if (top.size() != m) {
      fail("maximal simplex of the wrong dimension");
      continue;
    }
    Rational vol = normalized_volume(t, top, support);
    if (vol == 0) {
      fail("degenerate simplex");
      continue;
    }
    rep.total_volume += abs(vol);
    if (m < 2) continue;
    for (std::size_t i = 0; i < m; ++i) {
      Simplex facet = top;
      facet.erase(facet.begin() + static_cast<long>(i));
      Simplex ordered = facet;
      ordered.push_back(top[i]);
      int side = normalized_volume(t, ordered, support) > 0 ? 1 : -1;
      facet_sides[facet].push_back(side);
    }
  }
  if (rep.total_volume != 1) fail("total volume " + format_rational(rep.total_volume) + " instead of 1");
  for (const auto& [facet, sides] : facet_sides) {
    bool boundary = false;
    for (int i : support) {
      bool all_zero = true;
      for (VertexId v : facet) all_zero = all_zero && t[v].coords[static_cast<std::size_t>(i)] == 0;
      boundary = boundary || all_zero;
    }
    if (boundary) {
      if (sides.size() != 1) fail("boundary facet shared by " + std::to_string(sides.size()) + " simplices");
    } else if (sides.size() != 2) {
      fail("interior facet shared by " + std::to_string(sides.size()) + " simplices");
    } else if (sides[0] == sides[1]) {
      fail("overlapping simplices on the same side of a facet");
    }
  }
  return rep;
}

}  // namespace gact
