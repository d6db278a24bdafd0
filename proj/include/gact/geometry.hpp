#pragma once

#include "gact/complex.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gact {

/// Indices of the nonzero coordinates of p.
std::vector<int> support_of(const Point& p);

/// Signed volume of s relative to the face spanned by the corners in `support`
/// (determinant of the coordinate rows restricted to `support`; the face itself has volume ±1).
Rational normalized_volume(const VertexTable& t, const Simplex& s, const std::vector<int>& support);

/// Barycentric weights of p with respect to the vertices of s, if p lies in their affine hull.
std::optional<std::vector<Rational>> affine_weights(const VertexTable& t, const Simplex& s, const Point& p);

/// Smallest face of s whose closed hull contains p, or nullopt when p is outside |s|.
std::optional<Simplex> face_containing(const VertexTable& t, const Simplex& s, const Point& p);

Point barycenter(const VertexTable& t, const Simplex& s);

struct GeometryReport {
  bool ok = true;
  std::vector<std::string> problems;
  Rational total_volume;
  std::size_t top_simplices = 0;
};

/**
 * Checks that the maximal simplices of c tile the face of the standard simplex spanned by
 * `support`: nondegenerate, exact total volume 1, each interior facet shared by exactly two
 * simplices lying on opposite sides, each boundary facet by exactly one.
 */
GeometryReport check_subdivision_geometry(const ChromaticComplex& c, const std::vector<int>& support);

}  // namespace gact
