#include "gact/svg.hpp"

#include "gact/errors.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace gact {

namespace {

constexpr double kWidth = 520, kHeight = 480;
const char* const kFill[] = {"#cfe8cf", "#f7e3a1", "#f4b6b6", "#b9d3f0", "#dcc6ec", "#e0e0e0"};
const char* const kVertex[] = {"#d62728", "#2ca02c", "#1f77b4", "#9467bd"};

std::string fmt(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", x);
  return buf;
}

// Corners of the drawing: an equilateral triangle, or a segment for one-dimensional input.
std::pair<double, double> project(const Point& p, int dim) {
  static const double cx[] = {30, 490, 260}, cy[] = {440, 440, 41.625};
  double x = 0, y = 0;
  if (dim == 0) return {kWidth / 2, kHeight / 2};
  for (std::size_t i = 0; i < p.size() && i < 3; ++i) {
    double w = p[i].get_d();
    x += w * cx[i];
    y += w * (dim == 1 ? kHeight / 2 : cy[i]);
  }
  return {x, y};
}

}  // namespace

std::string export_svg(const ChromaticComplex& c, const SvgStyle& style) {
  const int dim = c.dimension();
  if (dim > 2) throw InvalidArgument("SVG export supports dimension at most 2");
  const VertexTable& t = c.vertex_table();
  for (VertexId v : c.vertices())
    if (!t[v].has_coords) throw InvalidArgument("SVG export needs vertex coordinates");
  auto at = [&](VertexId v) { return project(t[v].coords, dim); };
  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
      << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\">\n";
  if (!style.title.empty()) out << "<title>" << style.title << "</title>\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  // Output order follows the geometry, not vertex ids, so equal complexes draw identically.
  auto by_position = [&](VertexId a, VertexId b) { return t[a].coords < t[b].coords; };
  std::vector<std::string> shapes;
  for (auto s : c.maximal_simplices()) {
    auto g = style.group.find(s);
    std::string fill = g == style.group.end() ? "none" : kFill[static_cast<std::size_t>(g->second) % 6];
    std::sort(s.begin(), s.end(), by_position);
    std::ostringstream e;
    if (s.size() == 3) {
      e << "<polygon points=\"";
      for (std::size_t i = 0; i < 3; ++i) {
        auto [x, y] = at(s[i]);
        e << (i ? " " : "") << fmt(x) << ',' << fmt(y);
      }
      e << "\" fill=\"" << fill << "\" stroke=\"#333\" stroke-width=\"0.6\"/>\n";
    } else if (s.size() == 2) {
      auto [x1, y1] = at(s[0]);
      auto [x2, y2] = at(s[1]);
      e << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(y2)
        << "\" stroke=\"#333\" stroke-width=\"0.8\"/>\n";
    }
    shapes.push_back(e.str());
  }
  std::sort(shapes.begin(), shapes.end());
  for (const auto& e : shapes) out << e;
  for (const auto& [from, to] : style.arrows) {
    auto [x1, y1] = project(from, dim);
    auto [x2, y2] = project(to, dim);
    out << "<line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(y2)
        << "\" stroke=\"#555\" stroke-width=\"0.5\" stroke-dasharray=\"2,1\"/>\n";
  }
  const double r = c.vertices().size() > 400 ? 1.2 : 2.5;
  std::vector<VertexId> verts = c.vertices();
  std::sort(verts.begin(), verts.end(), by_position);
  for (VertexId v : verts) {
    auto [x, y] = at(v);
    out << "<circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"" << r << "\" fill=\""
        << kVertex[t[v].color % 4] << "\"/>\n";
    if (style.labels && c.vertices().size() <= 40)
      out << "<text x=\"" << fmt(x + 4) << "\" y=\"" << fmt(y - 4) << "\" font-size=\"9\">" << t[v].color
          << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace gact
