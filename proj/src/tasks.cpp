#include "gact/tasks.hpp"

#include "gact/errors.hpp"
#include "gact/subdivision.hpp"

#include <algorithm>
#include <set>

namespace gact {

ChromaticComplex TaskSpec::image(const Simplex& sigma) const {
  auto it = delta.find(make_simplex(sigma));
  if (it == delta.end()) return ChromaticComplex(output.table(), output.dimension(), output.level());
  return it->second;
}

bool TaskSpec::image_contains(const Simplex& sigma, const Simplex& out) const {
  auto it = delta.find(make_simplex(sigma));
  if (it == delta.end()) return false;
  return it->second.contains(make_simplex(out));
}

int carrier_dimension(const VertexTable& t, VertexId v) {
  return static_cast<int>(t[v].base_carrier.size()) - 1;
}

std::vector<std::string> validate_task(const TaskSpec& t) {
  std::vector<std::string> problems;
  for (const auto& p : validate_complex(t.input)) problems.push_back("input: " + p);
  for (const auto& p : validate_complex(t.output)) problems.push_back("output: " + p);
  if (t.input.table() != t.output.table()) problems.push_back("input and output use different vertex tables");
  if (t.input.dimension() != t.output.dimension()) problems.push_back("input and output dimensions differ");
  if (!problems.empty()) return problems;
  const VertexTable& vt = t.input.vertex_table();
  auto colors = [&](const Simplex& s) {
    std::vector<int> c;
    for (VertexId v : s) c.push_back(vt[v].color);
    std::sort(c.begin(), c.end());
    return c;
  };
  for (const auto& [sigma, img] : t.delta) {
    if (!t.input.contains(sigma)) {
      problems.push_back("Δ is defined on a simplex that is not in the input");
      continue;
    }
  }
  for (const auto& sigma : t.input.simplices()) {
    ChromaticComplex img = t.image(sigma);
    const std::string where = "Δ of input simplex of dimension " + std::to_string(sigma.size() - 1) + " with colors " +
                              [&] {
                                std::string s;
                                for (int c : colors(sigma)) s += std::to_string(c);
                                return s;
                              }();
    for (const auto& o : img.simplices())
      if (!t.output.contains(o)) {
        problems.push_back(where + ": image simplex not in the output complex");
        break;
      }
    if (!validate_complex(img).empty()) problems.push_back(where + ": image is not a complex");
    if (!img.empty()) {
      const auto want = colors(sigma);
      for (const auto& top : img.maximal_simplices()) {
        if (top.size() != sigma.size()) {
          problems.push_back(where + ": image is not pure of the input dimension");
          break;
        }
        if (colors(top) != want) {
          problems.push_back(where + ": image colors differ from input colors");
          break;
        }
      }
    }
    // monotonicity on facets implies it on all faces, hence Δ(σ∩τ) ⊆ Δ(σ)∩Δ(τ)
    if (sigma.size() >= 2) {
      for (std::size_t i = 0; i < sigma.size(); ++i) {
        Simplex f = sigma;
        f.erase(f.begin() + static_cast<long>(i));
        const ChromaticComplex facet_image = t.image(f);
        for (const auto& o : facet_image.simplices())
          if (!img.contains(o)) {
            problems.push_back(where + ": image of a facet is not contained in the image");
            i = sigma.size();
            break;
          }
      }
    }
  }
  return problems;
}

TaskSpec identity_task(const ChromaticComplex& input) {
  TaskSpec t;
  t.input = input;
  t.output = input;
  for (const auto& s : input.simplices())
    t.delta.emplace(s, ChromaticComplex::closure_of(input.table(), input.dimension(), input.level(), {s}));
  return t;
}

TaskSpec affine_task(const ChromaticComplex& s, const ChromaticComplex& l) {
  if (s.table() != l.table()) throw InvalidArgument("L must be built over the vertex table of s");
  const int n = s.dimension();
  if (s.maximal_simplices().size() != 1 || s.top_dimension() != n)
    throw InvalidArgument("affine tasks need the standard simplex as input");
  if (!is_pure(l, n) || l.empty()) throw InvalidArgument("L must be pure of dimension n");
  const VertexTable& vt = s.vertex_table();
  TaskSpec t;
  t.input = s;
  t.output = l;
  for (const auto& face : s.simplices()) {
    std::vector<Simplex> fam;
    for (const auto& sigma : l.simplices())
      if (is_face(base_carrier(vt, sigma), face)) fam.push_back(sigma);
    ChromaticComplex img = ChromaticComplex::raw(l.table(), l.dimension(), l.level(), std::move(fam));
    if (!img.empty() && !is_pure(img, static_cast<int>(face.size()) - 1)) {
      std::string name;
      for (VertexId v : face) name += (name.empty() ? "" : ",") + vt.name(v, 0);
      throw InvalidArgument("L ∩ Chr^k of face {" + name + "} is not pure of dimension " +
                            std::to_string(face.size() - 1));
    }
    t.delta.emplace(face, std::move(img));
  }
  return t;
}

TaskSpec total_order_task(int n) {
  if (n < 0 || n > 4) throw InvalidArgument("total_order_task supports 0 <= n <= 4");
  ChromaticComplex s = standard_simplex(n);
  ChromaticComplex c2 = chr_iter(s, 2);
  const VertexTable& vt = s.vertex_table();
  std::vector<Simplex> tops;
  for (const auto& top : c2.simplices_of_dim(n)) {
    std::vector<int> dims;
    for (VertexId v : top) dims.push_back(carrier_dimension(vt, v));
    std::sort(dims.begin(), dims.end());
    bool perm = true;
    for (int i = 0; i <= n; ++i) perm = perm && dims[static_cast<std::size_t>(i)] == i;
    if (perm) tops.push_back(top);
  }
  std::size_t fact = 1;
  for (int i = 2; i <= n + 1; ++i) fact *= static_cast<std::size_t>(i);
  if (tops.size() != fact)
    throw InternalError("expected " + std::to_string(fact) + " total-order simplices, found " +
                        std::to_string(tops.size()));
  return affine_task(s, ChromaticComplex::closure_of(s.table(), n, 2, tops));
}

TaskSpec lt_task(int n, int t) {
  if (n < 0 || n > 4) throw InvalidArgument("lt_task supports 0 <= n <= 4");
  if (t < 0 || t > n) throw InvalidArgument("lt_task needs 0 <= t <= n");
  ChromaticComplex s = standard_simplex(n);
  ChromaticComplex c2 = chr_iter(s, 2);
  const VertexTable& vt = s.vertex_table();
  std::vector<Simplex> keep;
  for (const auto& sigma : c2.simplices()) {
    bool ok = true;
    for (VertexId v : sigma) ok = ok && carrier_dimension(vt, v) >= n - t;
    if (ok) keep.push_back(sigma);
  }
  return affine_task(s, ChromaticComplex::raw(s.table(), n, 2, std::move(keep)));
}

TaskSpec plus_completion(const TaskSpec& t) {
  VertexTable& vt = t.input.vertex_table();
  const int n = t.n();
  std::vector<VertexId> nil;
  for (int i = 0; i <= n; ++i) {
    const std::string name = "nil" + std::to_string(i);
    auto found = vt.find_base(name);
    nil.push_back(found ? *found : vt.add_base(name, i));
  }
  auto pad = [&](const Simplex& sigma, const std::vector<int>& colors) {
    Simplex out = sigma;
    std::set<int> have;
    for (VertexId v : sigma) have.insert(vt[v].color);
    for (int c : colors)
      if (!have.count(c)) out.push_back(nil[static_cast<std::size_t>(c)]);
    return make_simplex(std::move(out));
  };
  std::vector<int> all;
  for (int i = 0; i <= n; ++i) all.push_back(i);
  TaskSpec out;
  out.input = t.input;
  std::vector<Simplex> fam;
  for (const auto& sigma : t.output.simplices()) fam.push_back(pad(sigma, all));
  out.output = ChromaticComplex::closure_of(t.output.table(), n, t.output.level(), fam);
  for (const auto& tau : t.input.simplices()) {
    ChromaticComplex img = t.image(tau);
    std::vector<int> colors;
    for (VertexId v : tau) colors.push_back(vt[v].color);
    std::vector<Simplex> padded;
    for (const auto& sigma : img.simplices()) padded.push_back(pad(sigma, colors));
    out.delta.emplace(tau, ChromaticComplex::closure_of(t.output.table(), n, t.output.level(), padded));
  }
  return out;
}

}  // namespace gact
