#include "gact/subdivision.hpp"

#include "gact/errors.hpp"
#include "gact/geometry.hpp"
#include "gact/runs.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>

namespace gact {

ChromaticComplex standard_simplex(int n) {
  if (n < 0) throw InvalidArgument("standard simplex needs n >= 0");
  if (n > 30) throw InvalidArgument("standard simplex dimension too large");
  auto table = std::make_shared<VertexTable>();
  Simplex top;
  for (int i = 0; i <= n; ++i) {
    Point e(static_cast<std::size_t>(n + 1), 0);
    e[static_cast<std::size_t>(i)] = 1;
    top.push_back(table->add_base(std::to_string(i), i, e));
  }
  return ChromaticComplex::closure_of(table, n, 0, {top});
}

std::vector<std::vector<int>> ordered_partitions(int k) {
  std::vector<std::vector<int>> out;
  if (k == 0) return {{}};
  std::vector<int> assign(static_cast<std::size_t>(k), 0);
  // enumerate assignments into blocks 0..k-1 and keep the surjective ones onto a prefix
  while (true) {
    int used = *std::max_element(assign.begin(), assign.end()) + 1;
    std::vector<bool> hit(static_cast<std::size_t>(used), false);
    for (int b : assign) hit[static_cast<std::size_t>(b)] = true;
    if (std::all_of(hit.begin(), hit.end(), [](bool x) { return x; })) out.push_back(assign);
    int i = 0;
    while (i < k && assign[static_cast<std::size_t>(i)] == k - 1) assign[static_cast<std::size_t>(i++)] = 0;
    if (i == k) break;
    ++assign[static_cast<std::size_t>(i)];
  }
  return out;
}

std::vector<Simplex> chr_simplex(VertexTable& t, const Simplex& sigma) {
  const int k = static_cast<int>(sigma.size());
  std::vector<Simplex> out;
  for (const auto& blocks : ordered_partitions(k)) {
    // a vertex in block j sees every vertex in blocks 0..j
    Simplex top;
    for (int i = 0; i < k; ++i) {
      std::vector<VertexId> seen;
      for (int j = 0; j < k; ++j)
        if (blocks[static_cast<std::size_t>(j)] <= blocks[static_cast<std::size_t>(i)])
          seen.push_back(sigma[static_cast<std::size_t>(j)]);
      top.push_back(t.intern(t[sigma[static_cast<std::size_t>(i)]].color, seen));
    }
    out.push_back(make_simplex(std::move(top)));
  }
  return out;
}

namespace {

// ordered set partitions of k elements (Fubini numbers), saturating
std::uint64_t fubini(int k) {
  std::vector<std::uint64_t> a(static_cast<std::size_t>(k + 1), 0);
  a[0] = 1;
  for (int m = 1; m <= k; ++m) {
    std::uint64_t binom = 1, sum = 0;
    for (int i = 1; i <= m; ++i) {
      binom = binom * static_cast<std::uint64_t>(m - i + 1) / static_cast<std::uint64_t>(i);
      sum += binom * a[static_cast<std::size_t>(m - i)];
    }
    a[static_cast<std::size_t>(m)] = sum;
  }
  return a[static_cast<std::size_t>(k)];
}

}  // namespace

ChromaticComplex chr(const ChromaticComplex& c) {
  // refuse before allocating: tops times partitions times faces per top bounds the closure
  const int d = c.dimension();
  if (d >= 0) {
    const double predicted = static_cast<double>(c.maximal_simplices().size()) *
                             static_cast<double>(fubini(std::min(d + 1, 20))) * std::ldexp(1.0, d + 1);
    if (d + 1 > 20 || predicted > static_cast<double>(enumeration_budget()))
      throw BudgetExceeded("chromatic subdivision would hold about " + std::to_string(static_cast<std::uint64_t>(predicted)) +
                           " simplices, over the budget of " + std::to_string(enumeration_budget()) +
                           " (GACT_ENUM_BUDGET)");
  }
  std::vector<Simplex> tops;
  for (const auto& s : c.maximal_simplices()) {
    auto sub = chr_simplex(c.vertex_table(), s);
    tops.insert(tops.end(), sub.begin(), sub.end());
  }
  return ChromaticComplex::closure_of(c.table(), c.dimension(), c.level() + 1, tops);
}

ChromaticComplex chr_iter(const ChromaticComplex& c, int m) {
  if (m < 0) throw InvalidArgument("negative subdivision depth");
  ChromaticComplex cur = c;
  for (int i = 0; i < m; ++i) cur = chr(cur);
  return cur;
}

Simplex carrier_of(const VertexTable& t, const Simplex& s, int from, int to) {
  if (to > from || to < 0) throw InvalidArgument("carrier level must be between 0 and the simplex level");
  Simplex cur = make_simplex(s);
  for (int level = from; level > to; --level) {
    Simplex next;
    for (VertexId v : cur) next = simplex_union(next, t.carrier_at(v, level));
    cur = std::move(next);
  }
  return cur;
}

Simplex base_carrier(const VertexTable& t, const Simplex& s) {
  Simplex out;
  for (VertexId v : s) out = simplex_union(out, t[v].base_carrier);
  return out;
}

SubdivisionStats subdivision_stats(const ChromaticComplex& c) {
  SubdivisionStats st;
  st.total_volume = 0;
  const int d = c.top_dimension();
  st.simplices_by_dim.assign(static_cast<std::size_t>(std::max(d + 1, 0)), 0);
  for (const auto& s : c.simplices()) ++st.simplices_by_dim[s.size() - 1];
  st.vertices = c.vertices().size();
  const VertexTable& t = c.vertex_table();
  for (const auto& s : c.simplices()) {
    if (static_cast<int>(s.size()) - 1 != d) continue;
    bool coords = true;
    for (VertexId v : s) coords = coords && t[v].has_coords;
    if (!coords) continue;
    std::vector<int> support = support_of(barycenter(t, s));
    if (support.size() != s.size()) continue;
    st.total_volume += abs(normalized_volume(t, s, support));
  }
  return st;
}

}  // namespace gact
