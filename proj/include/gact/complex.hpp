#pragma once

#include "gact/vertex_table.hpp"

#include <string>
#include <vector>

namespace gact {

/**
 * Finite chromatic complex over a shared vertex table. `dimension` is the number of
 * colors minus one; `level` is the subdivision depth used when naming vertices.
 * The family of simplices may be raw (not downward closed); validate_complex says so.
 */
class ChromaticComplex {
 public:
  ChromaticComplex() = default;
  ChromaticComplex(TablePtr table, int dimension, int level = 0);

  /// Downward closure of `family`.
  static ChromaticComplex closure_of(TablePtr table, int dimension, int level, const std::vector<Simplex>& family);
  /// Exactly `family`, no closure.
  static ChromaticComplex raw(TablePtr table, int dimension, int level, std::vector<Simplex> family);

  const TablePtr& table() const { return table_; }
  VertexTable& vertex_table() const { return *table_; }
  int dimension() const { return dimension_; }
  int level() const { return level_; }
  void set_level(int level) { level_ = level; }

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<Simplex>& simplices() const { return simplices_; }
  bool empty() const { return simplices_.empty(); }
  bool contains(const Simplex& s) const;
  bool has_vertex(VertexId v) const;

  /// Highest simplex dimension present, -1 when empty.
  int top_dimension() const;
  std::vector<Simplex> maximal_simplices() const;
  std::vector<Simplex> simplices_of_dim(int d) const;
  std::size_t count_dim(int d) const;

  std::vector<int> colors_of(const Simplex& s) const;

 private:
  void rebuild_vertices();

  TablePtr table_;
  int dimension_ = 0;
  int level_ = 0;
  std::vector<VertexId> vertices_;
  std::vector<Simplex> simplices_;
};

bool operator==(const ChromaticComplex& a, const ChromaticComplex& b);

/// Every nonempty face of every simplex in the family, sorted.
std::vector<Simplex> downward_closure(const std::vector<Simplex>& family);
/// All nonempty faces of one simplex.
std::vector<Simplex> faces_of(const Simplex& s);

/// Problems found; empty means valid.
std::vector<std::string> validate_complex(const ChromaticComplex& c);

struct LocalStructure {
  std::vector<Simplex> star;         ///< simplices containing σ
  std::vector<Simplex> closed_star;  ///< their faces
  std::vector<Simplex> link;         ///< faces of the star disjoint from σ
};
LocalStructure local_structure(const ChromaticComplex& c, const Simplex& sigma);

ChromaticComplex skeleton(const ChromaticComplex& c, int k);
bool is_pure(const ChromaticComplex& c, int d);

/// Barycentric subdivision; vertex color = dimension of the simplex it stands for.
ChromaticComplex barycentric(const ChromaticComplex& c);

enum class Tristate { False, True, Unknown };
const char* to_string(Tristate t);

/// Connectivity of a simplicial complex given as a family of simplices.
bool is_nonempty(const std::vector<Simplex>& family);
bool is_path_connected(const std::vector<Simplex>& family);
/// Greedy elementary collapses down to a point. True means contractible; false is inconclusive.
bool collapses_to_point(const std::vector<Simplex>& family);
/// k-connectedness: exact for k <= 0, collapsibility-based (sufficient only) for k >= 1.
Tristate is_k_connected(const std::vector<Simplex>& family, int k);

struct LinkConnectivity {
  Tristate verdict = Tristate::True;
  Simplex witness;   ///< simplex whose link failed (or was undecided)
  int required = 0;  ///< connectivity degree required at the witness
};
/// Link of every simplex σ must be (d - dim σ - 2)-connected, d = top dimension.
LinkConnectivity is_link_connected(const ChromaticComplex& c);

}  // namespace gact
