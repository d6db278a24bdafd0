#pragma once

#include "gact/terminating.hpp"

#include <optional>
#include <string>
#include <vector>

namespace gact {

/// Regions of s at increasing depth: R_j is a set of maximal simplices of Chr^{j+2} s.
struct RegionDecomposition {
  int n = 0;
  int t = 0;
  TablePtr table;
  std::vector<std::vector<Simplex>> tilde;    ///< maximal simplices with every vertex carrier dim >= n - t
  std::vector<std::vector<Simplex>> regions;  ///< tilde[j] minus what tilde[j-1] already covers
  std::vector<Rational> volumes;              ///< normalized volume of each region
};
RegionDecomposition regions(int n, int t, int j_max);

/// Nothing stable before level 2; from level 2 on, every maximal simplex of C_k whose vertices all lie
/// on faces of dimension >= n - t becomes stable. `base` must be a standard simplex.
TSubPtr build_res_subdivision(const ChromaticComplex& base, int t, int depth);
TSubPtr build_res_subdivision(int n, int t, int depth);

/**
 * Exact projection used to rank candidates at n = 2, t = 1: the ray from the corner nearest p
 * through p, cut with the boundary of that corner's star in Chr² s.
 */
Point radial_heuristic(const Point& p);

struct DeltaSearchResult {
  bool ok = false;
  DecisionMapGACT delta;
  std::optional<Simplex> witness;  ///< stable simplex that cannot be mapped into Δ of its carrier
  std::string reason;
  std::uint64_t nodes = 0;
};

/**
 * δ on the stable complex up to `depth`: identity on vertices shared with the output complex,
 * a backtracking search elsewhere with every stable simplex mapped into Δ of its carrier.
 */
DeltaSearchResult delta_search(TerminatingSubdivision& t, const TaskSpec& task, int depth);

}  // namespace gact
