#pragma once

#include "gact/geometry.hpp"
#include "gact/models.hpp"
#include "gact/solvability.hpp"
#include "gact/tasks.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace gact {

/// One level C_k of a terminating subdivision together with the maximal simplices and their lineage.
struct SubdivisionLevel {
  int k = 0;
  ChromaticComplex complex;
  std::vector<Simplex> tops;
  std::vector<int> parent;                 ///< index into the previous level's tops
  std::vector<std::vector<int>> children;  ///< indices into the next level's tops
  std::vector<bool> top_stable;            ///< top belongs to Σ_k
  std::unordered_map<VertexId, std::vector<int>> tops_of_vertex;

  /// Indices of the tops containing every vertex of s.
  std::vector<int> tops_containing(const Simplex& s) const;
};

/**
 * One step of partial chromatic subdivision: simplices in `stable` are kept, the others are
 * subdivided, and a subdivided vertex whose carrier is stable collapses onto the carrier's
 * vertex of the same color. `stable` must be downward closed and contained in c.
 * With `children` non-null it receives, per maximal simplex of c, the produced maximal simplices.
 */
ChromaticComplex partial_chr_step(const ChromaticComplex& c, const std::vector<Simplex>& stable,
                                  std::vector<std::vector<Simplex>>* children = nullptr);

/// Geometric check of a subdivision of the base complex, done per base maximal simplex.
GeometryReport check_subdivision_of_base(const ChromaticComplex& c, const ChromaticComplex& base);

/**
 * Terminating subdivision (C_k, Σ_k): materialized level by level from a schedule that names
 * the newly stable simplices of C_k.
 */
class TerminatingSubdivision {
 public:
  using Schedule = std::function<std::vector<Simplex>(const SubdivisionLevel& level)>;

  TerminatingSubdivision(ChromaticComplex base, Schedule schedule, bool validate_geometry = true);

  /// Builds C_0..C_depth and Σ_0..Σ_depth.
  void materialize(int depth);
  int materialized() const { return static_cast<int>(levels_.size()) - 1; }
  const SubdivisionLevel& level(int k) const;
  const ChromaticComplex& base() const { return levels_.at(0).complex; }
  const TablePtr& table() const { return levels_.at(0).complex.table(); }

  bool is_stable(const Simplex& s, int k) const;
  /// Round at which s became stable, or -1.
  int stable_since(const Simplex& s) const;
  /// Newly stable simplices of round k (downward closed union with earlier rounds gives Σ_k).
  std::vector<Simplex> newly_stable(int k) const;
  /// K = union of Σ_k for k <= depth.
  ChromaticComplex stable_complex(int depth) const;

  struct Location {
    int top = -1;   ///< maximal simplex of C_k containing the point
    Simplex face;   ///< smallest face of that simplex containing the point
  };
  /// Carrier in C_k of a vertex that is a view at round k (a vertex of Chr^k of the base).
  Location locate_view(VertexId v, int k);
  /// Carrier in C_k of a simplex of Chr^k of the base.
  Simplex carrier_of_view_simplex(const Simplex& sigma, int k);
  /// Every maximal simplex of C_k containing `face` is stable.
  bool closed_star_stable(const Simplex& face, int k) const;

 private:
  void build_next();
  void set_stable(int k);

  Schedule schedule_;
  bool validate_;
  std::vector<SubdivisionLevel> levels_;
  std::map<Simplex, int> since_;
  std::vector<std::vector<Simplex>> new_stable_;

  struct CacheEntry {
    std::uint64_t serial = 0;
    std::vector<std::pair<int, Location>> by_level;
  };
  std::vector<CacheEntry> cache_;
};

using TSubPtr = std::shared_ptr<TerminatingSubdivision>;

/// Chr^k terminated: nothing stable before level k, everything stable at level k.
TSubPtr chr_terminated(const ChromaticComplex& base, int k);
/// Explicit schedule: the simplices listed for each level become stable there.
TSubPtr explicit_subdivision(const ChromaticComplex& base, std::map<int, std::vector<Simplex>> schedule);

/// δ: vertices of K -> vertices of O.
struct DecisionMapGACT {
  std::map<VertexId, VertexId> delta;
};

struct AdmissibilityReport {
  bool ok = true;
  std::uint64_t runs_checked = 0;
  int latest_round = 0;  ///< largest round at which some run became admitted
  std::optional<RunSpec> counterexample;
  Simplex omega;
};
/// Every run of M (bounded enumeration) reaches a stable carrier by the horizon.
AdmissibilityReport admissible_check(TerminatingSubdivision& t, const TaskSpec& task, const ModelSpec& m,
                                     const SolvabilityBounds& bounds);

/// Violations of δ(τ) ∈ Δ(carrier of τ) over every stable simplex up to `depth`; empty means (b) holds.
std::vector<std::string> check_delta_carrier(const TerminatingSubdivision& t, const DecisionMapGACT& d,
                                             const TaskSpec& task, int depth);

struct GactReport {
  bool ok = true;
  bool condition_b = true;
  std::vector<std::string> b_violations;
  std::size_t stable_simplices_checked = 0;
  AdmissibilityReport admissibility;
  SolvabilityBounds bounds;
};
GactReport gact_verify(TerminatingSubdivision& t, const DecisionMapGACT& d, const TaskSpec& task, const ModelSpec& m,
                       const SolvabilityBounds& bounds);

/**
 * Protocol induced by (T, δ): a process decides at round k once every maximal simplex of C_k
 * around the carrier of its view is stable, and outputs δ of the carrier's vertex of its color.
 */
class GactProtocol : public Protocol {
 public:
  GactProtocol(TSubPtr t, DecisionMapGACT d) : t_(std::move(t)), d_(std::move(d)) {}
  std::optional<VertexId> decide(int round, VertexId view) const override;

 private:
  TSubPtr t_;
  DecisionMapGACT d_;
};
std::shared_ptr<GactProtocol> protocol_from_gact(TSubPtr t, const DecisionMapGACT& d);

/// Table of every defined decision on views up to `max_round` (views of Chr^j of the base, j <= max_round).
std::shared_ptr<TableProtocol> extract_protocol(const Protocol& p, const ChromaticComplex& base, int max_round);

struct SubdivFromProtocol {
  TSubPtr subdivision;
  DecisionMapGACT delta;
  int levels = 0;
};
/// Σ_k = views in the domain of Π that form simplices of C_k, over the enumerated runs of M.
SubdivFromProtocol subdiv_from_protocol(const Protocol& p, const TaskSpec& task, const ModelSpec& m,
                                        const SolvabilityBounds& bounds);

}  // namespace gact
