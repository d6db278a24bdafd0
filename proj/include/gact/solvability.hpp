#pragma once

#include "gact/models.hpp"
#include "gact/tasks.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace gact {

/// Partial decision function on views: (round, view vertex) -> output vertex.
class Protocol {
 public:
  virtual ~Protocol() = default;
  virtual std::optional<VertexId> decide(int round, VertexId view) const = 0;
};

/// Protocol given by an explicit finite table.
class TableProtocol : public Protocol {
 public:
  using Key = std::pair<int, VertexId>;
  std::map<Key, VertexId> entries;

  std::optional<VertexId> decide(int round, VertexId view) const override;
};

/// η: vertices of Chr^k I -> vertices of O.
struct DecisionMapACT {
  int k = 0;
  std::map<VertexId, VertexId> eta;
};

struct ProcessOutcome {
  int decided_round = -1;
  std::optional<VertexId> value;
  int unstable_round = -1;  ///< first round with a different defined value
};
/// Simulates rounds 0..rounds of r on input omega.
std::vector<ProcessOutcome> run_protocol(const Protocol& p, VertexTable& t, const RunSpec& r, const Simplex& omega,
                                         int rounds);

struct Counterexample {
  RunSpec run;
  Simplex omega;
  int round = 0;
  int condition = 0;  ///< 1: stability/termination, 2: outputs not allowed by Δ
  std::string detail;
};

struct SolvabilityBounds {
  int depth = 0;    ///< prefix rounds of enumerated runs
  int period = 1;   ///< tail period of enumerated runs
  int horizon = 0;  ///< last round simulated (>= depth)
};

struct SolvabilityReport {
  bool ok = true;
  std::uint64_t runs_checked = 0;
  SolvabilityBounds bounds;
  std::optional<Counterexample> counterexample;
};

/**
 * Bounded check of both solvability conditions over every run of M with the given prefix
 * depth and tail period, for every top input simplex, simulating rounds up to the horizon.
 * A process outputs at its first defined round; later defined values must agree. The outputs
 * produced so far must always form a simplex of Δ(ω restricted to part(r)).
 */
SolvabilityReport check_protocol_solvability(const Protocol& p, const TaskSpec& task, const ModelSpec& m,
                                             const SolvabilityBounds& bounds);

struct ActObstruction {
  int k = 0;
  std::string reason;
  VertexId vertex = 0;  ///< for Δ-emptiness: vertex whose carrier image has no vertex of its color
  Simplex carrier;
  std::uint64_t nodes = 0;
};

struct ActResult {
  bool found = false;
  DecisionMapACT map;
  std::vector<ActObstruction> failures;  ///< one per k tried without success
};

/// Smallest k <= k_max with a chromatic carrier-respecting map Chr^k I -> O.
ActResult act_search(const TaskSpec& task, int k_max);

/// Violations of chromaticity, simpliciality or the carrier condition; empty means valid.
std::vector<std::string> act_verify(const DecisionMapACT& map, const TaskSpec& task);

/// Π(view at round k) = η(view); undefined at every other round.
std::shared_ptr<TableProtocol> protocol_from_map(const DecisionMapACT& map, const TaskSpec& task);

/// η_{k+1}(v) = η_k(own vertex of v's carrier).
DecisionMapACT compose_with_projection(const DecisionMapACT& map, const TaskSpec& task);

}  // namespace gact
