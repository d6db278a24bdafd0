#pragma once

#include "gact/vertex_table.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace gact {

/// Bitmask of process indices (process i has color i).
using ProcessSet = std::uint32_t;

inline bool contains(ProcessSet s, int p) { return (s >> p) & 1u; }
inline int popcount(ProcessSet s) { return __builtin_popcount(s); }
std::vector<int> members(ProcessSet s);
std::string format_set(ProcessSet s);

/// One round of an iterated immediate snapshot: blocks in order of execution.
struct OrderedPartition {
  std::vector<ProcessSet> blocks;

  ProcessSet set() const;
  /// Processes seen by p: everyone in p's block or an earlier one.
  ProcessSet seen_by(int p) const;
  bool operator==(const OrderedPartition& o) const { return blocks == o.blocks; }
  bool operator!=(const OrderedPartition& o) const { return !(*this == o); }
};

/// Ordered partition restricted to a subset (empty blocks dropped).
OrderedPartition restrict(const OrderedPartition& part, ProcessSet keep);

/// Every ordered partition of `s`, in a fixed canonical order.
const std::vector<OrderedPartition>& ordered_partitions_of(ProcessSet s);

/**
 * Eventually periodic run: prefix rounds followed by the tail repeated forever.
 * An empty tail denotes a finite schedule (accepted only where noted).
 */
struct RunSpec {
  int processes = 0;
  std::vector<OrderedPartition> prefix;
  std::vector<OrderedPartition> tail;

  int period() const { return static_cast<int>(tail.size()); }
  /// Partition of round k >= 1.
  const OrderedPartition& round(int k) const;
  bool operator==(const RunSpec& o) const {
    return processes == o.processes && prefix == o.prefix && tail == o.tail;
  }
};

std::vector<std::string> validate_runspec(const RunSpec& r);
/// Throws InvalidArgument if r is not a valid run.
void require_run(const RunSpec& r);

struct Participation {
  ProcessSet part = 0;      ///< processes taking at least one step
  ProcessSet infinite = 0;  ///< processes taking infinitely many steps
};
Participation participation(const RunSpec& r);

/// r <= r2: every round of r is contained in the same round of r2 and the processes of r keep their views.
bool extends(const RunSpec& r, const RunSpec& r2);
/// Smallest run below r.
RunSpec minimal(const RunSpec& r);
ProcessSet fast(const RunSpec& r);
ProcessSet slow(const RunSpec& r);

/// 1/(1+k) with k the length of the longest common prefix of rounds, 0 for the same run.
Rational run_distance(const RunSpec& a, const RunSpec& b);

/**
 * Iterated snapshot views as vertices of Chr^k of the input. Process i starts from the
 * vertex of color i of omega.
 */
class ViewTracker {
 public:
  ViewTracker(VertexTable& table, int processes, const Simplex& omega);

  void step(const OrderedPartition& part);
  int round() const { return round_; }
  ProcessSet participants() const { return participants_; }
  const std::vector<VertexId>& current() const { return current_; }
  std::optional<VertexId> view(int p) const;
  Simplex simplex() const;

 private:
  VertexTable* table_;
  int round_ = 0;
  ProcessSet participants_ = 0;
  std::vector<VertexId> current_;
};

/// Views of all processes at round k (nullopt for non-participants).
std::vector<std::optional<VertexId>> views(VertexTable& t, const RunSpec& r, int k, const Simplex& omega);

/// Explicit view: the views seen in the previous round, down to the input vertex.
struct ViewTree {
  int process = 0;
  int round = 0;
  VertexId input = 0;
  std::vector<ViewTree> seen;
  bool operator==(const ViewTree& o) const {
    return process == o.process && round == o.round && input == o.input && seen == o.seen;
  }
};
ViewTree decode_view(const VertexTable& t, VertexId v, int round);
VertexId encode_view(VertexTable& t, const ViewTree& view);

/// sigma_0..sigma_depth; sigma_0 is the face of omega spanned by part(r).
std::vector<Simplex> run_to_simplices(VertexTable& t, const RunSpec& r, int depth, const Simplex& omega);

/// Runs over n+1 processes with exactly `depth` prefix rounds and a primitive tail of
/// exactly `period` rounds (period 0: finite schedules of `depth` rounds).
std::uint64_t count_runs(int n, int depth, int period);
/// Element budget for enumerations (GACT_ENUM_BUDGET, default 10^7).
std::uint64_t enumeration_budget();
void enumerate_runs(int n, int depth, int period, const std::function<void(const RunSpec&)>& visit);

bool is_primitive(const std::vector<OrderedPartition>& word);
[[noreturn]] void throw_budget(std::uint64_t count);

/**
 * Depth-first walk over the same runs as enumerate_runs, threading a state through the
 * prefix rounds so that work on a shared prefix is done once.
 *   step(state, partition, round) -> State
 *   leaf(state_after_prefix, run)
 */
template <class State, class Step, class Leaf>
void walk_runs(int n, int depth, int period, const State& root, Step&& step, Leaf&& leaf) {
  const std::uint64_t count = count_runs(n, depth, period);
  if (count > enumeration_budget())
    throw_budget(count);
  RunSpec spec;
  spec.processes = n + 1;
  const ProcessSet all = (n + 1 >= 32) ? ~0u : ((1u << (n + 1)) - 1);
  std::function<void(const State&, ProcessSet, int)> rec = [&](const State& st, ProcessSet avail, int k) {
    if (k > depth) {
      if (period == 0) {
        spec.tail.clear();
        leaf(st, spec);
        return;
      }
      for (ProcessSet f = avail; f; f = (f - 1) & avail) {
        const auto& alphabet = ordered_partitions_of(f);
        std::vector<std::size_t> idx(static_cast<std::size_t>(period), 0);
        while (true) {
          spec.tail.clear();
          for (std::size_t i : idx) spec.tail.push_back(alphabet[i]);
          if (is_primitive(spec.tail)) leaf(st, spec);
          std::size_t j = 0;
          while (j < idx.size() && idx[j] + 1 == alphabet.size()) idx[j++] = 0;
          if (j == idx.size()) break;
          ++idx[j];
        }
      }
      return;
    }
    for (ProcessSet s = avail; s; s = (s - 1) & avail) {
      for (const auto& part : ordered_partitions_of(s)) {
        spec.prefix.push_back(part);
        State next = step(st, part, k);
        rec(next, s, k + 1);
        spec.prefix.pop_back();
      }
    }
  };
  rec(root, all, 1);
}

}  // namespace gact
