#pragma once

#include "gact/runs.hpp"

#include <functional>
#include <string>
#include <vector>

namespace gact {

/// A set of runs described through the fast/slow split of each run.
struct ModelSpec {
  enum class Kind { WaitFree, Resilient, ObstructionFree, Adversary, Custom };
  Kind kind = Kind::WaitFree;
  int t = 0;                           ///< resilient: at most t slow processes
  int k = 0;                           ///< obstruction-free: at most k fast processes
  std::vector<ProcessSet> slow_sets;   ///< adversary: allowed slow sets, sorted
  std::function<bool(const RunSpec&)> predicate;  ///< custom
  std::string name;

  static ModelSpec wait_free();
  static ModelSpec resilient(int t);
  static ModelSpec obstruction_free(int k);
  static ModelSpec adversary(std::vector<ProcessSet> slow_sets);
  static ModelSpec custom(std::string name, std::function<bool(const RunSpec&)> predicate);

  std::string describe() const;
};

/// Throws InvalidArgument when the model is meaningless for n+1 processes.
void check_model(const ModelSpec& m, int n);
bool model_contains(const ModelSpec& m, const RunSpec& r);
/// Same as model_contains with fast(r) already known.
bool model_contains_fast(const ModelSpec& m, const RunSpec& r, ProcessSet fast_set);

void enumerate_model_runs(const ModelSpec& m, int n, int depth, int period,
                          const std::function<void(const RunSpec&)>& visit);

}  // namespace gact
