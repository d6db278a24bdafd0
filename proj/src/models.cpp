#include "gact/models.hpp"

#include "gact/errors.hpp"

#include <algorithm>

namespace gact {

ModelSpec ModelSpec::wait_free() {
  ModelSpec m;
  m.kind = Kind::WaitFree;
  return m;
}

ModelSpec ModelSpec::resilient(int t) {
  if (t < 0) throw InvalidArgument("resilience must be nonnegative");
  ModelSpec m;
  m.kind = Kind::Resilient;
  m.t = t;
  return m;
}

ModelSpec ModelSpec::obstruction_free(int k) {
  if (k < 1) throw InvalidArgument("obstruction-freedom needs k >= 1");
  ModelSpec m;
  m.kind = Kind::ObstructionFree;
  m.k = k;
  return m;
}

ModelSpec ModelSpec::adversary(std::vector<ProcessSet> slow_sets) {
  std::sort(slow_sets.begin(), slow_sets.end());
  slow_sets.erase(std::unique(slow_sets.begin(), slow_sets.end()), slow_sets.end());
  ModelSpec m;
  m.kind = Kind::Adversary;
  m.slow_sets = std::move(slow_sets);
  return m;
}

ModelSpec ModelSpec::custom(std::string name, std::function<bool(const RunSpec&)> predicate) {
  if (!predicate) throw InvalidArgument("custom model needs a predicate");
  ModelSpec m;
  m.kind = Kind::Custom;
  m.name = std::move(name);
  m.predicate = std::move(predicate);
  return m;
}

std::string ModelSpec::describe() const {
  switch (kind) {
    case Kind::WaitFree: return "wait-free";
    case Kind::Resilient: return std::to_string(t) + "-resilient";
    case Kind::ObstructionFree: return std::to_string(k) + "-obstruction-free";
    case Kind::Adversary: {
      std::string s = "adversary[";
      for (std::size_t i = 0; i < slow_sets.size(); ++i) s += (i ? " " : "") + format_set(slow_sets[i]);
      return s + "]";
    }
    default: return "custom:" + name;
  }
}

void check_model(const ModelSpec& m, int n) {
  const ProcessSet all = (1u << (n + 1)) - 1;
  switch (m.kind) {
    case ModelSpec::Kind::Resilient:
      if (m.t > n) throw InvalidArgument("resilience t must be at most n");
      break;
    case ModelSpec::Kind::ObstructionFree:
      if (m.k > n + 1) throw InvalidArgument("obstruction-freedom k must be at most n+1");
      break;
    case ModelSpec::Kind::Adversary:
      for (ProcessSet s : m.slow_sets) {
        if (s & ~all) throw InvalidArgument("adversary set names an unknown process");
        if (s == all) throw InvalidArgument("adversary set makes every process slow");
      }
      break;
    default: break;
  }
}

bool model_contains_fast(const ModelSpec& m, const RunSpec& r, ProcessSet fast_set) {
  const int N = r.processes;
  switch (m.kind) {
    case ModelSpec::Kind::WaitFree: return true;
    case ModelSpec::Kind::Resilient: return popcount(fast_set) >= N - m.t;
    case ModelSpec::Kind::ObstructionFree: return popcount(fast_set) <= m.k;
    case ModelSpec::Kind::Adversary: {
      ProcessSet s = ((1u << N) - 1) & ~fast_set;
      return std::binary_search(m.slow_sets.begin(), m.slow_sets.end(), s);
    }
    case ModelSpec::Kind::Custom: return m.predicate(r);
  }
  return false;
}

bool model_contains(const ModelSpec& m, const RunSpec& r) {
  require_run(r);
  if (m.kind == ModelSpec::Kind::WaitFree) return true;
  if (m.kind == ModelSpec::Kind::Custom) return m.predicate(r);
  return model_contains_fast(m, r, fast(r));
}

void enumerate_model_runs(const ModelSpec& m, int n, int depth, int period,
                          const std::function<void(const RunSpec&)>& visit) {
  check_model(m, n);
  if (period < 1) throw InvalidArgument("model runs need a tail period of at least 1");
  enumerate_runs(n, depth, period, [&](const RunSpec& r) {
    if (model_contains(m, r)) visit(r);
  });
}

}  // namespace gact
