#include "gact/runs.hpp"

#include "gact/errors.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <numeric>

namespace gact {

std::vector<int> members(ProcessSet s) {
  std::vector<int> out;
  for (int p = 0; p < 32; ++p)
    if (contains(s, p)) out.push_back(p);
  return out;
}

std::string format_set(ProcessSet s) {
  std::string out = "{";
  bool first = true;
  for (int p : members(s)) {
    if (!first) out += ",";
    out += "p" + std::to_string(p);
    first = false;
  }
  return out + "}";
}

ProcessSet OrderedPartition::set() const {
  ProcessSet s = 0;
  for (ProcessSet b : blocks) s |= b;
  return s;
}

ProcessSet OrderedPartition::seen_by(int p) const {
  ProcessSet s = 0;
  for (ProcessSet b : blocks) {
    s |= b;
    if (contains(b, p)) return s;
  }
  return 0;
}

OrderedPartition restrict(const OrderedPartition& part, ProcessSet keep) {
  OrderedPartition out;
  for (ProcessSet b : part.blocks)
    if (b & keep) out.blocks.push_back(b & keep);
  return out;
}

const std::vector<OrderedPartition>& ordered_partitions_of(ProcessSet s) {
  static std::map<ProcessSet, std::vector<OrderedPartition>> cache;
  auto it = cache.find(s);
  if (it != cache.end()) return it->second;
  std::vector<int> elems = members(s);
  const int k = static_cast<int>(elems.size());
  std::vector<OrderedPartition> out;
  if (k > 0) {
    // blocks as an assignment of elements to block indices, surjective onto 0..m-1
    std::vector<int> assign(static_cast<std::size_t>(k), 0);
    while (true) {
      int used = *std::max_element(assign.begin(), assign.end()) + 1;
      std::vector<ProcessSet> blocks(static_cast<std::size_t>(used), 0);
      for (int i = 0; i < k; ++i) blocks[static_cast<std::size_t>(assign[static_cast<std::size_t>(i)])] |= 1u << elems[static_cast<std::size_t>(i)];
      if (std::all_of(blocks.begin(), blocks.end(), [](ProcessSet b) { return b != 0; }))
        out.push_back(OrderedPartition{blocks});
      int i = 0;
      while (i < k && assign[static_cast<std::size_t>(i)] == k - 1) assign[static_cast<std::size_t>(i++)] = 0;
      if (i == k) break;
      ++assign[static_cast<std::size_t>(i)];
    }
  }
  return cache.emplace(s, std::move(out)).first->second;
}

const OrderedPartition& RunSpec::round(int k) const {
  if (k < 1) throw InvalidArgument("rounds are numbered from 1");
  const int p = static_cast<int>(prefix.size());
  if (k <= p) return prefix[static_cast<std::size_t>(k - 1)];
  if (tail.empty()) throw InvalidArgument("round beyond a finite schedule");
  return tail[static_cast<std::size_t>((k - p - 1) % period())];
}

std::vector<std::string> validate_runspec(const RunSpec& r) {
  std::vector<std::string> problems;
  if (r.processes < 1 || r.processes > 31) {
    problems.push_back("process count must be between 1 and 31");
    return problems;
  }
  const ProcessSet all = (1u << r.processes) - 1;
  auto check_part = [&](const OrderedPartition& part, const char* kind, std::size_t i) {
    auto where = [&] { return std::string(kind) + std::to_string(i + 1); };
    ProcessSet seen = 0;
    if (part.blocks.empty()) problems.push_back(where() + ": empty round");
    for (ProcessSet b : part.blocks) {
      if (b == 0) problems.push_back(where() + ": empty block");
      if (b & ~all) problems.push_back(where() + ": unknown process");
      if (b & seen) problems.push_back(where() + ": process in two blocks");
      seen |= b;
    }
  };
  for (std::size_t i = 0; i < r.prefix.size(); ++i) check_part(r.prefix[i], "round ", i);
  for (std::size_t i = 0; i < r.tail.size(); ++i) check_part(r.tail[i], "tail round ", i);
  if (!problems.empty()) return problems;
  for (std::size_t i = 1; i < r.prefix.size(); ++i)
    if (r.prefix[i].set() & ~r.prefix[i - 1].set())
      problems.push_back("round " + std::to_string(i + 1) + " has a process missing from the previous round");
  if (r.tail.empty()) {
    problems.push_back("tail is empty (finite schedule)");
    return problems;
  }
  const ProcessSet f = r.tail[0].set();
  for (const auto& part : r.tail)
    if (part.set() != f) problems.push_back("tail rounds have different participants");
  if (!r.prefix.empty() && (f & ~r.prefix.back().set()))
    problems.push_back("tail has a process missing from the last prefix round");
  return problems;
}

// Same checks as validate_runspec without building messages.
static bool valid_run(const RunSpec& r) {
  if (r.processes < 1 || r.processes > 31 || r.tail.empty()) return false;
  const ProcessSet all = (1u << r.processes) - 1;
  ProcessSet prev = all;
  auto part_set = [&](const OrderedPartition& part, ProcessSet& out) {
    if (part.blocks.empty()) return false;
    out = 0;
    for (ProcessSet b : part.blocks) {
      if (b == 0 || (b & ~all) || (b & out)) return false;
      out |= b;
    }
    return true;
  };
  for (const auto& part : r.prefix) {
    ProcessSet s = 0;
    if (!part_set(part, s) || (s & ~prev)) return false;
    prev = s;
  }
  ProcessSet f = 0;
  if (!part_set(r.tail[0], f) || (f & ~prev)) return false;
  for (std::size_t i = 1; i < r.tail.size(); ++i) {
    ProcessSet s = 0;
    if (!part_set(r.tail[i], s) || s != f) return false;
  }
  return true;
}

void require_run(const RunSpec& r) {
  if (valid_run(r)) return;
  auto problems = validate_runspec(r);
  if (!problems.empty()) throw InvalidArgument("invalid run: " + problems.front());
}

Participation participation(const RunSpec& r) {
  require_run(r);
  return Participation{r.round(1).set(), r.tail[0].set()};
}

static int horizon(const RunSpec& a, const RunSpec& b) {
  const int la = a.period(), lb = b.period();
  return static_cast<int>(std::max(a.prefix.size(), b.prefix.size())) + std::lcm(la, lb);
}

bool extends(const RunSpec& r, const RunSpec& r2) {
  require_run(r);
  require_run(r2);
  if (r.processes != r2.processes) throw InvalidArgument("runs over different process counts");
  const int h = horizon(r, r2);
  std::vector<bool> eq(static_cast<std::size_t>(r.processes), true);
  for (int k = 1; k <= h; ++k) {
    const OrderedPartition& a = r.round(k);
    const OrderedPartition& b = r2.round(k);
    if (a.set() & ~b.set()) return false;
    std::vector<bool> next(eq.size(), false);
    for (int p : members(a.set())) {
      ProcessSet sa = a.seen_by(p), sb = b.seen_by(p);
      bool same = sa == sb;
      for (int q : members(sa)) same = same && eq[static_cast<std::size_t>(q)];
      if (!same) return false;
      next[static_cast<std::size_t>(p)] = true;
    }
    eq = std::move(next);
  }
  return true;
}

// Processes in blocks up to the last block meeting `need`.
static ProcessSet down_closure(const OrderedPartition& part, ProcessSet need) {
  ProcessSet acc = 0, out = 0;
  for (ProcessSet b : part.blocks) {
    acc |= b;
    if (b & need) out = acc;
  }
  return out;
}

namespace {
struct Closure {
  std::vector<ProcessSet> prefix;
  std::vector<ProcessSet> tail;
};

// Least sub-run of r in which q participates forever with unchanged views.
Closure closure_of(const RunSpec& r, int q) {
  const ProcessSet qs = 1u << q;
  const int L = r.period();
  Closure c;
  c.tail.assign(static_cast<std::size_t>(L), qs);
  bool changed = true;
  while (changed) {
    changed = false;
    for (int ph = L - 1; ph >= 0; --ph) {
      ProcessSet need = c.tail[static_cast<std::size_t>((ph + 1) % L)] | qs;
      ProcessSet a = down_closure(r.tail[static_cast<std::size_t>(ph)], need);
      if (a != c.tail[static_cast<std::size_t>(ph)]) {
        c.tail[static_cast<std::size_t>(ph)] = a;
        changed = true;
      }
    }
  }
  c.prefix.assign(r.prefix.size(), 0);
  ProcessSet need = c.tail[0];
  for (int k = static_cast<int>(r.prefix.size()) - 1; k >= 0; --k) {
    need = down_closure(r.prefix[static_cast<std::size_t>(k)], need | qs);
    c.prefix[static_cast<std::size_t>(k)] = need;
  }
  return c;
}

bool closure_le(const Closure& a, const Closure& b) {
  for (std::size_t i = 0; i < a.prefix.size(); ++i)
    if (a.prefix[i] & ~b.prefix[i]) return false;
  for (std::size_t i = 0; i < a.tail.size(); ++i)
    if (a.tail[i] & ~b.tail[i]) return false;
  return true;
}

Closure minimal_closure(const RunSpec& r) {
  require_run(r);
  std::vector<Closure> cands;
  for (int q : members(r.tail[0].set())) cands.push_back(closure_of(r, q));
  for (const auto& c : cands) {
    bool below_all = true;
    for (const auto& d : cands) below_all = below_all && closure_le(c, d);
    if (below_all) return c;
  }
  throw InternalError("no least sub-run below the given run");
}
}  // namespace

RunSpec minimal(const RunSpec& r) {
  Closure c = minimal_closure(r);
  RunSpec out;
  out.processes = r.processes;
  for (std::size_t i = 0; i < r.prefix.size(); ++i) out.prefix.push_back(restrict(r.prefix[i], c.prefix[i]));
  for (std::size_t i = 0; i < r.tail.size(); ++i) out.tail.push_back(restrict(r.tail[i], c.tail[i]));
  return out;
}

ProcessSet fast(const RunSpec& r) {
  Closure c = minimal_closure(r);
  ProcessSet f = c.tail[0];
  for (ProcessSet t : c.tail) f &= t;
  return f;
}

ProcessSet slow(const RunSpec& r) {
  const ProcessSet all = (1u << r.processes) - 1;
  return all & ~fast(r);
}

Rational run_distance(const RunSpec& a, const RunSpec& b) {
  require_run(a);
  require_run(b);
  if (a.processes != b.processes) throw InvalidArgument("runs over different process counts");
  const int h = horizon(a, b);
  for (int k = 1; k <= h; ++k)
    if (a.round(k) != b.round(k)) return Rational(1, k);
  return 0;
}

ViewTracker::ViewTracker(VertexTable& table, int processes, const Simplex& omega) : table_(&table) {
  if (processes < 1 || processes > 31) throw InvalidArgument("process count must be between 1 and 31");
  current_.assign(static_cast<std::size_t>(processes), 0);
  for (VertexId v : omega) {
    int c = table[v].color;
    if (c < 0 || c >= processes) throw InvalidArgument("input vertex color outside the process range");
    if (contains(participants_, c)) throw InvalidArgument("input simplex repeats a color");
    participants_ |= 1u << c;
    current_[static_cast<std::size_t>(c)] = v;
  }
}

void ViewTracker::step(const OrderedPartition& part) {
  const ProcessSet s = part.set();
  if (s & ~participants_) throw InvalidArgument("round contains a process without a view");
  std::vector<VertexId> next = current_;
  ProcessSet acc = 0;
  std::vector<VertexId> seen;
  for (ProcessSet b : part.blocks) {
    acc |= b;
    seen.clear();
    for (int q : members(acc)) seen.push_back(current_[static_cast<std::size_t>(q)]);
    for (int p : members(b)) next[static_cast<std::size_t>(p)] = table_->intern(p, seen);
  }
  current_ = std::move(next);
  participants_ = s;
  ++round_;
}

std::optional<VertexId> ViewTracker::view(int p) const {
  if (!contains(participants_, p)) return std::nullopt;
  return current_[static_cast<std::size_t>(p)];
}

Simplex ViewTracker::simplex() const {
  Simplex out;
  for (int p : members(participants_)) out.push_back(current_[static_cast<std::size_t>(p)]);
  return make_simplex(std::move(out));
}

std::vector<std::optional<VertexId>> views(VertexTable& t, const RunSpec& r, int k, const Simplex& omega) {
  if (k < 0) throw InvalidArgument("negative round");
  if (k > 64) throw BudgetExceeded("view depth beyond 64 rounds");
  ViewTracker vt(t, r.processes, omega);
  if (k == 0) {
    // round 0: inputs of the processes that take a step
    ProcessSet part = r.prefix.empty() && r.tail.empty() ? vt.participants() : r.round(1).set();
    std::vector<std::optional<VertexId>> out(static_cast<std::size_t>(r.processes));
    for (int p : members(part & vt.participants())) out[static_cast<std::size_t>(p)] = vt.view(p);
    return out;
  }
  for (int i = 1; i <= k; ++i) vt.step(r.round(i));
  std::vector<std::optional<VertexId>> out(static_cast<std::size_t>(r.processes));
  for (int p = 0; p < r.processes; ++p) out[static_cast<std::size_t>(p)] = vt.view(p);
  return out;
}

ViewTree decode_view(const VertexTable& t, VertexId v, int round) {
  ViewTree out;
  out.process = t[v].color;
  out.round = round;
  if (t[v].natural_level > round) throw InvalidArgument("vertex is not a view at this round");
  if (round == 0) {
    out.input = v;
    return out;
  }
  for (VertexId u : t.carrier_at(v, round)) out.seen.push_back(decode_view(t, u, round - 1));
  std::sort(out.seen.begin(), out.seen.end(),
            [](const ViewTree& a, const ViewTree& b) { return a.process < b.process; });
  return out;
}

VertexId encode_view(VertexTable& t, const ViewTree& view) {
  if (view.round == 0) {
    if (t[view.input].color != view.process) throw InvalidArgument("input vertex has the wrong color");
    return view.input;
  }
  std::vector<VertexId> seen;
  bool self = false;
  for (const auto& s : view.seen) {
    if (s.round != view.round - 1) throw InvalidArgument("seen view from the wrong round");
    self = self || s.process == view.process;
    seen.push_back(encode_view(t, s));
  }
  if (!self) throw InvalidArgument("a view must contain the process's own previous view");
  return t.intern(view.process, seen);
}

std::vector<Simplex> run_to_simplices(VertexTable& t, const RunSpec& r, int depth, const Simplex& omega) {
  require_run(r);
  if (depth < 0) throw InvalidArgument("negative depth");
  ViewTracker vt(t, r.processes, omega);
  const ProcessSet part = r.round(1).set();
  if (part & ~vt.participants()) throw InvalidArgument("input simplex misses a participating color");
  std::vector<Simplex> out;
  Simplex s0;
  for (int p : members(part)) s0.push_back(*vt.view(p));
  out.push_back(make_simplex(std::move(s0)));
  for (int k = 1; k <= depth; ++k) {
    vt.step(r.round(k));
    out.push_back(vt.simplex());
  }
  return out;
}

bool is_primitive(const std::vector<OrderedPartition>& word) {
  const std::size_t n = word.size();
  for (std::size_t d = 1; d < n; ++d) {
    if (n % d) continue;
    bool same = true;
    for (std::size_t i = 0; i < n && same; ++i) same = word[i] == word[(i + d) % n];
    if (same) return false;
  }
  return true;
}

namespace {
using u128 = unsigned __int128;
constexpr u128 kCap = static_cast<u128>(~0ull);

u128 sat_add(u128 a, u128 b) { return std::min(kCap, a + b); }
u128 sat_mul(u128 a, u128 b) {
  if (a == 0 || b == 0) return 0;
  if (a > kCap / b) return kCap;
  return a * b;
}

u128 ordered_bell(int m) {
  // a(m) = sum_{i=1..m} C(m,i) a(m-i)
  std::vector<u128> a(static_cast<std::size_t>(m + 1), 0);
  a[0] = 1;
  for (int k = 1; k <= m; ++k) {
    u128 c = 1;
    for (int i = 1; i <= k; ++i) {
      c = c * static_cast<u128>(k - i + 1) / static_cast<u128>(i);
      a[static_cast<std::size_t>(k)] = sat_add(a[static_cast<std::size_t>(k)], sat_mul(c, a[static_cast<std::size_t>(k - i)]));
    }
  }
  return a[static_cast<std::size_t>(m)];
}

int mobius(int d) {
  int result = 1;
  for (int p = 2; p * p <= d; ++p) {
    if (d % p) continue;
    d /= p;
    if (d % p == 0) return 0;
    result = -result;
  }
  if (d > 1) result = -result;
  return result;
}

u128 primitive_words(u128 alphabet, int len) {
  // sum over divisors of mu(d) * alphabet^(len/d); computed in signed 128 with saturation guard
  __int128 total = 0;
  for (int d = 1; d <= len; ++d) {
    if (len % d) continue;
    int mu = mobius(d);
    if (!mu) continue;
    u128 pw = 1;
    for (int i = 0; i < len / d; ++i) pw = sat_mul(pw, alphabet);
    if (pw == kCap) return kCap;
    total += mu * static_cast<__int128>(pw);
  }
  return static_cast<u128>(total);
}
}  // namespace

std::uint64_t count_runs(int n, int depth, int period) {
  if (n < 0 || n > 30) throw InvalidArgument("process count out of range");
  if (depth < 0 || period < 0) throw InvalidArgument("depth and period must be nonnegative");
  const int N = n + 1;
  // ways[m]: prefixes ending in a round with exactly m participants out of a fixed set
  // tracked as counts per final size, starting from all N processes available
  std::vector<u128> per_size(static_cast<std::size_t>(N + 1), 0);
  per_size[static_cast<std::size_t>(N)] = 1;  // "round 0": all processes available
  auto binom = [](int a, int b) {
    u128 c = 1;
    for (int i = 1; i <= b; ++i) c = c * static_cast<u128>(a - i + 1) / static_cast<u128>(i);
    return c;
  };
  for (int k = 1; k <= depth; ++k) {
    std::vector<u128> next(per_size.size(), 0);
    for (int m = 1; m <= N; ++m) {
      if (!per_size[static_cast<std::size_t>(m)]) continue;
      for (int j = 1; j <= m; ++j) {
        u128 ways = sat_mul(sat_mul(per_size[static_cast<std::size_t>(m)], binom(m, j)), ordered_bell(j));
        next[static_cast<std::size_t>(j)] = sat_add(next[static_cast<std::size_t>(j)], ways);
      }
    }
    per_size = std::move(next);
  }
  u128 total = 0;
  for (int m = 1; m <= N; ++m) {
    u128 base = per_size[static_cast<std::size_t>(m)];
    if (!base) continue;
    if (period == 0) {
      total = sat_add(total, base);
      continue;
    }
    for (int f = 1; f <= m; ++f) {
      u128 tails = sat_mul(binom(m, f), primitive_words(ordered_bell(f), period));
      total = sat_add(total, sat_mul(base, tails));
    }
  }
  return static_cast<std::uint64_t>(std::min(total, kCap));
}

std::uint64_t enumeration_budget() {
  const char* env = std::getenv("GACT_ENUM_BUDGET");
  if (!env || !*env) return 10'000'000ull;
  char* end = nullptr;
  unsigned long long v = std::strtoull(env, &end, 10);
  if (end == env || *end != '\0') throw InvalidArgument("GACT_ENUM_BUDGET must be a positive integer");
  return v;
}

void throw_budget(std::uint64_t count) {
  throw BudgetExceeded("enumeration of " + std::to_string(count) + " runs exceeds the budget of " +
                       std::to_string(enumeration_budget()) + " (GACT_ENUM_BUDGET)");
}

void enumerate_runs(int n, int depth, int period, const std::function<void(const RunSpec&)>& visit) {
  struct None {};
  walk_runs(n, depth, period, None{}, [](const None& s, const OrderedPartition&, int) { return s; },
            [&](const None&, const RunSpec& r) { visit(r); });
}

}  // namespace gact
