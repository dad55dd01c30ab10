#include "loadbal/local_search.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

#include "loadbal/errors.hpp"

namespace loadbal {

SlotAssignment::SlotAssignment(const JobClasses& classes, const SlotProfile& y)
    : q_(classes.num_classes()) {
  const std::size_t m = y.num_machines();
  const std::size_t n = classes.num_jobs();
  if (y.num_classes() != q_) throw InputError("slot profile has wrong number of classes");
  for (int k = 0; k < q_; ++k) {
    if (y.column_sum(k) != static_cast<std::int64_t>(classes.size(k))) {
      throw InputError("class " + std::to_string(k) + ": slot count does not match class size");
    }
  }
  p_.resize(n);
  for (JobId j = 0; j < n; ++j) p_[j] = classes.processing_time(j);
  slots_.assign(m, std::vector<std::vector<JobId>>(q_));
  offset_.assign(m, std::vector<std::size_t>(q_));
  std::size_t next = 0;
  for (MachineId i = 0; i < m; ++i) {
    for (int k = 0; k < q_; ++k) {
      offset_[i][k] = next;
      slots_[i][k].assign(static_cast<std::size_t>(y.at(i, k)), kEmpty);
      for (std::size_t s = 0; s < slots_[i][k].size(); ++s) ref_of_slot_.push_back({i, k, s});
      next += slots_[i][k].size();
    }
  }
  job_of_slot_.assign(next, kEmpty);
  slot_of_job_.resize(n);
  loads_.assign(m, 0);
}

void SlotAssignment::place(const SlotRef& s, JobId j) {
  JobId& cell = slots_[s.machine][s.job_class][s.index];
  if (cell != kEmpty) throw InternalError("slot already occupied");
  cell = j;
  job_of_slot_[slot_index(s)] = j;
  slot_of_job_[j] = s;
  loads_[s.machine] += p_[j];
}

void SlotAssignment::swap(const SlotRef& a, const SlotRef& b) {
  if (a.job_class != b.job_class) throw InternalError("swap across classes");
  JobId& ja = slots_[a.machine][a.job_class][a.index];
  JobId& jb = slots_[b.machine][b.job_class][b.index];
  loads_[a.machine] += p_[jb] - p_[ja];
  loads_[b.machine] += p_[ja] - p_[jb];
  std::swap(ja, jb);
  job_of_slot_[slot_index(a)] = ja;
  job_of_slot_[slot_index(b)] = jb;
  slot_of_job_[ja] = a;
  slot_of_job_[jb] = b;
}

std::vector<MachineId> SlotAssignment::assignment() const {
  std::vector<MachineId> out(slot_of_job_.size());
  for (JobId j = 0; j < out.size(); ++j) out[j] = slot_of_job_[j].machine;
  return out;
}

bool SlotAssignment::consistent(const JobClasses& classes) const {
  std::vector<int> seen(p_.size(), 0);
  for (MachineId i = 0; i < slots_.size(); ++i) {
    std::int64_t load = 0;
    for (int k = 0; k < q_; ++k) {
      for (std::size_t s = 0; s < slots_[i][k].size(); ++s) {
        const JobId j = slots_[i][k][s];
        if (j == kEmpty || j >= p_.size() || classes.class_of(j) != k) return false;
        if (!(slot_of_job_[j] == SlotRef{i, k, s})) return false;
        ++seen[j];
        load += p_[j];
      }
    }
    if (load != loads_[i]) return false;
  }
  return std::all_of(seen.begin(), seen.end(), [](int c) { return c == 1; });
}

SlotAssignment initial_integral(const JobClasses& classes, const SlotProfile& y) {
  SlotAssignment a(classes, y);
  for (int k = 0; k < classes.num_classes(); ++k) {
    const auto members = classes.members(k);
    std::size_t next = 0;
    for (MachineId i = 0; i < y.num_machines(); ++i) {
      for (std::size_t s = 0; s < static_cast<std::size_t>(y.at(i, k)); ++s) {
        a.place({i, k, s}, members[next++]);
      }
    }
  }
  return a;
}

bool EffectiveBounds::violates(Stage stage, MachineId i, std::int64_t load) const {
  if (stage == Stage::Overload) return Rational(load) > upper[i] + tolerance;
  return Rational(load) < lower[i] - tolerance;
}

bool EffectiveBounds::receives(Stage stage, MachineId i, std::int64_t load) const {
  if (stage == Stage::Overload) return Rational(load) <= upper[i];
  return Rational(load) >= lower[i];
}

EffectiveBounds effective_bounds(const Instance& inst, Epsilon eps, const Rational& delta) {
  EffectiveBounds b;
  const Rational widen = delta * inst.p_max();
  for (const auto& t : inst.machines()) {
    b.lower.push_back(t.lower - widen);
    b.upper.push_back(t.upper + widen);
  }
  b.tolerance = eps.value() * inst.p_max();
  return b;
}

SlotGraph build_slot_graph(const SlotAssignment& a, Stage stage, const EffectiveBounds& bounds) {
  SlotGraph g;
  g.num_slots = a.num_slots();
  g.zero_edges.resize(g.num_slots);
  g.one_edges.resize(g.num_slots);
  for (std::size_t u = 0; u < g.num_slots; ++u) {
    const SlotRef& su = a.slot_ref(u);
    if (bounds.violates(stage, su.machine, a.load(su.machine))) g.source_edges.push_back(u);
    const std::int64_t pu = a.processing_time(a.job_at(u));
    for (std::size_t v = 0; v < g.num_slots; ++v) {
      if (u == v) continue;
      const SlotRef& sv = a.slot_ref(v);
      if (sv.machine == su.machine) {
        g.zero_edges[u].push_back(v);
        continue;
      }
      if (sv.job_class != su.job_class) continue;
      const std::int64_t pv = a.processing_time(a.job_at(v));
      if (stage == Stage::Overload ? pu > pv : pu < pv) g.one_edges[u].push_back(v);
    }
  }
  return g;
}

namespace {

// 0-1 BFS. When `stop` is set it is called on every weight-1 relaxation and
// ends the search when it returns true.
template <typename Stop>
std::vector<std::int64_t> zero_one_bfs(const SlotGraph& g, std::int64_t unreachable, Stop&& stop) {
  std::vector<std::int64_t> dist(g.num_slots, unreachable);
  std::vector<bool> done(g.num_slots, false);
  std::deque<std::size_t> frontier;
  for (std::size_t v : g.source_edges) {
    if (dist[v] != 0) {
      dist[v] = 0;
      frontier.push_back(v);
    }
  }
  while (!frontier.empty()) {
    const std::size_t u = frontier.front();
    frontier.pop_front();
    if (done[u]) continue;
    done[u] = true;
    for (std::size_t v : g.zero_edges[u]) {
      if (dist[v] == unreachable || dist[u] < dist[v]) {
        dist[v] = dist[u];
        frontier.push_front(v);
      }
    }
    for (std::size_t v : g.one_edges[u]) {
      if (stop(u, v)) return dist;
      if (dist[v] == unreachable || dist[u] + 1 < dist[v]) {
        dist[v] = dist[u] + 1;
        frontier.push_back(v);
      }
    }
  }
  return dist;
}

}  // namespace

std::vector<std::int64_t> distances(const SlotGraph& g, std::int64_t unreachable) {
  return zero_one_bfs(g, unreachable, [](std::size_t, std::size_t) { return false; });
}

std::optional<Swap> find_swap_bfs(const SlotGraph& g, const SlotAssignment& a, Stage stage,
                                  const EffectiveBounds& bounds) {
  std::optional<Swap> found;
  const auto unreachable = static_cast<std::int64_t>(g.num_slots) + 1;
  zero_one_bfs(g, unreachable, [&](std::size_t u, std::size_t v) {
    const MachineId i = a.slot_ref(v).machine;
    if (!bounds.receives(stage, i, a.load(i))) return false;
    found = Swap{u, v};
    return true;
  });
  return found;
}

std::int64_t potential(const SlotAssignment& a, Stage stage, const std::vector<std::int64_t>& dist) {
  std::vector<JobId> order(a.num_slots());
  for (JobId j = 0; j < order.size(); ++j) order[j] = j;
  std::sort(order.begin(), order.end(), [&](JobId x, JobId y) {
    const std::int64_t px = a.processing_time(x);
    const std::int64_t py = a.processing_time(y);
    if (px != py) return stage == Stage::Overload ? px < py : px > py;
    return x < y;
  });
  std::int64_t total = 0;
  for (std::size_t r = 0; r < order.size(); ++r) {
    total += static_cast<std::int64_t>(r + 1) * dist[a.slot_index(a.slot_of(order[r]))];
  }
  return total;
}

namespace {

std::string describe(const SlotAssignment& a, Stage stage, const EffectiveBounds& b) {
  std::ostringstream os;
  os << "stage " << static_cast<int>(stage) << " loads:";
  for (MachineId i = 0; i < a.num_machines(); ++i) {
    os << " " << a.load(i) << " in [" << to_string(b.lower[i]) << "," << to_string(b.upper[i]) << "]";
  }
  return os.str();
}

void run_stage(SlotAssignment& a, Stage stage, const EffectiveBounds& bounds, const RoundingOptions& options,
               RoundingResult& out, std::size_t& counter) {
  const auto n = static_cast<std::int64_t>(a.num_slots());
  const std::int64_t unreachable = n + 1;
  const auto cap = static_cast<std::size_t>(n * n * n);
  auto any_violation = [&] {
    for (MachineId i = 0; i < a.num_machines(); ++i) {
      if (bounds.violates(stage, i, a.load(i))) return true;
    }
    return false;
  };
  while (any_violation()) {
    if (counter >= cap) throw InternalError("local search exceeded n^3 swaps; " + describe(a, stage, bounds));
    const SlotGraph g = build_slot_graph(a, stage, bounds);
    const auto swap = find_swap_bfs(g, a, stage, bounds);
    if (!swap) throw InternalError("no improving swap while a machine violates; " + describe(a, stage, bounds));
    SwapRecord rec;
    if (options.instrument) {
      rec.stage = stage;
      rec.from_slot = swap->from;
      rec.to_slot = swap->to;
      rec.from_job = a.job_at(swap->from);
      rec.to_job = a.job_at(swap->to);
      rec.distances_before = distances(g, unreachable);
      rec.potential_before = potential(a, stage, rec.distances_before);
    }
    a.swap(a.slot_ref(swap->from), a.slot_ref(swap->to));
    ++counter;
    if (options.instrument) {
      rec.distances_after = distances(build_slot_graph(a, stage, bounds), unreachable);
      rec.potential_after = potential(a, stage, rec.distances_after);
      out.records.push_back(std::move(rec));
    }
  }
}

}  // namespace

RoundingResult round_solution(const Instance& inst, const JobClasses& classes,
                              const FractionalAssignment& x, const SlotProfile& y, Epsilon eps,
                              const Rational& delta, const RoundingOptions& options) {
  if (eps.q != classes.num_classes()) throw InputError("epsilon does not match the job classes");
  if (options.check_witness && !check_slot_feasible(inst, classes, x, y, delta).feasible()) {
    throw InputError("rounding requires a feasible relaxed solution");
  }
  RoundingResult out{initial_integral(classes, y), {}, 0, 0};
  const EffectiveBounds bounds = effective_bounds(inst, eps, delta);
  run_stage(out.assignment, Stage::Overload, bounds, options, out, out.stage1_swaps);
  run_stage(out.assignment, Stage::Underload, bounds, options, out, out.stage2_swaps);
  return out;
}

}  // namespace loadbal
