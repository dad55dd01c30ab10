#include "loadbal/dp_solver.hpp"

#include <algorithm>
#include <cstdlib>
#include <functional>
#include <limits>
#include <string>
#include <unordered_map>

#include <boost/container_hash/hash.hpp>

#include "loadbal/errors.hpp"

namespace loadbal {

namespace {

std::int64_t ceil_div_i(std::int64_t a, std::int64_t b) {
  // b > 0
  return a >= 0 ? (a + b - 1) / b : -((-a) / b);
}

std::int64_t floor_div_i(std::int64_t a, std::int64_t b) {
  return a >= 0 ? a / b : -((-a + b - 1) / b);
}

}  // namespace

DpGrid::DpGrid(const Instance& inst, const JobClasses& classes, const Rational& delta) : delta_(delta) {
  if (delta <= 0) throw InputError("delta must be positive");
  const BigInt a = boost::multiprecision::numerator(delta);
  const BigInt b = boost::multiprecision::denominator(delta);
  const BigInt n = static_cast<std::int64_t>(inst.num_jobs());
  const BigInt q = classes.num_classes();
  const BigInt p_max = inst.p_max();
  // step = a p_max / (b q n); measuring in units of 1/(b q n) makes it a p_max.
  BigInt per_unit = b * q * n;
  BigInt step = a * p_max;
  const BigInt g = boost::multiprecision::gcd(per_unit, step);
  per_unit /= g;
  step /= g;
  const BigInt cap = p_max * per_unit;
  // Volumes reach n * cap; keep generous headroom for sums of bounds.
  const BigInt limit = BigInt(1) << 58;
  if (cap * (n + 1) * 4 >= limit) {
    throw ResourceLimitError("grid too fine for 64-bit tick arithmetic");
  }
  ticks_per_unit_ = to_int64(per_unit);
  step_ = to_int64(step);
  cap_ = to_int64(cap);
}

std::int64_t DpGrid::ceil_ticks(const Rational& v) const {
  return to_int64(ceil_div(v * ticks_per_unit_));
}

std::int64_t DpGrid::floor_ticks(const Rational& v) const {
  return to_int64(floor_div(v * ticks_per_unit_));
}

std::int64_t DpGrid::grid_ceil(std::int64_t v) const {
  if (v <= 0) return 0;
  const std::int64_t g = ceil_div_i(v, step_) * step_;
  return std::min(g, cap_);
}

std::optional<std::int64_t> DpGrid::grid_next(std::int64_t z) const {
  if (z >= cap_) return std::nullopt;
  return std::min(z + step_, cap_);
}

std::int64_t DpState::machines_placed() const {
  std::int64_t s = 0;
  for (auto u : used) s += u;
  return s;
}

DpState DpContext::initial_state() const {
  const int q = classes.num_classes();
  DpState s;
  s.used.assign(catalog.num_types(), 0);
  s.z_prev.assign(q, 0);
  s.placed.assign(q, 0);
  s.volume.assign(q, 0);
  return s;
}

std::int64_t DpContext::class_slack() const {
  return grid.floor_ticks(grid.delta() * inst.p_max() / classes.num_classes());
}

std::int64_t DpContext::lower_ticks(std::size_t r) const {
  return grid.ceil_ticks(catalog.intervals[r].lower);
}

std::int64_t DpContext::upper_ticks(std::size_t r) const {
  return grid.floor_ticks(catalog.intervals[r].upper + grid.delta() * inst.p_max());
}

std::variant<DpState, Rejection> dp_transition(const DpContext& ctx, const DpState& state,
                                               const MachineGuess& guess) {
  const int q = ctx.classes.num_classes();
  if (guess.type >= ctx.catalog.num_types() ||
      state.used[guess.type] >= static_cast<std::int64_t>(ctx.catalog.counts[guess.type])) {
    return Rejection::TypeExhausted;
  }
  if (static_cast<int>(guess.y.size()) != q || static_cast<int>(guess.z.size()) != q) {
    return Rejection::SlotOverflow;
  }
  DpState next = state;
  ++next.used[guess.type];
  std::int64_t machine_volume = 0;
  for (int k = 0; k < q; ++k) {
    const std::int64_t y = guess.y[k];
    if (y < 0 || state.placed[k] + y > static_cast<std::int64_t>(ctx.classes.size(k))) {
      return Rejection::SlotOverflow;
    }
    if (y == 0) continue;
    if (!ctx.grid.on_grid(guess.z[k])) return Rejection::SlotOverflow;
    next.placed[k] += y;
    next.volume[k] += y * guess.z[k];
    next.z_prev[k] = guess.z[k];
    machine_volume += y * guess.z[k];
  }
  const std::int64_t slack = ctx.class_slack();
  for (int k = 0; k < q; ++k) {
    if (next.volume[k] > ctx.class_total(k) + slack) return Rejection::ClassCap;
  }
  for (int k = 0; k < q; ++k) {
    if (guess.y[k] > 0 && guess.z[k] < state.z_prev[k]) return Rejection::Monotonicity;
  }
  for (int k = 0; k < q; ++k) {
    const auto need = ctx.grid.from_integer(
        ctx.classes.prefix_sum(k, static_cast<std::size_t>(next.placed[k])));
    if (next.volume[k] < need) return Rejection::MinJobsBound;
  }
  if (machine_volume < ctx.lower_ticks(guess.type) || machine_volume > ctx.upper_ticks(guess.type)) {
    return Rejection::MachineBounds;
  }
  return next;
}

bool accept_final(const DpContext& ctx, const DpState& state) {
  for (std::size_t r = 0; r < ctx.catalog.num_types(); ++r) {
    if (state.used[r] != static_cast<std::int64_t>(ctx.catalog.counts[r])) return false;
  }
  const std::int64_t slack = ctx.class_slack();
  for (int k = 0; k < ctx.classes.num_classes(); ++k) {
    if (state.placed[k] != static_cast<std::int64_t>(ctx.classes.size(k))) return false;
    const std::int64_t total = ctx.class_total(k);
    if (state.volume[k] < total || state.volume[k] > total + slack) return false;
  }
  return true;
}

SlotMilpSolution reconstruct(const DpContext& ctx, const std::vector<MachineGuess>& sequence) {
  const std::size_t m = ctx.inst.num_machines();
  const int q = ctx.classes.num_classes();
  if (sequence.size() != m) throw InternalError("reconstruct: sequence length differs from machine count");

  std::vector<std::vector<MachineId>> pool(ctx.catalog.num_types());
  for (std::size_t r = 0; r < pool.size(); ++r) pool[r] = ctx.catalog.machines_of(r);
  std::vector<std::size_t> next_of_type(pool.size(), 0);

  SlotMilpSolution sol;
  sol.y = SlotProfile(m, q);
  sol.z = AverageSizeVector(m, q);
  sol.sequence = sequence;
  sol.delta = ctx.grid.delta();

  DpState state = ctx.initial_state();
  for (const auto& guess : sequence) {
    auto result = dp_transition(ctx, state, guess);
    if (std::holds_alternative<Rejection>(result)) {
      throw InternalError("reconstruct: replay rejected a recorded transition");
    }
    const MachineId i = pool[guess.type][next_of_type[guess.type]++];
    sol.order.push_back(i);
    for (int k = 0; k < q; ++k) {
      sol.y.at(i, k) = guess.y[k];
      if (guess.y[k] > 0) {
        sol.z.at(i, k) = ctx.grid.to_rational(guess.z[k]);
        sol.z.set_defined(i, k, true);
      } else {
        sol.z.at(i, k) = ctx.grid.to_rational(state.z_prev[k]);
      }
    }
    state = std::get<DpState>(std::move(result));
  }
  if (!accept_final(ctx, state)) throw InternalError("reconstruct: replay does not reach an accepting cell");
  return sol;
}

DpLimits DpLimits::from_environment() {
  DpLimits limits;
  if (const char* env = std::getenv("LOADBAL_MAX_STATES")) {
    try {
      const long long v = std::stoll(env);
      if (v > 0) limits.max_states = static_cast<std::size_t>(v);
    } catch (const std::exception&) {
      throw InputError(std::string("LOADBAL_MAX_STATES: not a positive integer: ") + env);
    }
  }
  return limits;
}

namespace {

struct KeyHash {
  std::size_t operator()(const std::vector<std::int64_t>& key) const {
    return boost::hash_range(key.begin(), key.end());
  }
};

class DpSearch {
 public:
  DpSearch(const DpContext& ctx, const DpLimits& limits) : ctx_(ctx), limits_(limits) {
    const int q = ctx.classes.num_classes();
    m_ = static_cast<int>(ctx.inst.num_machines());
    slack_ = ctx.class_slack();
    for (int k = 0; k < q; ++k) {
      if (ctx.classes.size(k) == 0) continue;
      active_.push_back(k);
    }
    zmin_.assign(q, 0);
    zmax_.assign(q, 0);
    total_.assign(q, 0);
    for (int k : active_) {
      const auto sizes = ctx.classes.sorted_sizes(k);
      // The average of class-k jobs lies in [min, max]; rounding up onto the
      // grid keeps every condition intact, so only these values are guessed.
      zmin_[k] = ctx.grid.grid_ceil(ctx.grid.from_integer(sizes.front()));
      zmax_[k] = ctx.grid.grid_ceil(ctx.grid.from_integer(sizes.back()));
      total_[k] = ctx.class_total(k);
    }
    for (std::size_t r = 0; r < ctx.catalog.num_types(); ++r) {
      lower_.push_back(ctx.lower_ticks(r));
      upper_.push_back(ctx.upper_ticks(r));
    }
  }

  DpResult run() {
    DpResult result;
    const DpState start = ctx_.initial_state();
    nodes_.push_back({-1, {}});
    index_.emplace(key_of(start), 0);
    stats_.states = 1;
    if (dfs(start, 0, 0)) {
      std::vector<MachineGuess> sequence;
      for (int node = accepting_; node > 0; node = nodes_[node].parent) {
        sequence.push_back(nodes_[node].guess);
      }
      std::reverse(sequence.begin(), sequence.end());
      result.solution = reconstruct(ctx_, sequence);
    }
    result.stats = stats_;
    return result;
  }

 private:
  struct Node {
    int parent;
    MachineGuess guess;
  };

  std::vector<std::int64_t> key_of(const DpState& s) const {
    std::vector<std::int64_t> key(s.used.begin(), s.used.end());
    for (int k : active_) {
      key.push_back(s.z_prev[k]);
      key.push_back(s.placed[k]);
      key.push_back(s.volume[k]);
    }
    return key;
  }

  std::int64_t remaining(const DpState& s, int k) const {
    return static_cast<std::int64_t>(ctx_.classes.size(k)) - s.placed[k];
  }

  // True when no accepting cell is reachable from s with `left` machines to go.
  bool dead_end(const DpState& s, int left) const {
    if (left == 0) return false;
    std::int64_t need_lo = 0;
    std::int64_t need_hi = 0;
    for (int k : active_) {
      const std::int64_t rem = remaining(s, k);
      if (rem == 0) {
        if (s.volume[k] < total_[k]) return true;
        continue;
      }
      const std::int64_t floor_z = std::max(s.z_prev[k], zmin_[k]);
      const std::int64_t lo = s.volume[k] + rem * floor_z;
      const std::int64_t hi = s.volume[k] + rem * zmax_[k];
      if (lo > total_[k] + slack_ || hi < total_[k]) return true;
      need_lo += std::max(total_[k], lo) - s.volume[k];
      need_hi += std::min(total_[k] + slack_, hi) - s.volume[k];
    }
    std::int64_t cap_lo = 0;
    std::int64_t cap_hi = 0;
    for (std::size_t r = 0; r < lower_.size(); ++r) {
      const std::int64_t cnt = static_cast<std::int64_t>(ctx_.catalog.counts[r]) - s.used[r];
      cap_lo += cnt * lower_[r];
      cap_hi += cnt * upper_[r];
    }
    return need_lo > cap_hi || need_hi < cap_lo;
  }

  // Calls visit(guess) for candidate guesses of the given type in (y, z)
  // lexicographic order; stops when visit returns true.
  bool for_each_guess(const DpState& s, std::size_t type, bool last_machine,
                      const std::function<bool(const MachineGuess&)>& visit) {
    const int q = ctx_.classes.num_classes();
    MachineGuess guess;
    guess.type = type;
    guess.y.assign(q, 0);
    guess.z.assign(q, 0);
    return enumerate_y(s, 0, last_machine, guess, visit);
  }

  bool enumerate_y(const DpState& s, std::size_t idx, bool last_machine, MachineGuess& guess,
                   const std::function<bool(const MachineGuess&)>& visit) {
    if (idx == active_.size()) return enumerate_z_for(s, guess, visit);
    const int k = active_[idx];
    const std::int64_t rem = remaining(s, k);
    const std::int64_t from = last_machine ? rem : 0;
    for (std::int64_t y = from; y <= rem; ++y) {
      guess.y[k] = y;
      if (enumerate_y(s, idx + 1, last_machine, guess, visit)) return true;
    }
    guess.y[k] = 0;
    return false;
  }

  bool enumerate_z_for(const DpState& s, MachineGuess& guess,
                       const std::function<bool(const MachineGuess&)>& visit) {
    std::vector<int> slots;
    std::vector<std::int64_t> lo;
    std::vector<std::int64_t> hi;
    for (int k : active_) {
      const std::int64_t y = guess.y[k];
      if (y == 0) {
        guess.z[k] = s.z_prev[k];
        continue;
      }
      const std::int64_t rem = remaining(s, k);
      const std::int64_t after = rem - y;
      const std::int64_t need = ctx_.grid.from_integer(
          ctx_.classes.prefix_sum(k, static_cast<std::size_t>(s.placed[k] + y)));
      std::int64_t zl = std::max({s.z_prev[k], zmin_[k], ceil_div_i(need - s.volume[k], y),
                                  ceil_div_i(total_[k] - s.volume[k] - after * zmax_[k], y)});
      std::int64_t zh = std::min(zmax_[k], floor_div_i(total_[k] + slack_ - s.volume[k], rem));
      if (zl > zh) return false;
      zl = ctx_.grid.grid_ceil(zl);
      if (zl > zh) return false;
      slots.push_back(k);
      lo.push_back(zl);
      hi.push_back(zh);
    }
    // Suffix sums of the smallest and largest contributions for bound pruning.
    const std::size_t c = slots.size();
    std::vector<std::int64_t> rest_min(c + 1, 0);
    std::vector<std::int64_t> rest_max(c + 1, 0);
    for (std::size_t t = c; t-- > 0;) {
      const std::int64_t y = guess.y[slots[t]];
      rest_min[t] = rest_min[t + 1] + y * lo[t];
      rest_max[t] = rest_max[t + 1] + y * hi[t];
    }
    const std::int64_t lower = lower_[guess.type];
    const std::int64_t upper = upper_[guess.type];
    if (rest_min[0] > upper || rest_max[0] < lower) return false;

    std::function<bool(std::size_t, std::int64_t)> rec = [&](std::size_t t, std::int64_t partial) -> bool {
      if (t == c) return visit(guess);
      const int k = slots[t];
      const std::int64_t y = guess.y[k];
      for (std::optional<std::int64_t> z = lo[t]; z && *z <= hi[t]; z = ctx_.grid.grid_next(*z)) {
        const std::int64_t with = partial + y * *z;
        if (with + rest_min[t + 1] > upper) break;
        if (with + rest_max[t + 1] < lower) continue;
        guess.z[k] = *z;
        if (rec(t + 1, with)) return true;
      }
      return false;
    };
    return rec(0, 0);
  }

  bool dfs(const DpState& s, int node, int depth) {
    if (depth == m_) {
      if (accept_final(ctx_, s)) {
        accepting_ = node;
        return true;
      }
      return false;
    }
    const bool last = depth + 1 == m_;
    for (std::size_t r = 0; r < ctx_.catalog.num_types(); ++r) {
      if (s.used[r] >= static_cast<std::int64_t>(ctx_.catalog.counts[r])) continue;
      const bool found = for_each_guess(s, r, last, [&](const MachineGuess& guess) {
        ++stats_.transitions;
        auto result = dp_transition(ctx_, s, guess);
        if (auto* why = std::get_if<Rejection>(&result)) {
          ++stats_.rejected[static_cast<std::size_t>(*why)];
          return false;
        }
        DpState next = std::get<DpState>(std::move(result));
        if (dead_end(next, m_ - depth - 1)) {
          ++stats_.pruned;
          return false;
        }
        auto [it, inserted] = index_.emplace(key_of(next), static_cast<int>(nodes_.size()));
        if (!inserted) return false;
        nodes_.push_back({node, guess});
        stats_.states = nodes_.size();
        if (nodes_.size() > limits_.max_states) {
          throw ResourceLimitError("DP state budget exceeded (" + std::to_string(limits_.max_states) +
                                   " states)");
        }
        return dfs(next, it->second, depth + 1);
      });
      if (found) return true;
    }
    return false;
  }

  const DpContext& ctx_;
  DpLimits limits_;
  int m_ = 0;
  std::int64_t slack_ = 0;
  std::vector<int> active_;
  std::vector<std::int64_t> zmin_, zmax_, total_;
  std::vector<std::int64_t> lower_, upper_;
  std::vector<Node> nodes_;
  std::unordered_map<std::vector<std::int64_t>, int, KeyHash> index_;
  DpStats stats_;
  int accepting_ = -1;
};

}  // namespace

DpResult solve_slot_milp_dp(const Instance& inst, const JobClasses& classes, const Rational& delta,
                            const DpLimits& limits) {
  const IntervalCatalog catalog = interval_catalog(inst);
  const DpGrid grid(inst, classes, delta);
  const DpContext ctx{inst, classes, catalog, grid};
  DpSearch search(ctx, limits);
  return search.run();
}

}  // namespace loadbal
