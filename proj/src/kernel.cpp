#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>

#include "avc/base.hpp"
#include "stationary.hpp"

namespace avc {
namespace {

std::vector<int> row_key(std::span<const Vertex> config, WalkerId walker, std::span<const Vertex> given) {
  std::vector<int> key;
  key.reserve(1 + config.size() + given.size());
  key.push_back(walker);
  key.insert(key.end(), config.begin(), config.end());
  key.insert(key.end(), given.begin(), given.end());
  return key;
}

bool injective_in_range(std::span<const Vertex> c, int n) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i] < 1 || c[i] > n) return false;
    for (std::size_t j = i + 1; j < c.size(); ++j)
      if (c[i] == c[j]) return false;
  }
  return true;
}

}  // namespace

KernelTable::KernelTable(int n, int k, MoveOrder move_order, std::vector<KernelRow> rows, std::string name)
    : n_(n), k_(k), move_order_(std::move(move_order)), rows_(std::move(rows)), name_(std::move(name)) {
  if (n < 1 || k < 1) throw ParameterError("kernel table needs n >= 1 and k >= 1");
  if (move_order_.k() != k) throw ParameterError("kernel move order does not cover k walkers");
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    const auto& r = rows_[i];
    if (!index_.emplace(row_key(r.config, r.walker, r.given), i).second) {
      throw ParameterError("duplicate kernel row");
    }
  }
}

const KernelRow* KernelTable::find(std::span<const Vertex> config, WalkerId walker,
                                   std::span<const Vertex> given) const {
  auto it = index_.find(row_key(config, walker, given));
  return it == index_.end() ? nullptr : &rows_[it->second];
}

std::vector<std::vector<Vertex>> all_configurations(int n, int k) {
  std::vector<std::vector<Vertex>> out;
  std::vector<Vertex> cur;
  std::vector<char> used(static_cast<std::size_t>(n) + 1, 0);
  std::function<void()> rec = [&] {
    if (static_cast<int>(cur.size()) == k) {
      out.push_back(cur);
      return;
    }
    for (Vertex v = 1; v <= n; ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = 1;
      cur.push_back(v);
      rec();
      cur.pop_back();
      used[static_cast<std::size_t>(v)] = 0;
    }
  };
  rec();
  return out;
}

nlohmann::json KernelReport::to_json() const {
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : violations) {
    v.push_back({{"kind", x.kind},
                 {"config", x.config},
                 {"walker", x.walker},
                 {"given", x.given},
                 {"target", x.target},
                 {"detail", x.detail}});
  }
  return {{"ok", ok}, {"violations", v}};
}

KernelReport validate_kernel(const KernelTable& table) {
  KernelReport report;
  const int n = table.n();
  const int k = table.k();
  const auto seq = table.move_order().sequence();
  auto add = [&](std::string kind, std::span<const Vertex> config, WalkerId w, std::span<const Vertex> given,
                 Vertex target, std::string detail) {
    report.violations.push_back(KernelViolation{std::move(kind), {config.begin(), config.end()}, w,
                                                {given.begin(), given.end()}, target, std::move(detail)});
  };

  for (const auto& row : table.rows()) {
    const bool shape_ok = static_cast<int>(row.config.size()) == k && row.walker >= 1 && row.walker <= k &&
                          static_cast<int>(row.given.size()) == table.move_order().position(row.walker) - 1 &&
                          injective_in_range(row.config, n) && injective_in_range(row.given, n);
    if (!shape_ok) add("bad-row", row.config, row.walker, row.given, 0, "malformed config/walker/given");
  }

  // Walk every reachable (config, walker, given) in move order.
  std::function<void(const std::vector<Vertex>&, std::size_t, std::vector<Vertex>&)> visit =
      [&](const std::vector<Vertex>& config, std::size_t pos, std::vector<Vertex>& given) {
        if (pos == seq.size()) return;
        const WalkerId w = seq[pos];
        const KernelRow* row = table.find(config, w, given);
        if (row == nullptr) {
          add("missing-row", config, w, given, 0, "no distribution for this walker");
          return;
        }
        Rational sum;
        std::vector<Vertex> seen;
        for (const auto& [v, p] : row->targets) {
          sum += p;
          if (std::find(seen.begin(), seen.end(), v) != seen.end()) {
            add("bad-row", config, w, given, v, "duplicate target");
          }
          seen.push_back(v);
          if (p.is_negative()) add("negative", config, w, given, v, "weight " + p.str());
          if (p.is_zero() || p.is_negative()) continue;
          if (v < 1 || v > n) {
            add("out-of-range", config, w, given, v, "target outside [n]");
            continue;
          }
          if (v == config[static_cast<std::size_t>(w - 1)]) add("stay", config, w, given, v, "walker stays put");
          for (std::size_t later = pos + 1; later < seq.size(); ++later) {
            const WalkerId o = seq[later];
            if (v == config[static_cast<std::size_t>(o - 1)]) {
              add("cross-round", config, w, given, v, "old vertex of walker " + std::to_string(o) + " not yet moved");
            }
          }
          for (std::size_t earlier = 0; earlier < given.size(); ++earlier) {
            if (v == given[earlier]) {
              add("same-round", config, w, given, v, "new vertex of walker " + std::to_string(seq[earlier]));
            }
          }
        }
        if (sum != Rational(1)) add("sum", config, w, given, 0, "row sums to " + sum.str());
        for (const auto& [v, p] : row->targets) {
          if (p.is_zero() || p.is_negative() || v < 1 || v > n) continue;
          given.push_back(v);
          visit(config, pos + 1, given);
          given.pop_back();
        }
      };
  for (const auto& c : all_configurations(n, k)) {
    std::vector<Vertex> given;
    visit(c, 0, given);
  }
  report.ok = report.violations.empty();
  return report;
}

KernelTable trivial_kernel(int n) {
  if (n < 2) throw ParameterError("trivial coupling needs n >= 2");
  std::vector<KernelRow> rows;
  for (Vertex a = 1; a <= n; ++a) {
    KernelRow row{{a}, 1, {}, {}};
    for (Vertex v = 1; v <= n; ++v)
      if (v != a) row.targets.push_back({v, Rational(1, n - 1)});
    rows.push_back(std::move(row));
  }
  return KernelTable(n, 1, MoveOrder::identity(1), std::move(rows), "trivial:" + std::to_string(n));
}

KernelTable symmetric_pair_kernel(int n) {
  if (n < 4) throw ParameterError("symmetric pair kernel needs n >= 4");
  const Rational back(1, n - 1);
  const Rational other = (Rational(1) - back) / Rational(n - 3);
  std::vector<KernelRow> rows;
  for (const auto& c : all_configurations(n, 2)) {
    const Vertex a = c[0];
    const Vertex b = c[1];
    KernelRow first{c, 1, {}, {}};
    for (Vertex v = 1; v <= n; ++v)
      if (v != a && v != b) first.targets.push_back({v, Rational(1, n - 2)});
    for (const auto& [moved, p] : first.targets) {
      (void)p;
      KernelRow second{c, 2, {moved}, {}};
      for (Vertex v = 1; v <= n; ++v) {
        if (v == b || v == moved) continue;
        second.targets.push_back({v, v == a ? back : other});
      }
      rows.push_back(std::move(second));
    }
    rows.push_back(std::move(first));
  }
  return KernelTable(n, 2, MoveOrder::identity(2), std::move(rows), "pair-k" + std::to_string(n));
}

namespace {

struct SamplingRow {
  std::int64_t total = 1;
  std::vector<std::int64_t> cumulative;  // integer weights scaled by total
};

SamplingRow make_sampling_row(const std::vector<KernelTarget>& targets) {
  SamplingRow s;
  for (const auto& t : targets) s.total = checked_lcm(s.total, t.p.den());
  std::int64_t acc = 0;
  for (const auto& t : targets) {
    acc += t.p.num() * (s.total / t.p.den());
    s.cumulative.push_back(acc);
  }
  return s;
}

std::size_t draw(const SamplingRow& row, Rng& rng) {
  const auto u = static_cast<std::int64_t>(rng.uniform_below(static_cast<std::uint64_t>(row.total)));
  return static_cast<std::size_t>(std::upper_bound(row.cumulative.begin(), row.cumulative.end(), u) -
                                  row.cumulative.begin());
}

class KernelProcess final : public CouplingProcess {
 public:
  KernelProcess(KernelTable table, ProcessInfo info)
      : CouplingProcess(std::move(info)), table_(std::move(table)), seq_(table_.move_order().sequence()) {
    for (const auto& row : table_.rows()) sampling_.push_back(make_sampling_row(row.targets));
    configs_ = all_configurations(table_.n(), table_.k());
    const auto pi = kernel_stationary(table_);
    for (std::size_t i = 0; i < configs_.size(); ++i) {
      if (!pi[i].is_zero()) init_.push_back({configs_[i], pi[i]});
    }
    std::vector<KernelTarget> init_targets;
    for (std::size_t i = 0; i < init_.size(); ++i) init_targets.push_back({static_cast<Vertex>(i), init_[i].weight});
    init_sampling_ = make_sampling_row(init_targets);
  }

  State sample_init(SeedStreams& streams) const override {
    return init_[draw(init_sampling_, streams.stream("init/kernel"))].state;
  }

  StepOutcome sample_step(const State& state, SeedStreams& streams) const override {
    Rng& rng = streams.stream("kernel");
    State next = state;
    std::vector<Vertex> given;
    given.reserve(seq_.size());
    for (WalkerId w : seq_) {
      const std::size_t r = row_index(state, w, given);
      const auto& row = table_.rows()[r];
      const Vertex v = row.targets[draw(sampling_[r], rng)].v;
      next[static_cast<std::size_t>(w - 1)] = v;
      given.push_back(v);
    }
    return {std::move(next), table_.move_order(), std::nullopt};
  }

  bool can_enumerate() const override { return true; }
  double init_support_size() const override { return static_cast<double>(init_.size()); }

  std::vector<WeightedState> init_distribution(std::size_t budget) const override {
    if (init_.size() > budget) throw Unsupported("initial law exceeds budget");
    return init_;
  }

  std::vector<Branch> enumerate_step(const State& state) const override {
    std::vector<Branch> out;
    State next = state;
    std::vector<Vertex> given;
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t pos, Rational weight) {
      if (pos == seq_.size()) {
        out.push_back({next, table_.move_order(), weight});
        return;
      }
      const WalkerId w = seq_[pos];
      const auto& row = table_.rows()[row_index(state, w, given)];
      for (const auto& [v, p] : row.targets) {
        if (p.is_zero()) continue;
        next[static_cast<std::size_t>(w - 1)] = v;
        given.push_back(v);
        rec(pos + 1, weight * p);
        given.pop_back();
      }
      next[static_cast<std::size_t>(w - 1)] = state[static_cast<std::size_t>(w - 1)];
    };
    rec(0, Rational(1));
    return out;
  }

  void config_into(const State& state, std::span<Vertex> out) const override {
    std::copy(state.begin(), state.end(), out.begin());
  }

  MoveOrder initial_order() const override { return table_.move_order(); }

 private:
  std::size_t row_index(const State& config, WalkerId w, std::span<const Vertex> given) const {
    const KernelRow* row = table_.find(config, w, given);
    if (row == nullptr) throw std::logic_error("validated kernel is missing a reachable row");
    return static_cast<std::size_t>(row - table_.rows().data());
  }

  KernelTable table_;
  std::vector<WalkerId> seq_;
  std::vector<SamplingRow> sampling_;
  std::vector<std::vector<Vertex>> configs_;
  std::vector<WeightedState> init_;
  SamplingRow init_sampling_;
};

}  // namespace

std::vector<Rational> kernel_stationary(const KernelTable& table) {
  const auto configs = all_configurations(table.n(), table.k());
  std::unordered_map<State, std::size_t, StateHash> index;
  for (std::size_t i = 0; i < configs.size(); ++i) index.emplace(configs[i], i);

  const auto seq = table.move_order().sequence();
  detail::SparseRows rows(configs.size());
  for (std::size_t i = 0; i < configs.size(); ++i) {
    const auto& c = configs[i];
    std::vector<Vertex> next = c;
    std::vector<Vertex> given;
    std::function<void(std::size_t, Rational)> rec = [&](std::size_t pos, Rational weight) {
      if (pos == seq.size()) {
        rows[i].emplace_back(index.at(next), weight);
        return;
      }
      const WalkerId w = seq[pos];
      const KernelRow* row = table.find(c, w, given);
      if (row == nullptr) throw std::logic_error("kernel is missing a reachable row");
      for (const auto& [v, p] : row->targets) {
        if (p.is_zero()) continue;
        next[static_cast<std::size_t>(w - 1)] = v;
        given.push_back(v);
        rec(pos + 1, weight * p);
        given.pop_back();
      }
    };
    rec(0, Rational(1));
  }

  auto solution = detail::solve_stationary(rows);
  if (solution.closed_classes.size() != 1) {
    std::vector<std::vector<std::vector<Vertex>>> classes;
    std::ostringstream msg;
    msg << "configuration chain has " << solution.closed_classes.size()
        << " closed classes; no unique stationary law:";
    for (const auto& cls : solution.closed_classes) {
      classes.emplace_back();
      msg << " {";
      for (std::size_t idx : cls) {
        classes.back().push_back(configs[idx]);
        msg << " (";
        for (std::size_t q = 0; q < configs[idx].size(); ++q) msg << (q ? "," : "") << configs[idx][q];
        msg << ")";
      }
      msg << " }";
    }
    throw StationaryError(msg.str(), std::move(classes));
  }
  return std::move(solution.pi);
}

ProcessPtr kernel_process(const KernelTable& table) {
  auto report = validate_kernel(table);
  if (!report.ok) throw KernelError(std::move(report));
  ProcessInfo info;
  info.name = "kernel(" + (table.name().empty() ? std::string("table") : table.name()) + ")";
  info.n = table.n();
  info.k = table.k();
  info.order = PartialOrder::chain_of(table.move_order());
  info.certified = true;
  return std::make_shared<KernelProcess>(table, std::move(info));
}

ProcessPtr trivial_sac(int n) { return kernel_process(trivial_kernel(n)); }

}  // namespace avc
