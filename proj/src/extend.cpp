#include "avc/extend.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace avc {
namespace {

double factorial(int n) {
  double f = 1;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

// State layout: [perm images (n)] [last_a, parity  (fault only)] [base state].
class ExtendedProcess final : public CouplingProcess {
 public:
  ExtendedProcess(ProcessPtr base, ExtendMode mode, ExtendOptions options, ProcessInfo info)
      : CouplingProcess(std::move(info)),
        base_(std::move(base)),
        mode_(mode),
        fault_(options.fault),
        stream_(std::move(options.stream)),
        init_stream_("init/" + stream_),
        n_(base_->info().n + 1),
        base_k_(base_->info().k),
        offset_(static_cast<std::size_t>(n_) + (fault_ == PermFault::none ? 0 : 2)) {}

  State sample_init(SeedStreams& streams) const override {
    const Permutation p = random_permutation(n_, streams.stream(init_stream_));
    State base_state = base_->sample_init(streams);
    State s(p.images().begin(), p.images().end());
    if (fault_ != PermFault::none) s.insert(s.end(), {0, 0});
    s.insert(s.end(), base_state.begin(), base_state.end());
    return s;
  }

  StepOutcome sample_step(const State& state, SeedStreams& streams) const override {
    const State base_state(state.begin() + static_cast<std::ptrdiff_t>(offset_), state.end());
    StepOutcome base_out = base_->sample_step(base_state, streams);

    int a = 0;
    int parity = 0;
    if (fault_ == PermFault::reuse_previous_a) {
      const int last_a = state[static_cast<std::size_t>(n_)];
      parity = state[static_cast<std::size_t>(n_) + 1];
      if (parity == 1 && last_a > 0) a = last_a;
    }
    if (a == 0) a = static_cast<int>(streams.stream(stream_).uniform_below(static_cast<std::uint64_t>(n_ - 1))) + 1;

    State next(state.begin(), state.begin() + n_);
    std::swap(next[static_cast<std::size_t>(n_ - 1)], next[static_cast<std::size_t>(a - 1)]);
    if (fault_ != PermFault::none) next.insert(next.end(), {a, 1 - parity});
    next.insert(next.end(), base_out.next.begin(), base_out.next.end());

    if (mode_ == ExtendMode::keep_walkers) return {std::move(next), std::move(base_out.order), std::nullopt};
    auto order = insertion(state, base_state, next, base_out.order);
    return {std::move(next), std::move(order.resolved), std::move(base_out.order)};
  }

  bool can_enumerate() const override { return fault_ == PermFault::none && base_->can_enumerate(); }

  double init_support_size() const override { return factorial(n_) * base_->init_support_size(); }

  std::vector<WeightedState> init_distribution(std::size_t budget) const override {
    if (!can_enumerate()) throw Unsupported("process '" + info().name + "' has no exact initial law");
    const double size = init_support_size();
    if (size > static_cast<double>(budget)) {
      throw Unsupported("initial law of '" + info().name + "' has an estimated " + std::to_string(size) +
                        " states, over the budget of " + std::to_string(budget));
    }
    const auto perms = all_permutations(n_);
    const auto base_init = base_->init_distribution(budget);
    const Rational each(1, static_cast<std::int64_t>(perms.size()));
    std::vector<WeightedState> out;
    out.reserve(perms.size() * base_init.size());
    for (const auto& p : perms) {
      for (const auto& b : base_init) {
        State s(p.images().begin(), p.images().end());
        s.insert(s.end(), b.state.begin(), b.state.end());
        out.push_back({std::move(s), each * b.weight});
      }
    }
    return out;
  }

  std::vector<Branch> enumerate_step(const State& state) const override {
    if (!can_enumerate()) throw Unsupported("process '" + info().name + "' cannot be enumerated");
    const State base_state(state.begin() + static_cast<std::ptrdiff_t>(offset_), state.end());
    const Rational each(1, n_ - 1);
    std::vector<Branch> out;
    for (auto& b : base_->enumerate_step(base_state)) {
      for (int a = 1; a <= n_ - 1; ++a) {
        State next(state.begin(), state.begin() + n_);
        std::swap(next[static_cast<std::size_t>(n_ - 1)], next[static_cast<std::size_t>(a - 1)]);
        next.insert(next.end(), b.next.begin(), b.next.end());
        MoveOrder order =
            mode_ == ExtendMode::keep_walkers ? b.order : insertion(state, base_state, next, b.order).resolved;
        out.push_back({std::move(next), std::move(order), b.weight * each});
      }
    }
    return out;
  }

  void config_into(const State& state, std::span<Vertex> out) const override {
    const State base_state(state.begin() + static_cast<std::ptrdiff_t>(offset_), state.end());
    base_->config_into(base_state, out.first(static_cast<std::size_t>(base_k_)));
    for (int j = 0; j < base_k_; ++j) {
      auto& v = out[static_cast<std::size_t>(j)];
      v = state[static_cast<std::size_t>(v - 1)];
    }
    if (mode_ == ExtendMode::add_walker) out[static_cast<std::size_t>(base_k_)] = state[static_cast<std::size_t>(n_ - 1)];
  }

  void labels_into(const State& state, std::span<Vertex> out) const override {
    std::copy(state.begin(), state.begin() + n_, out.begin());
  }

  MoveOrder initial_order() const override {
    MoveOrder base = base_->initial_order();
    if (mode_ == ExtendMode::keep_walkers) return base;
    std::vector<int> pos(base.positions().begin(), base.positions().end());
    for (auto& p : pos) ++p;
    pos.push_back(1);
    return MoveOrder(std::move(pos));
  }

 private:
  ExtendedOrder insertion(const State& prev, const State& prev_base, const State& next,
                          const MoveOrder& base_order) const {
    std::vector<Vertex> previous = base_->config_of(prev_base);
    for (auto& v : previous) v = prev[static_cast<std::size_t>(v - 1)];
    return resolve_insertion(base_order, previous, next[static_cast<std::size_t>(n_ - 1)]);
  }

  ProcessPtr base_;
  ExtendMode mode_;
  PermFault fault_;
  std::string stream_;
  std::string init_stream_;
  int n_;
  int base_k_;
  std::size_t offset_;
};

class PermChainProcess final : public CouplingProcess {
 public:
  PermChainProcess(int n, ProcessInfo info) : CouplingProcess(std::move(info)), n_(n), stream_("perm@" + std::to_string(n)) {}

  State sample_init(SeedStreams& streams) const override {
    const auto p = random_permutation(n_, streams.stream("init/" + stream_));
    return State(p.images().begin(), p.images().end());
  }

  StepOutcome sample_step(const State& state, SeedStreams& streams) const override {
    PermState s{Permutation(state), std::nullopt};
    auto next = step_perm_chain(s, streams.stream(stream_));
    return {State(next.perm.images().begin(), next.perm.images().end()), MoveOrder::identity(1), std::nullopt};
  }

  bool can_enumerate() const override { return true; }
  double init_support_size() const override { return factorial(n_); }

  std::vector<WeightedState> init_distribution(std::size_t budget) const override {
    if (init_support_size() > static_cast<double>(budget)) throw Unsupported("initial law exceeds budget");
    auto perms = all_permutations(n_);
    const Rational each(1, static_cast<std::int64_t>(perms.size()));
    std::vector<WeightedState> out;
    for (const auto& p : perms) out.push_back({State(p.images().begin(), p.images().end()), each});
    return out;
  }

  std::vector<Branch> enumerate_step(const State& state) const override {
    std::vector<Branch> out;
    for (auto& [next, w] : enumerate_perm_steps(PermState{Permutation(state), std::nullopt})) {
      out.push_back({State(next.perm.images().begin(), next.perm.images().end()), MoveOrder::identity(1), w});
    }
    return out;
  }

  void config_into(const State& state, std::span<Vertex> out) const override {
    out[0] = state[static_cast<std::size_t>(n_ - 1)];
  }
  void labels_into(const State& state, std::span<Vertex> out) const override {
    std::copy(state.begin(), state.end(), out.begin());
  }
  MoveOrder initial_order() const override { return MoveOrder::identity(1); }

 private:
  int n_;
  std::string stream_;
};

ProcessPtr make_extension(ProcessPtr base, ExtendMode mode, ExtendOptions options) {
  if (!base) throw ParameterError("extension needs a base process");
  const auto& b = base->info();
  if (!b.certified && !options.trust_base) {
    throw ParameterError("base '" + b.name + "' is not a certified avoidance coupling");
  }
  ProcessInfo info;
  info.n = b.n + 1;
  info.k = b.k + (mode == ExtendMode::add_walker ? 1 : 0);
  info.certified = b.certified && options.fault == PermFault::none;
  info.has_labels = true;
  if (mode == ExtendMode::add_walker) {
    if (!b.order) throw ParameterError("POSAC extension needs a base with a partial order");
    info.order = b.order->with_extra_walkers(1);
    info.last_walker_added = true;
  } else {
    info.order = b.order;
  }
  if (options.stream.empty()) options.stream = "perm@" + std::to_string(info.n);
  info.name = b.name + (mode == ExtendMode::add_walker ? " > add@" : " > keep@") + std::to_string(info.n);
  if (options.fault == PermFault::reuse_previous_a) info.name += " [fault:reuse-a]";
  return std::make_shared<ExtendedProcess>(std::move(base), mode, std::move(options), std::move(info));
}

}  // namespace

ExtendedOrder resolve_insertion(const MoveOrder& base_order, std::span<const Vertex> previous_base,
                                Vertex new_vertex) {
  const int k = base_order.k();
  if (static_cast<int>(previous_base.size()) != k) throw ParameterError("previous configuration size mismatch");
  WalkerId b = 0;
  for (int j = 1; j <= k; ++j) {
    if (previous_base[static_cast<std::size_t>(j - 1)] != new_vertex) continue;
    if (b != 0) throw std::logic_error("two base walkers shared a vertex at t-1");
    b = j;
  }
  std::vector<int> pos(static_cast<std::size_t>(k) + 1);
  int insert = 1;
  if (b != 0) {
    const int sb = base_order.position(b);
    for (int j = 1; j <= k; ++j) {
      const int sj = base_order.position(j);
      pos[static_cast<std::size_t>(j - 1)] = sj <= sb ? sj : sj + 1;
    }
    insert = sb + 1;
  } else {
    for (int j = 1; j <= k; ++j) pos[static_cast<std::size_t>(j - 1)] = base_order.position(j) + 1;
  }
  pos[static_cast<std::size_t>(k)] = insert;
  return ExtendedOrder{base_order, insert, b, MoveOrder(std::move(pos))};
}

ProcessPtr extend_sac(ProcessPtr base, const ExtendOptions& options) {
  return make_extension(std::move(base), ExtendMode::keep_walkers, options);
}

ProcessPtr extend_posac(ProcessPtr base, const ExtendOptions& options) {
  return make_extension(std::move(base), ExtendMode::add_walker, options);
}

ProcessPtr iterate_extension(ProcessPtr base, int target_n, ExtendMode mode, const ExtendOptions& options) {
  if (!base) throw ParameterError("extension needs a base process");
  if (target_n <= base->info().n) throw ParameterError("target n must exceed the base n");
  ProcessPtr p = std::move(base);
  while (p->info().n < target_n) {
    ExtendOptions step = options;
    step.stream = options.stream.empty() ? std::string{} : options.stream + "@" + std::to_string(p->info().n + 1);
    p = make_extension(p, mode, std::move(step));
  }
  return p;
}

ProcessPtr perm_chain_process(int n) {
  if (n < 2) throw ParameterError("permutation chain needs n >= 2");
  ProcessInfo info;
  info.name = "perm-chain@" + std::to_string(n);
  info.n = n;
  info.k = 1;
  info.order = PartialOrder::chain(1);
  info.certified = true;
  info.has_labels = true;
  return std::make_shared<PermChainProcess>(n, std::move(info));
}

}  // namespace avc
