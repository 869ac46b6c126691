#include "avc/extend.hpp"

namespace avc {
namespace {

// s_t recovered from σ_t by dropping the inserted walker.
std::vector<int> drop_last_walker(std::span<const int> positions) {
  const int removed = positions.back();
  std::vector<int> out(positions.begin(), positions.end() - 1);
  for (auto& p : out)
    if (p > removed) --p;
  return out;
}

}  // namespace

Trajectory sample_trajectory(const CouplingProcess& process, std::int64_t t_max, std::uint64_t seed,
                             const SampleOptions& options) {
  if (t_max < 1) throw ParameterError("t_max must be at least 1");
  const auto& info = process.info();
  const bool base_orders = options.debug && info.last_walker_added;
  Trajectory traj(info.n, info.k, info.has_labels, base_orders);
  traj.meta().seed = seed;
  traj.meta().process = info.name;
  traj.meta().last_walker_added = info.last_walker_added;
  traj.reserve(static_cast<std::size_t>(t_max) + 1);

  SeedStreams streams(seed);
  std::vector<Vertex> config(static_cast<std::size_t>(info.k));
  std::vector<Vertex> labels(info.has_labels ? static_cast<std::size_t>(info.n) : 0);

  State state = process.sample_init(streams);
  process.config_into(state, config);
  if (info.has_labels) process.labels_into(state, labels);
  const MoveOrder first = process.initial_order();
  std::vector<int> first_base = base_orders ? drop_last_walker(first.positions()) : std::vector<int>{};
  traj.push(config, first.positions(), labels, first_base);

  for (std::int64_t t = 1; t <= t_max; ++t) {
    StepOutcome out = process.sample_step(state, streams);
    state = std::move(out.next);
    process.config_into(state, config);
    if (info.has_labels) process.labels_into(state, labels);
    std::span<const int> base;
    if (base_orders) base = out.base_order->positions();
    traj.push(config, out.order.positions(), labels, base);
  }
  return traj;
}

}  // namespace avc
