#pragma once

#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "avc/process.hpp"
#include "avc/rational.hpp"

namespace avc {

/// Interned reachable states of an enumerable process, with lazily computed
/// exact successor lists. Ids are dense and stable.
class StateSpace {
 public:
  struct Edge {
    std::uint32_t next;
    std::uint32_t order;  // id into orders()
    Rational weight;
  };

  /// Throws Unsupported when the process cannot be enumerated.
  StateSpace(const CouplingProcess& process, std::size_t budget);

  const CouplingProcess& process() const { return process_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t budget() const { return budget_; }

  /// Interns a state; throws Unsupported once more than `budget` states exist.
  std::uint32_t intern(const State& s);

  /// Outgoing edges, merged per (next state, order). Weights sum to 1.
  const std::vector<Edge>& successors(std::uint32_t id);

  const State& state(std::uint32_t id) const { return entries_[id].state; }
  std::span<const Vertex> config(std::uint32_t id) const { return entries_[id].config; }
  std::span<const Vertex> labels(std::uint32_t id) const { return entries_[id].labels; }
  const MoveOrder& order(std::uint32_t id) const { return orders_[id]; }

  /// Initial law as interned ids, in the process's order.
  std::vector<std::pair<std::uint32_t, Rational>> initial();

 private:
  struct Entry {
    State state;
    std::vector<Vertex> config;
    std::vector<Vertex> labels;
    std::optional<std::vector<Edge>> successors;
  };

  std::uint32_t intern_order(const MoveOrder& order);

  const CouplingProcess& process_;
  std::size_t budget_;
  std::unordered_map<State, std::uint32_t, StateHash> index_;
  std::deque<Entry> entries_;
  std::vector<MoveOrder> orders_;
};

/// Exact law of the state at t = 0..horizon, started from the initial law.
/// Every layer has total mass exactly 1.
class JointDistribution {
 public:
  using Layer = std::vector<std::pair<std::uint32_t, Rational>>;  // sorted by state id

  JointDistribution(StateSpace& space, int horizon);

  int horizon() const { return static_cast<int>(layers_.size()) - 1; }
  const Layer& layer(int t) const { return layers_.at(static_cast<std::size_t>(t)); }
  StateSpace& space() { return space_; }

 private:
  StateSpace& space_;
  std::vector<Layer> layers_;
};

}  // namespace avc
