#include "avc/joint.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>
#include <string>

namespace avc {

StateSpace::StateSpace(const CouplingProcess& process, std::size_t budget) : process_(process), budget_(budget) {
  if (!process.can_enumerate()) throw Unsupported("process '" + process.info().name + "' cannot be enumerated");
}

std::uint32_t StateSpace::intern(const State& s) {
  auto it = index_.find(s);
  if (it != index_.end()) return it->second;
  if (entries_.size() >= budget_) {
    throw Unsupported("exact enumeration aborted: more than " + std::to_string(budget_) + " states");
  }
  const auto id = static_cast<std::uint32_t>(entries_.size());
  Entry e;
  e.state = s;
  e.config = process_.config_of(s);
  e.labels = process_.labels_of(s);
  entries_.push_back(std::move(e));
  index_.emplace(s, id);
  return id;
}

std::uint32_t StateSpace::intern_order(const MoveOrder& order) {
  auto it = std::find(orders_.begin(), orders_.end(), order);
  if (it != orders_.end()) return static_cast<std::uint32_t>(it - orders_.begin());
  orders_.push_back(order);
  return static_cast<std::uint32_t>(orders_.size() - 1);
}

const std::vector<StateSpace::Edge>& StateSpace::successors(std::uint32_t id) {
  if (entries_[id].successors) return *entries_[id].successors;
  std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> merged;
  Rational total;
  for (const auto& b : process_.enumerate_step(entries_[id].state)) {
    if (b.weight.is_zero()) continue;
    total += b.weight;
    merged[{intern(b.next), intern_order(b.order)}] += b.weight;
  }
  if (total != Rational(1)) {
    throw std::logic_error("enumerated step weights sum to " + total.str() + ", not 1");
  }
  std::vector<Edge> edges;
  edges.reserve(merged.size());
  for (const auto& [key, w] : merged) edges.push_back({key.first, key.second, w});
  entries_[id].successors = std::move(edges);
  return *entries_[id].successors;
}

std::vector<std::pair<std::uint32_t, Rational>> StateSpace::initial() {
  std::vector<std::pair<std::uint32_t, Rational>> out;
  Rational total;
  for (const auto& ws : process_.init_distribution(budget_)) {
    total += ws.weight;
    out.emplace_back(intern(ws.state), ws.weight);
  }
  if (total != Rational(1)) throw std::logic_error("initial law has total mass " + total.str());
  return out;
}

JointDistribution::JointDistribution(StateSpace& space, int horizon) : space_(space) {
  if (horizon < 0) throw ParameterError("horizon must be non-negative");
  std::map<std::uint32_t, Rational> cur;
  for (const auto& [id, w] : space_.initial()) cur[id] += w;
  layers_.emplace_back(cur.begin(), cur.end());
  for (int t = 1; t <= horizon; ++t) {
    std::map<std::uint32_t, Rational> next;
    for (const auto& [id, m] : layers_.back()) {
      for (const auto& e : space_.successors(id)) next[e.next] += m * e.weight;
    }
    Rational total;
    for (const auto& [id, m] : next) total += m;
    if (total != Rational(1)) throw std::logic_error("layer mass is " + total.str() + ", not 1");
    layers_.emplace_back(next.begin(), next.end());
  }
}

}  // namespace avc
