#include "avc/model.hpp"

#include <algorithm>

namespace avc {

Configuration::Configuration(int n, std::vector<Vertex> placement)
    : n_(n), placement_(std::move(placement)) {}

ConfigurationReport validate_configuration(const Configuration& config) {
  ConfigurationReport report;
  auto p = config.placement();
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (p[i] < 1 || p[i] > config.n()) report.out_of_range.push_back(static_cast<WalkerId>(i + 1));
    for (std::size_t j = i + 1; j < p.size(); ++j) {
      if (p[i] == p[j]) report.collisions.emplace_back(i + 1, j + 1);
    }
  }
  report.ok = report.collisions.empty() && report.out_of_range.empty();
  return report;
}

MoveOrder::MoveOrder(std::vector<int> positions) : positions_(std::move(positions)) {
  std::vector<int> seen(positions_.size() + 1, 0);
  for (int p : positions_) {
    if (p < 1 || p > k() || seen[static_cast<std::size_t>(p)]++) {
      throw ParameterError("move order is not a permutation of [k]");
    }
  }
}

MoveOrder MoveOrder::identity(int k) {
  std::vector<int> p(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) p[static_cast<std::size_t>(i)] = i + 1;
  return MoveOrder(std::move(p));
}

MoveOrder MoveOrder::from_sequence(std::span<const WalkerId> sequence) {
  std::vector<int> p(sequence.size(), 0);
  for (std::size_t pos = 0; pos < sequence.size(); ++pos) {
    WalkerId w = sequence[pos];
    if (w < 1 || w > static_cast<int>(sequence.size())) throw ParameterError("walker out of range in sequence");
    p[static_cast<std::size_t>(w - 1)] = static_cast<int>(pos + 1);
  }
  return MoveOrder(std::move(p));
}

std::vector<WalkerId> MoveOrder::sequence() const {
  std::vector<WalkerId> seq(positions_.size());
  for (std::size_t w = 0; w < positions_.size(); ++w) {
    seq[static_cast<std::size_t>(positions_[w] - 1)] = static_cast<WalkerId>(w + 1);
  }
  return seq;
}

PartialOrder::PartialOrder(int k, std::vector<std::pair<WalkerId, WalkerId>> relations)
    : k_(k), relations_(std::move(relations)) {
  if (k < 0) throw ParameterError("negative walker count");
  std::sort(relations_.begin(), relations_.end());
  relations_.erase(std::unique(relations_.begin(), relations_.end()), relations_.end());
  // Transitive closure by Floyd-Warshall; k is tiny.
  const auto kk = static_cast<std::size_t>(k);
  std::vector<char> reach(kk * kk, 0);
  for (auto [i, j] : relations_) {
    if (i < 1 || i > k || j < 1 || j > k) throw ParameterError("partial order relation out of range");
    if (i == j) throw ParameterError("partial order must be irreflexive");
    reach[static_cast<std::size_t>(i - 1) * kk + static_cast<std::size_t>(j - 1)] = 1;
  }
  for (std::size_t m = 0; m < kk; ++m)
    for (std::size_t i = 0; i < kk; ++i)
      if (reach[i * kk + m])
        for (std::size_t j = 0; j < kk; ++j)
          if (reach[m * kk + j]) reach[i * kk + j] = 1;
  for (std::size_t i = 0; i < kk; ++i) {
    if (reach[i * kk + i]) throw ParameterError("partial order relations contain a cycle");
  }
}

PartialOrder PartialOrder::chain(int k) { return chain_of(MoveOrder::identity(k)); }

PartialOrder PartialOrder::chain_of(const MoveOrder& order) {
  auto seq = order.sequence();
  std::vector<std::pair<WalkerId, WalkerId>> rel;
  for (std::size_t i = 0; i + 1 < seq.size(); ++i) rel.emplace_back(seq[i], seq[i + 1]);
  return PartialOrder(order.k(), std::move(rel));
}

PartialOrder PartialOrder::with_extra_walkers(int extra) const {
  return PartialOrder(k_ + extra, relations_);
}

bool order_respects(const MoveOrder& order, const PartialOrder& r) {
  if (order.k() != r.k()) throw ParameterError("move order and partial order have different walker counts");
  return std::all_of(r.relations().begin(), r.relations().end(),
                     [&](const auto& rel) { return order.position(rel.first) < order.position(rel.second); });
}

Trajectory::Trajectory(int n, int k, bool has_labels, bool has_base_orders)
    : n_(n), k_(k), has_labels_(has_labels), has_base_orders_(has_base_orders) {}

void Trajectory::push(std::span<const Vertex> config, std::span<const int> order,
                      std::span<const Vertex> labels, std::span<const int> base_order) {
  const auto k = static_cast<std::size_t>(k_);
  if (config.size() != k || order.size() != k) throw ParameterError("frame size does not match trajectory k");
  if (has_labels_ != !labels.empty() || (has_labels_ && labels.size() != static_cast<std::size_t>(n_))) {
    throw ParameterError("frame labels do not match trajectory layout");
  }
  if (has_base_orders_ != !base_order.empty() || (has_base_orders_ && base_order.size() + 1 != k)) {
    throw ParameterError("frame base order does not match trajectory layout");
  }
  configs_.insert(configs_.end(), config.begin(), config.end());
  orders_.insert(orders_.end(), order.begin(), order.end());
  labels_.insert(labels_.end(), labels.begin(), labels.end());
  base_orders_.insert(base_orders_.end(), base_order.begin(), base_order.end());
  ++size_;
}

void Trajectory::reserve(std::size_t frames) {
  const auto k = static_cast<std::size_t>(k_);
  configs_.reserve(frames * k);
  orders_.reserve(frames * k);
  if (has_labels_) labels_.reserve(frames * static_cast<std::size_t>(n_));
  if (has_base_orders_) base_orders_.reserve(frames * (k - 1));
}

std::span<const Vertex> Trajectory::config(std::size_t t) const {
  const auto k = static_cast<std::size_t>(k_);
  return std::span<const Vertex>(configs_).subspan(t * k, k);
}

std::span<const int> Trajectory::order(std::size_t t) const {
  const auto k = static_cast<std::size_t>(k_);
  return std::span<const int>(orders_).subspan(t * k, k);
}

std::span<const Vertex> Trajectory::labels(std::size_t t) const {
  if (!has_labels_) return {};
  const auto n = static_cast<std::size_t>(n_);
  return std::span<const Vertex>(labels_).subspan(t * n, n);
}

std::span<const int> Trajectory::base_order(std::size_t t) const {
  if (!has_base_orders_) return {};
  const auto m = static_cast<std::size_t>(k_ - 1);
  return std::span<const int>(base_orders_).subspan(t * m, m);
}

TrajectoryFrame Trajectory::frame(std::size_t t) const {
  return TrajectoryFrame{static_cast<std::int64_t>(t), config(t), order(t), labels(t)};
}

}  // namespace avc
