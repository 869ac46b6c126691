#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace avc {

// Vertices of K_N and walker ids are 1-based throughout, including on disk.
using Vertex = int;
using WalkerId = int;

/// Bad arguments to a public operation (sizes out of range, mismatched k, ...).
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested operation is not available for this process, or an exact
/// computation was aborted because it would exceed its budget.
class Unsupported : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Placement of walkers 1..k on the vertices of K_N.
class Configuration {
 public:
  Configuration() = default;
  Configuration(int n, std::vector<Vertex> placement);

  int n() const { return n_; }
  int k() const { return static_cast<int>(placement_.size()); }
  Vertex at(WalkerId w) const { return placement_.at(static_cast<std::size_t>(w - 1)); }
  std::span<const Vertex> placement() const { return placement_; }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  int n_ = 0;
  std::vector<Vertex> placement_;
};

struct ConfigurationReport {
  bool ok = true;
  std::vector<std::pair<WalkerId, WalkerId>> collisions;  // i < j sharing a vertex
  std::vector<WalkerId> out_of_range;
};

/// Total: OK iff the placement is injective and inside [N].
ConfigurationReport validate_configuration(const Configuration& config);

/// Within-round move order, stored as the position of each walker
/// (position(w) == 1 means w moves first).
class MoveOrder {
 public:
  MoveOrder() = default;
  explicit MoveOrder(std::vector<int> positions);

  static MoveOrder identity(int k);
  /// Builds the order from the sequence in which walkers move.
  static MoveOrder from_sequence(std::span<const WalkerId> sequence);

  int k() const { return static_cast<int>(positions_.size()); }
  int position(WalkerId w) const { return positions_.at(static_cast<std::size_t>(w - 1)); }
  std::span<const int> positions() const { return positions_; }
  /// Walkers in the order they move.
  std::vector<WalkerId> sequence() const;

  friend bool operator==(const MoveOrder&, const MoveOrder&) = default;

 private:
  std::vector<int> positions_;
};

/// Strict partial order R on walkers [k]; (i, j) means i must move before j.
class PartialOrder {
 public:
  PartialOrder() = default;
  /// Throws ParameterError when a relation is out of range, reflexive, or
  /// closes a cycle.
  PartialOrder(int k, std::vector<std::pair<WalkerId, WalkerId>> relations);

  /// 1 < 2 < ... < k.
  static PartialOrder chain(int k);
  /// The total order in which `order` moves walkers.
  static PartialOrder chain_of(const MoveOrder& order);

  int k() const { return k_; }
  const std::vector<std::pair<WalkerId, WalkerId>>& relations() const { return relations_; }

  /// Same relations on k + extra walkers; the new walkers are incomparable.
  PartialOrder with_extra_walkers(int extra) const;

  friend bool operator==(const PartialOrder&, const PartialOrder&) = default;

 private:
  int k_ = 0;
  std::vector<std::pair<WalkerId, WalkerId>> relations_;
};

/// True iff every (i, j) in r has position(i) < position(j).
/// Throws ParameterError when the walker counts differ.
bool order_respects(const MoveOrder& order, const PartialOrder& r);

/// Read-only view of one time step of a trajectory.
struct TrajectoryFrame {
  std::int64_t t = 0;
  std::span<const Vertex> config;
  std::span<const int> order;
  std::span<const Vertex> labels;  // empty when the process exposes no labels
};

struct TrajectoryMeta {
  std::uint64_t seed = 0;
  std::string process;  // human-readable descriptor of the generating process
  // Frames cover t = 0..T of a stationary process started from its
  // stationary law; the doubly infinite index set is not realized.
  std::string window = "finite t=0..T, stationary initialization";
  bool last_walker_added = false;  // POSAC extension: walker k is the inserted walker
};

/// Time-indexed frames with constant k and N, stored flat.
class Trajectory {
 public:
  Trajectory() = default;
  Trajectory(int n, int k, bool has_labels, bool has_base_orders = false);

  int n() const { return n_; }
  int k() const { return k_; }
  bool has_labels() const { return has_labels_; }
  bool has_base_orders() const { return has_base_orders_; }
  std::size_t size() const { return size_; }
  bool empty() const { return size_ == 0; }

  TrajectoryMeta& meta() { return meta_; }
  const TrajectoryMeta& meta() const { return meta_; }

  /// Appends frame t = size(). `labels` must be empty iff !has_labels();
  /// `base_order` (k-1 entries) must be empty iff !has_base_orders().
  void push(std::span<const Vertex> config, std::span<const int> order,
            std::span<const Vertex> labels = {}, std::span<const int> base_order = {});

  TrajectoryFrame frame(std::size_t t) const;
  std::span<const Vertex> config(std::size_t t) const;
  std::span<const int> order(std::size_t t) const;
  std::span<const Vertex> labels(std::size_t t) const;
  /// Order s_t of the base coupling (walkers 1..k-1), recorded in debug runs
  /// of POSAC extensions.
  std::span<const int> base_order(std::size_t t) const;

  void reserve(std::size_t frames);

 private:
  int n_ = 0;
  int k_ = 0;
  bool has_labels_ = false;
  bool has_base_orders_ = false;
  std::size_t size_ = 0;
  std::vector<Vertex> configs_;
  std::vector<int> orders_;
  std::vector<Vertex> labels_;
  std::vector<int> base_orders_;
  TrajectoryMeta meta_;
};

}  // namespace avc
