#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "avc/model.hpp"
#include "avc/rational.hpp"
#include "avc/rng.hpp"

namespace avc {

/// Opaque internal state of a coupling process; each process defines its own
/// layout. States compare and hash by value.
using State = std::vector<int>;

struct StateHash {
  std::size_t operator()(const State& s) const noexcept;
};

struct ProcessInfo {
  std::string name;  // composition, e.g. "kernel(pair-k5) > keep@6"
  int n = 0;
  int k = 0;
  std::optional<PartialOrder> order;  // R; absent for processes that are not (PO)SACs
  bool certified = false;             // avoidance holds by construction
  bool has_labels = false;            // frames carry a label permutation
  bool last_walker_added = false;     // walker k was inserted by a POSAC extension
};

/// Sampled transition. `base_order` is the base coupling's order s_t when the
/// process is a POSAC extension.
struct StepOutcome {
  State next;
  MoveOrder order;
  std::optional<MoveOrder> base_order;
};

/// One enumerated transition with its exact probability.
struct Branch {
  State next;
  MoveOrder order;
  Rational weight;
};

struct WeightedState {
  State state;
  Rational weight;
};

/// A coupled process of k walkers on K_N advancing one round per step.
///
/// Sampling is always available. Exact enumeration (init_distribution and
/// enumerate_step) is optional; when present, init is the stationary law,
/// enumerated weights sum to exactly 1, and sample_step draws from the same
/// support.
class CouplingProcess {
 public:
  virtual ~CouplingProcess() = default;

  const ProcessInfo& info() const { return info_; }

  virtual State sample_init(SeedStreams& streams) const = 0;
  virtual StepOutcome sample_step(const State& state, SeedStreams& streams) const = 0;

  virtual bool can_enumerate() const = 0;
  /// Number of states in the exact initial law (may be a rough upper bound).
  virtual double init_support_size() const = 0;
  /// Throws Unsupported when not enumerable or when the support exceeds
  /// `budget` states.
  virtual std::vector<WeightedState> init_distribution(std::size_t budget) const = 0;
  virtual std::vector<Branch> enumerate_step(const State& state) const = 0;

  /// Writes the walker positions for `state` into out[0..k).
  virtual void config_into(const State& state, std::span<Vertex> out) const = 0;
  /// Writes the label permutation into out[0..n) when has_labels.
  virtual void labels_into(const State& state, std::span<Vertex> out) const;
  /// Order reported for the frame at t = 0, which has no preceding round.
  virtual MoveOrder initial_order() const = 0;

  std::vector<Vertex> config_of(const State& state) const;
  std::vector<Vertex> labels_of(const State& state) const;

 protected:
  explicit CouplingProcess(ProcessInfo info) : info_(std::move(info)) {}

 private:
  ProcessInfo info_;
};

using ProcessPtr = std::shared_ptr<const CouplingProcess>;

}  // namespace avc
