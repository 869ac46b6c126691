#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "avc/model.hpp"
#include "avc/rng.hpp"

namespace avc {

/// Frequencies of k transmitters over consecutive slots: transmitter j uses
/// frequency at(slot, j) in 1..n.
class HopSchedule {
 public:
  HopSchedule(int n, int k) : n_(n), k_(k) {}

  int n() const { return n_; }
  int k() const { return k_; }
  std::size_t slots() const { return k_ == 0 ? 0 : freq_.size() / static_cast<std::size_t>(k_); }
  Vertex at(std::size_t slot, int transmitter) const {
    return freq_[slot * static_cast<std::size_t>(k_) + static_cast<std::size_t>(transmitter)];
  }
  std::span<const Vertex> slot(std::size_t s) const {
    return std::span<const Vertex>(freq_).subspan(s * static_cast<std::size_t>(k_), static_cast<std::size_t>(k_));
  }
  void push(std::span<const Vertex> frequencies);

 private:
  int n_;
  int k_;
  std::vector<Vertex> freq_;
};

/// Walker j of frame t becomes transmitter j in slot t.
HopSchedule schedule_from_trajectory(const Trajectory& traj);

/// Straw-man: transmitter j in slot t uses ((t + j) mod band) + 1, cycling
/// through the `band` lowest frequencies. band 0 means k + 1.
HopSchedule round_robin_schedule(int n, int k, std::int64_t slots, int band = 0);

/// "slot,transmitter,frequency" with a header line; transmitters count from 1.
void write_schedule_csv(std::ostream& out, const HopSchedule& schedule);
/// One {"slot","frequencies"} object per line.
void write_schedule_jsonl(std::ostream& out, const HopSchedule& schedule);

/// A jammer following one transmitter. Before each slot it picks f distinct
/// frequencies; after the slot it learns the target's frequency (and, with
/// full observation, all transmitters' frequencies).
class Adversary {
 public:
  virtual ~Adversary() = default;
  virtual void observe(Vertex target, std::span<const Vertex> all) = 0;
  virtual std::vector<Vertex> choose(int f, Rng& rng) = 0;
};

/// Strategies that only see the target's own history:
///   repeat-last-f         the f most recent distinct frequencies, current included
///   uniform-random-other  f uniform frequencies other than the current one
///   histogram-of-history  the f most used past frequencies other than the current one
///   recent-others         the f most recent distinct frequencies other than the current one
const std::vector<std::string>& builtin_strategies();
/// Builtins plus "uniform-random-free", which needs full observation.
std::unique_ptr<Adversary> make_adversary(const std::string& strategy, int n);

struct HopsimOptions {
  std::string strategy = "histogram-of-history";
  int f = 1;
  std::int64_t rounds = 0;  // jammed slots per target; 0 means all but the first slot
  std::uint64_t seed = 0;
  bool full_observation = false;
};

struct HitReport {
  int target = 0;  // 1-based transmitter
  std::int64_t rounds = 0;
  std::int64_t hits = 0;
  double rate = 0;
  double nominal = 0;  // f / (N - 1)
  double z_nominal = 0;
  // Per-round chance of a memoryless hop: |J minus the target's current frequency| / (N - 1).
  double effective = 0;
  double z_effective = 0;

  nlohmann::json to_json() const;
};

struct HopsimReport {
  std::string strategy;
  int f = 0;
  int n = 0;
  std::vector<HitReport> targets;

  nlohmann::json to_json() const;
};

/// Jams every transmitter separately with a fresh adversary. Throws
/// ParameterError for unknown strategies, f outside 1..n-2, or a schedule
/// shorter than rounds + 1 slots.
HopsimReport simulate_jamming(const HopSchedule& schedule, const HopsimOptions& options);

}  // namespace avc
