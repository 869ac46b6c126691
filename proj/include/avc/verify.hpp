#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "avc/model.hpp"
#include "avc/process.hpp"

namespace avc {

enum class Status { pass, fail, unsupported };

const char* to_string(Status s);

/// Outcome of one check. A failing report always carries a witness.
struct VerificationReport {
  static constexpr std::size_t kMaxWitnesses = 25;

  std::string check;
  Status status = Status::pass;
  nlohmann::json witnesses = nlohmann::json::array();
  nlohmann::json stats = nlohmann::json::object();

  bool passed() const { return status == Status::pass; }

  /// Marks the report failed and keeps the first kMaxWitnesses witnesses;
  /// stats["witness_count"] counts all of them.
  void add_witness(nlohmann::json witness);
  void mark_unsupported(const std::string& reason);

  /// {"check","pass","status","witnesses","stats"}
  nlohmann::json to_json() const;
};

/// A walker's own position history, optionally with the label permutations
/// of the same rounds (the strong event).
struct HistoryEvent {
  WalkerId walker = 0;
  std::vector<std::pair<std::int64_t, Vertex>> positions;
  std::vector<std::vector<Vertex>> labels;

  nlohmann::json to_json() const;
};

/// Both avoidance clauses on every round: no shared vertex within a frame
/// (same-round), and no walker landing on the previous vertex of a walker
/// that moves after it (cross-round). Also flags walkers that stay put.
VerificationReport check_avoidance(const Trajectory& traj);

struct ExactOptions {
  int horizon = 3;         // longest conditioning history
  int strong_horizon = 2;  // for the label-conditioned identities; 0 disables
  std::size_t budget = 10'000'000;
  bool stop_at_first_failure = false;
};

/// Exact oracle for the simple-walk property: for every walker, every own
/// history (w_0..w_{l-1}) of positive mass with l <= horizon and every
/// v != w_{l-1}, P(W_l = v | history) == 1/(N-1) as rationals. Windows start
/// at t = 0, which covers all windows of a stationary process. When the
/// process exposes labels the strong identities are checked too.
VerificationReport exact_conditional_laws(const CouplingProcess& process, const ExactOptions& options = {});

/// Identities conditioned on the strong event (own base history u and label
/// history p) for every base walker of an extension:
///   P(P_t(N) = v | A) = 1/(N-1)                          for v != p_{t-1}(N)
///   P(U_t(j) = p_{t-1}^{-1}(v) | A, P_t(N) != v) = 1/(N-2)  for v not in {p_{t-1}(N), w_{t-1}}
///   P(U_t(j) = P_t^{-1}(v) | A, P_t(N) != v) = 1/(N-2)      for the same v
///   P(W_t(j) = v | A) = 1/(N-1)                          for v != w_{t-1}
VerificationReport exact_strong_identities(const CouplingProcess& process, int horizon,
                                           std::size_t budget = 10'000'000);

/// Exact equality of the state law at t = 1..steps with the initial law.
VerificationReport stationarity_check(const CouplingProcess& process, int steps, std::size_t budget = 10'000'000);

struct ChiSquareOptions {
  std::int64_t samples = 1'000'000;  // transitions per walker
  int depth = 2;                     // own positions in each conditioning bucket
  double alpha = 1e-3;               // family-wise, Bonferroni across buckets
  std::uint64_t seed = 0;
  std::int64_t min_bucket = 0;  // 0 means 100 * (N - 1)
};

/// Goodness of fit of each walker's next position against uniform over the
/// N-1 other vertices, bucketed by its last `depth` positions.
VerificationReport chi_square_uniformity(const CouplingProcess& process, const ChiSquareOptions& options);
VerificationReport chi_square_uniformity(const Trajectory& traj, const ChiSquareOptions& options);

/// Every σ_t respects r. With `debug` and a trajectory from a POSAC extension,
/// also recomputes the insertion of the last walker from consecutive frames.
VerificationReport check_posac_orders(const Trajectory& traj, const PartialOrder& r, bool debug = true);

/// The frame (configuration, labels) determines the internal state, so moves
/// depend only on the current configuration and labels.
VerificationReport label_markov_check(const CouplingProcess& process, int steps, std::size_t budget = 10'000'000);

/// Self-test of sampler against enumerator: the empirical law of the
/// configuration at t = steps over `runs` independent runs agrees with the
/// exact law within `sigmas` binomial standard deviations per outcome.
VerificationReport sampler_consistency(const CouplingProcess& process, int steps, std::int64_t runs,
                                       std::uint64_t seed, double sigmas = 5.0, std::size_t budget = 10'000'000);

}  // namespace avc
