#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include <nlohmann/json.hpp>

#include "avc/model.hpp"
#include "avc/process.hpp"
#include "avc/rational.hpp"

namespace avc {

struct KernelTarget {
  Vertex v = 0;
  Rational p;
};

/// Move distribution of one walker in one configuration, given the new
/// vertices of the walkers that already moved this round (in move order).
struct KernelRow {
  std::vector<Vertex> config;
  WalkerId walker = 0;
  std::vector<Vertex> given;
  std::vector<KernelTarget> targets;
};

/// Explicit Markovian coupling: per-configuration sequential move
/// distributions with exact weights. The move order is the same every round.
class KernelTable {
 public:
  KernelTable() = default;
  KernelTable(int n, int k, MoveOrder move_order, std::vector<KernelRow> rows, std::string name = {});

  int n() const { return n_; }
  int k() const { return k_; }
  const MoveOrder& move_order() const { return move_order_; }
  const std::vector<KernelRow>& rows() const { return rows_; }
  const std::string& name() const { return name_; }

  /// nullptr when the table has no row for this (config, walker, given).
  const KernelRow* find(std::span<const Vertex> config, WalkerId walker, std::span<const Vertex> given) const;

 private:
  int n_ = 0;
  int k_ = 0;
  MoveOrder move_order_;
  std::vector<KernelRow> rows_;
  std::string name_;
  std::unordered_map<std::vector<int>, std::size_t, StateHash> index_;
};

struct KernelViolation {
  std::string kind;  // sum, negative, stay, same-round, cross-round, out-of-range, missing-row, bad-row
  std::vector<Vertex> config;
  WalkerId walker = 0;
  std::vector<Vertex> given;
  Vertex target = 0;
  std::string detail;
};

struct KernelReport {
  bool ok = true;
  std::vector<KernelViolation> violations;
  nlohmann::json to_json() const;
};

/// Checks exact row sums, non-negative weights, and that every supported
/// target avoids the walker's own vertex, the old vertex of every walker yet
/// to move, and the new vertex of every walker that already moved. Rows must
/// exist for every reachable (config, walker, given).
KernelReport validate_kernel(const KernelTable& table);

/// One walker on K_n stepping uniformly to another vertex.
KernelTable trivial_kernel(int n);

/// Two walkers on K_n (n >= 4). Walker 1 moves uniformly off both occupied
/// vertices; walker 2 takes walker 1's vacated vertex with probability
/// 1/(n-1) and otherwise a uniform other legal vertex.
KernelTable symmetric_pair_kernel(int n);

/// The exactly solved stationary law failed to be unique.
class StationaryError : public Unsupported {
 public:
  StationaryError(std::string what, std::vector<std::vector<std::vector<Vertex>>> classes)
      : Unsupported(std::move(what)), closed_classes(std::move(classes)) {}
  std::vector<std::vector<std::vector<Vertex>>> closed_classes;  // configurations per closed class
};

/// Thrown by kernel_process for tables that fail validate_kernel.
class KernelError : public ParameterError {
 public:
  explicit KernelError(KernelReport r) : ParameterError("kernel table failed validation"), report(std::move(r)) {}
  KernelReport report;
};

/// Markovian process driven by `table`; state is the configuration and the
/// initial law is the exact stationary distribution of the configuration
/// chain. Throws KernelError for invalid tables and StationaryError when the
/// chain has more than one closed class.
ProcessPtr kernel_process(const KernelTable& table);

/// kernel_process(trivial_kernel(n)); throws ParameterError for n < 2.
ProcessPtr trivial_sac(int n);

/// Exact stationary distribution over configurations of a kernel table,
/// indexed like all_configurations(n, k).
std::vector<Rational> kernel_stationary(const KernelTable& table);

/// All ordered placements of k walkers on distinct vertices of K_n, in
/// lexicographic order.
std::vector<std::vector<Vertex>> all_configurations(int n, int k);

struct SearchOptions {
  int max_denominator = 60;
  std::size_t max_candidates = 20000;
};

struct SearchResult {
  std::optional<KernelTable> table;
  std::size_t candidates_examined = 0;
  std::size_t free_parameters = 0;
};

/// Searches relabeling-equivariant kernels with weights on a rational grid
/// for one whose walkers have exactly uniform conditional laws up to
/// `horizon`. Requires k <= 3 and n <= 7 (ParameterError otherwise).
SearchResult search_equivariant_kernel(int n, int k, int horizon, const SearchOptions& options = {});

/// Same n, k, move order and the same positive-weight rows.
bool equivalent_kernels(const KernelTable& a, const KernelTable& b);

// Kernel JSON: {"n","k","order"?,"name"?,"rows":[{"config","walker","given","targets":[{"v","p":"num/den"}]}]}
nlohmann::json kernel_to_json(const KernelTable& table);
/// Throws ParameterError on schema errors (weights must be exact "p/q" strings).
KernelTable kernel_from_json(const nlohmann::json& j);

}  // namespace avc
