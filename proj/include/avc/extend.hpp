#pragma once

#include <cstdint>
#include <span>
#include <string>

#include "avc/model.hpp"
#include "avc/permchain.hpp"
#include "avc/process.hpp"

namespace avc {

enum class ExtendMode { keep_walkers, add_walker };

/// Deliberate faults for negative testing of the verifiers.
enum class PermFault {
  none,
  reuse_previous_a,  // every other round repeats the previous transposition index
};

struct ExtendOptions {
  std::string stream;     // permutation-chain substream; default "perm@<n>"
  bool trust_base = false;  // accept a base that is not certified as a coupling
  PermFault fault = PermFault::none;
};

/// Coupling of the base's k walkers on K_n, n = base n + 1: each walker sits
/// at P_t(U_t(j)) where P_t is an independent permutation chain on [n]. Move
/// orders pass through and frames carry P_t as labels.
ProcessPtr extend_sac(ProcessPtr base, const ExtendOptions& options = {});

/// As extend_sac plus walker k+1 at P_t(N). Walker k+1 moves right after the
/// base walker b with W_{t-1}(b) = W_t(k+1) when there is one, and first
/// otherwise. The base must carry a partial order; the new walker is
/// incomparable to every base walker.
ProcessPtr extend_posac(ProcessPtr base, const ExtendOptions& options = {});

/// Applies extend_sac or extend_posac target_n - base n times, each step with
/// its own permutation substream.
ProcessPtr iterate_extension(ProcessPtr base, int target_n, ExtendMode mode, const ExtendOptions& options = {});

/// The label chain alone as a one-walker process whose walker sits at P_t(N).
ProcessPtr perm_chain_process(int n);

/// σ_t for a POSAC extension, with the insertion point and s_t it came from.
struct ExtendedOrder {
  MoveOrder base_order;
  int insert_position = 0;   // position of the new walker in resolved
  WalkerId after_walker = 0;  // b, or 0 when the new walker moves first
  MoveOrder resolved;
};

/// Inserts walker k+1 into s_t given W_{t-1} of the base walkers and W_t(k+1).
/// Throws std::logic_error if two base walkers occupied the new vertex.
ExtendedOrder resolve_insertion(const MoveOrder& base_order, std::span<const Vertex> previous_base,
                                Vertex new_vertex);

struct SampleOptions {
  bool debug = false;  // record s_t for POSAC extensions
};

/// Frames t = 0..t_max, frame 0 drawn from the process's initial law.
/// Deterministic in (process, seed).
Trajectory sample_trajectory(const CouplingProcess& process, std::int64_t t_max, std::uint64_t seed,
                             const SampleOptions& options = {});

}  // namespace avc
