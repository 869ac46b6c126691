#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "avc/base.hpp"
#include "avc/extend.hpp"

namespace avc {

struct ExtensionStep {
  ExtendMode mode = ExtendMode::keep_walkers;
  int n = 0;           // vertex count after this step
  std::string stream;  // empty means "perm@<n>"
  PermFault fault = PermFault::none;
};

/// A reproducible recipe for a process: a base, an optional partial order
/// overriding the base's, and a list of extension steps.
///
/// JSON: {"format":"avc-process/1",
///        "base":{"kind":"kernel","name":"pair-k5"} | {"kind":"kernel","kernel":{...}}
///              | {"kind":"independent","n":6,"k":2},
///        "order":[[1,2]]?, "steps":[{"mode":"keep"|"add","n":7,"stream"?,"fault":"reuse-a"?}],
///        "seed":123?}
struct ProcessDescriptor {
  std::string base_kind = "kernel";
  std::string base_name;                // builtin kernel name, or empty when `kernel` is set
  std::optional<KernelTable> kernel;
  int independent_n = 0;
  int independent_k = 0;
  std::optional<PartialOrder> order;
  std::vector<ExtensionStep> steps;
  std::optional<std::uint64_t> seed;

  /// The extension steps trust an uncertified base (independent walks).
  ProcessPtr build() const;
  int base_n() const;

  nlohmann::json to_json() const;
  static ProcessDescriptor from_json(const nlohmann::json& j);
};

/// "trivial:<n>", "pair-k<n>", or "independent:<n>:<k>".
ProcessDescriptor builtin_descriptor(const std::string& name);

/// Builtin kernel tables by name ("trivial:<n>", "pair-k<n>").
KernelTable builtin_kernel(const std::string& name);

/// k walkers stepping independently and uniformly, ignoring each other. Not
/// a coupling; useful as a straw-man for the verifiers.
ProcessPtr independent_walks(int n, int k);

/// Same process reporting a different partial order. Throws ParameterError
/// unless the process's moves respect r at t = 0.
ProcessPtr with_order(ProcessPtr process, PartialOrder r);

}  // namespace avc
