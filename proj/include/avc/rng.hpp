#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <string>
#include <string_view>

namespace avc {

/// 64-bit Mersenne Twister with bounded draws that do not depend on the
/// standard library's distribution implementations, so draws are identical
/// across toolchains.
class Rng {
 public:
  explicit Rng(std::seed_seq& seq) : engine_(seq) {}
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }

  /// Uniform integer in [0, bound); bound > 0. Unbiased (rejection sampling).
  std::uint64_t uniform_below(std::uint64_t bound);

 private:
  std::mt19937_64 engine_;
};

/// Named, independent random streams derived from one master seed.
///
/// The stream for a name depends only on (master seed, name), so adding a
/// consumer never shifts the draws of another, and running longer only
/// appends draws to each stream.
class SeedStreams {
 public:
  explicit SeedStreams(std::uint64_t master) : master_(master) {}

  std::uint64_t master() const { return master_; }
  Rng& stream(const std::string& name);

 private:
  std::uint64_t master_;
  std::map<std::string, Rng, std::less<>> streams_;
};

/// FNV-1a, used to turn stream names into seed material.
std::uint64_t fnv1a(std::string_view text);

}  // namespace avc
