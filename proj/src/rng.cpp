#include "avc/rng.hpp"

#include <limits>

namespace avc {

std::uint64_t Rng::uniform_below(std::uint64_t bound) {
  // Reject the top partial block so every residue is equally likely.
  const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                              std::numeric_limits<std::uint64_t>::max() % bound;
  std::uint64_t x = engine_();
  while (x >= limit) x = engine_();
  return x % bound;
}

std::uint64_t fnv1a(std::string_view text) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

Rng& SeedStreams::stream(const std::string& name) {
  auto it = streams_.find(name);
  if (it != streams_.end()) return it->second;
  const std::uint64_t h = fnv1a(name);
  std::seed_seq seq{static_cast<std::uint32_t>(master_), static_cast<std::uint32_t>(master_ >> 32),
                    static_cast<std::uint32_t>(h), static_cast<std::uint32_t>(h >> 32)};
  return streams_.emplace(name, Rng(seq)).first->second;
}

}  // namespace avc
