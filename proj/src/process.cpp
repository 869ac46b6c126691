#include "avc/process.hpp"

#include <boost/container_hash/hash.hpp>

namespace avc {

std::size_t StateHash::operator()(const State& s) const noexcept { return boost::hash_range(s.begin(), s.end()); }

void CouplingProcess::labels_into(const State&, std::span<Vertex>) const {
  throw Unsupported("process '" + info_.name + "' exposes no labels");
}

std::vector<Vertex> CouplingProcess::config_of(const State& state) const {
  std::vector<Vertex> out(static_cast<std::size_t>(info_.k));
  config_into(state, out);
  return out;
}

std::vector<Vertex> CouplingProcess::labels_of(const State& state) const {
  if (!info_.has_labels) return {};
  std::vector<Vertex> out(static_cast<std::size_t>(info_.n));
  labels_into(state, out);
  return out;
}

}  // namespace avc
