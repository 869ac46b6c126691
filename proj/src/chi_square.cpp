#include <cmath>
#include <map>

#include <boost/math/distributions/chi_squared.hpp>

#include "avc/extend.hpp"
#include "avc/verify.hpp"

namespace avc {

VerificationReport chi_square_uniformity(const Trajectory& traj, const ChiSquareOptions& options) {
  VerificationReport rep;
  rep.check = "chi-square-uniformity";
  const int n = traj.n();
  const int depth = options.depth;
  if (depth < 1) throw ParameterError("history depth must be at least 1");
  if (options.alpha <= 0 || options.alpha >= 1) throw ParameterError("alpha must lie in (0, 1)");
  const std::int64_t min_bucket = options.min_bucket > 0 ? options.min_bucket : 100 * static_cast<std::int64_t>(n - 1);
  rep.stats["process"] = traj.meta().process;
  rep.stats["seed"] = traj.meta().seed;
  rep.stats["depth"] = depth;
  rep.stats["alpha"] = options.alpha;
  rep.stats["min_bucket"] = min_bucket;

  struct Bucket {
    int walker;
    std::vector<Vertex> history;
    std::vector<std::int64_t> counts;
  };
  std::map<std::pair<int, std::vector<Vertex>>, std::vector<std::int64_t>> buckets;
  std::int64_t transitions = 0;
  const auto frames = traj.size();
  for (int j = 0; j < traj.k(); ++j) {
    const auto jj = static_cast<std::size_t>(j);
    std::vector<Vertex> hist(static_cast<std::size_t>(depth));
    for (std::size_t t = static_cast<std::size_t>(depth); t < frames; ++t) {
      for (int d = 0; d < depth; ++d) hist[static_cast<std::size_t>(d)] = traj.config(t - static_cast<std::size_t>(depth - d))[jj];
      auto& counts = buckets[{j + 1, hist}];
      if (counts.empty()) counts.assign(static_cast<std::size_t>(n) + 1, 0);
      ++counts[static_cast<std::size_t>(traj.config(t)[jj])];
      ++transitions;
    }
  }

  std::vector<Bucket> tested;
  nlohmann::json skipped = nlohmann::json::array();
  for (const auto& [key, counts] : buckets) {
    const Vertex current = key.second.back();
    if (counts[static_cast<std::size_t>(current)] > 0) {
      rep.add_witness({{"walker", key.first}, {"history", key.second}, {"kind", "stay"},
                       {"count", counts[static_cast<std::size_t>(current)]}});
    }
    std::int64_t total = 0;
    for (auto c : counts) total += c;
    if (total < min_bucket) {
      skipped.push_back({{"walker", key.first}, {"history", key.second}, {"count", total}});
      continue;
    }
    tested.push_back({key.first, key.second, counts});
  }

  const double threshold = tested.empty() ? options.alpha : options.alpha / static_cast<double>(tested.size());
  double min_p = 1.0;
  double max_stat = 0.0;
  const int dof = n - 2;
  for (const auto& b : tested) {
    const Vertex current = b.history.back();
    std::int64_t total = 0;
    for (auto c : b.counts) total += c;
    const double expected = static_cast<double>(total) / (n - 1);
    double stat = 0;
    for (Vertex v = 1; v <= n; ++v) {
      if (v == current) continue;
      const double d = static_cast<double>(b.counts[static_cast<std::size_t>(v)]) - expected;
      stat += d * d / expected;
    }
    double p = 1.0;
    if (dof > 0) p = boost::math::cdf(boost::math::complement(boost::math::chi_squared(dof), stat));
    min_p = std::min(min_p, p);
    max_stat = std::max(max_stat, stat);
    if (p < threshold) {
      rep.add_witness({{"walker", b.walker}, {"history", b.history}, {"kind", "non-uniform"}, {"statistic", stat},
                       {"p_value", p}, {"count", total}});
    }
  }
  rep.stats["transitions"] = transitions;
  rep.stats["buckets_tested"] = tested.size();
  rep.stats["buckets_skipped"] = skipped.size();
  rep.stats["skipped"] = skipped;
  rep.stats["degrees_of_freedom"] = dof;
  rep.stats["bonferroni_threshold"] = threshold;
  rep.stats["min_p_value"] = min_p;
  rep.stats["max_statistic"] = max_stat;
  return rep;
}

VerificationReport chi_square_uniformity(const CouplingProcess& process, const ChiSquareOptions& options) {
  const auto traj = sample_trajectory(process, options.samples + options.depth - 1, options.seed);
  return chi_square_uniformity(traj, options);
}

}  // namespace avc
