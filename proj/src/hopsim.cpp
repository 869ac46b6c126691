#include "avc/hopsim.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <ostream>

namespace avc {
namespace {

class RepeatLast final : public Adversary {
 public:
  void observe(Vertex target, std::span<const Vertex>) override {
    std::erase(recent_, target);
    recent_.push_front(target);
  }
  std::vector<Vertex> choose(int f, Rng&) override {
    const auto m = std::min(recent_.size(), static_cast<std::size_t>(f));
    return {recent_.begin(), recent_.begin() + static_cast<std::ptrdiff_t>(m)};
  }

 private:
  std::deque<Vertex> recent_;
};

class RecentOthers final : public Adversary {
 public:
  void observe(Vertex target, std::span<const Vertex>) override {
    std::erase(recent_, target);
    recent_.push_front(target);
  }
  std::vector<Vertex> choose(int f, Rng&) override {
    std::vector<Vertex> out;
    for (std::size_t i = 1; i < recent_.size() && static_cast<int>(out.size()) < f; ++i) out.push_back(recent_[i]);
    return out;
  }

 private:
  std::deque<Vertex> recent_;
};

class UniformOther final : public Adversary {
 public:
  explicit UniformOther(int n) : n_(n) {}
  void observe(Vertex target, std::span<const Vertex>) override { current_ = target; }
  std::vector<Vertex> choose(int f, Rng& rng) override {
    std::vector<Vertex> pool;
    for (Vertex v = 1; v <= n_; ++v)
      if (v != current_) pool.push_back(v);
    return draw(pool, f, rng);
  }

  static std::vector<Vertex> draw(std::vector<Vertex> pool, int f, Rng& rng) {
    const auto m = std::min(pool.size(), static_cast<std::size_t>(f));
    for (std::size_t i = 0; i < m; ++i) {
      const auto j = i + rng.uniform_below(pool.size() - i);
      std::swap(pool[i], pool[j]);
    }
    pool.resize(m);
    return pool;
  }

 private:
  int n_;
  Vertex current_ = 0;
};

class Histogram final : public Adversary {
 public:
  explicit Histogram(int n) : counts_(static_cast<std::size_t>(n) + 1, 0) {}
  void observe(Vertex target, std::span<const Vertex>) override {
    ++counts_[static_cast<std::size_t>(target)];
    current_ = target;
  }
  std::vector<Vertex> choose(int f, Rng&) override {
    std::vector<Vertex> order;
    for (Vertex v = 1; v < static_cast<Vertex>(counts_.size()); ++v)
      if (v != current_) order.push_back(v);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) {
      return counts_[static_cast<std::size_t>(a)] > counts_[static_cast<std::size_t>(b)];
    });
    order.resize(std::min(order.size(), static_cast<std::size_t>(f)));
    return order;
  }

 private:
  std::vector<std::int64_t> counts_;
  Vertex current_ = 0;
};

// Experimental: sees every transmitter and jams frequencies none of them use.
class UniformFree final : public Adversary {
 public:
  explicit UniformFree(int n) : n_(n) {}
  void observe(Vertex, std::span<const Vertex> all) override { occupied_.assign(all.begin(), all.end()); }
  std::vector<Vertex> choose(int f, Rng& rng) override {
    std::vector<Vertex> pool;
    for (Vertex v = 1; v <= n_; ++v)
      if (std::find(occupied_.begin(), occupied_.end(), v) == occupied_.end()) pool.push_back(v);
    return UniformOther::draw(std::move(pool), f, rng);
  }

 private:
  int n_;
  std::vector<Vertex> occupied_;
};

}  // namespace

void HopSchedule::push(std::span<const Vertex> frequencies) {
  if (static_cast<int>(frequencies.size()) != k_) throw ParameterError("slot has the wrong number of transmitters");
  for (Vertex v : frequencies)
    if (v < 1 || v > n_) throw ParameterError("frequency out of range");
  freq_.insert(freq_.end(), frequencies.begin(), frequencies.end());
}

HopSchedule schedule_from_trajectory(const Trajectory& traj) {
  HopSchedule s(traj.n(), traj.k());
  for (std::size_t t = 0; t < traj.size(); ++t) s.push(traj.config(t));
  return s;
}

HopSchedule round_robin_schedule(int n, int k, std::int64_t slots, int band) {
  if (band == 0) band = k + 1;
  if (k < 1 || band < k || band > n) throw ParameterError("round robin needs k <= band <= n");
  HopSchedule s(n, k);
  std::vector<Vertex> row(static_cast<std::size_t>(k));
  for (std::int64_t t = 0; t < slots; ++t) {
    for (int j = 0; j < k; ++j) row[static_cast<std::size_t>(j)] = static_cast<Vertex>((t + j) % band) + 1;
    s.push(row);
  }
  return s;
}

void write_schedule_csv(std::ostream& out, const HopSchedule& schedule) {
  out << "slot,transmitter,frequency\n";
  for (std::size_t t = 0; t < schedule.slots(); ++t)
    for (int j = 0; j < schedule.k(); ++j) out << t << ',' << j + 1 << ',' << schedule.at(t, j) << '\n';
}

void write_schedule_jsonl(std::ostream& out, const HopSchedule& schedule) {
  for (std::size_t t = 0; t < schedule.slots(); ++t) {
    auto slot = schedule.slot(t);
    out << nlohmann::json{{"slot", t}, {"frequencies", std::vector<Vertex>(slot.begin(), slot.end())}}.dump() << '\n';
  }
}

const std::vector<std::string>& builtin_strategies() {
  static const std::vector<std::string> names{"repeat-last-f", "uniform-random-other", "histogram-of-history", "recent-others"};
  return names;
}

std::unique_ptr<Adversary> make_adversary(const std::string& strategy, int n) {
  if (strategy == "repeat-last-f") return std::make_unique<RepeatLast>();
  if (strategy == "recent-others") return std::make_unique<RecentOthers>();
  if (strategy == "uniform-random-other") return std::make_unique<UniformOther>(n);
  if (strategy == "histogram-of-history") return std::make_unique<Histogram>(n);
  if (strategy == "uniform-random-free") return std::make_unique<UniformFree>(n);
  throw ParameterError("unknown strategy '" + strategy + "'");
}

nlohmann::json HitReport::to_json() const {
  return {{"target", target},   {"rounds", rounds},       {"hits", hits},
          {"rate", rate},       {"nominal", nominal},     {"z_nominal", z_nominal},
          {"effective", effective}, {"z_effective", z_effective}};
}

nlohmann::json HopsimReport::to_json() const {
  nlohmann::json t = nlohmann::json::array();
  for (const auto& r : targets) t.push_back(r.to_json());
  return {{"strategy", strategy}, {"f", f}, {"n", n}, {"targets", t}};
}

HopsimReport simulate_jamming(const HopSchedule& schedule, const HopsimOptions& options) {
  const int n = schedule.n();
  if (options.f < 1 || options.f > n - 2) throw ParameterError("f must lie in 1..N-2");
  if (options.strategy == "uniform-random-free" && !options.full_observation) {
    throw ParameterError("strategy 'uniform-random-free' needs full observation");
  }
  if (schedule.slots() < 2) throw ParameterError("schedule needs at least two slots");
  const auto rounds = options.rounds == 0 ? static_cast<std::int64_t>(schedule.slots()) - 1 : options.rounds;
  if (rounds < 1 || static_cast<std::size_t>(rounds) + 1 > schedule.slots()) {
    throw ParameterError("schedule has fewer than rounds + 1 slots");
  }

  HopsimReport report{options.strategy, options.f, n, {}};
  SeedStreams streams(options.seed);
  const double q = 1.0 / (n - 1);
  for (int j = 0; j < schedule.k(); ++j) {
    auto adversary = make_adversary(options.strategy, n);
    Rng& rng = streams.stream("jammer@" + std::to_string(j + 1));
    const std::span<const Vertex> none;
    HitReport r;
    r.target = j + 1;
    r.rounds = rounds;
    double mean = 0, var = 0;
    adversary->observe(schedule.at(0, j), options.full_observation ? schedule.slot(0) : none);
    for (std::int64_t t = 1; t <= rounds; ++t) {
      const auto slot = static_cast<std::size_t>(t);
      const Vertex current = schedule.at(slot - 1, j);
      const auto jam = adversary->choose(options.f, rng);
      const Vertex actual = schedule.at(slot, j);
      if (std::find(jam.begin(), jam.end(), actual) != jam.end()) ++r.hits;
      const auto live = static_cast<double>(jam.size() - static_cast<std::size_t>(std::count(jam.begin(), jam.end(), current)));
      const double p = live * q;
      mean += p;
      var += p * (1 - p);
      adversary->observe(actual, options.full_observation ? schedule.slot(slot) : none);
    }
    const auto hits = static_cast<double>(r.hits);
    const auto total = static_cast<double>(rounds);
    r.rate = hits / total;
    r.nominal = options.f * q;
    r.z_nominal = (hits - total * r.nominal) / std::sqrt(total * r.nominal * (1 - r.nominal));
    r.effective = mean / total;
    r.z_effective = var > 0 ? (hits - mean) / std::sqrt(var) : (hits == mean ? 0.0 : INFINITY);
    report.targets.push_back(r);
  }
  return report;
}

}  // namespace avc
