#include "avc/verify.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <unordered_map>

#include "avc/extend.hpp"
#include "avc/joint.hpp"

namespace avc {

const char* to_string(Status s) {
  switch (s) {
    case Status::pass:
      return "pass";
    case Status::fail:
      return "fail";
    case Status::unsupported:
      return "unsupported";
  }
  return "unknown";
}

void VerificationReport::add_witness(nlohmann::json witness) {
  if (status != Status::unsupported) status = Status::fail;
  if (witnesses.size() < kMaxWitnesses) witnesses.push_back(std::move(witness));
  stats["witness_count"] = stats.value("witness_count", 0) + 1;
}

void VerificationReport::mark_unsupported(const std::string& reason) {
  status = Status::unsupported;
  stats["reason"] = reason;
}

nlohmann::json VerificationReport::to_json() const {
  return {{"check", check}, {"pass", passed()}, {"status", to_string(status)}, {"witnesses", witnesses},
          {"stats", stats}};
}

nlohmann::json HistoryEvent::to_json() const {
  nlohmann::json pos = nlohmann::json::array();
  for (const auto& [t, v] : positions) pos.push_back({t, v});
  nlohmann::json j{{"walker", walker}, {"positions", pos}};
  if (!labels.empty()) j["labels"] = labels;
  return j;
}

VerificationReport check_avoidance(const Trajectory& traj) {
  VerificationReport rep;
  rep.check = "avoidance";
  const auto k = static_cast<std::size_t>(traj.k());
  std::int64_t same = 0, cross = 0, stay = 0;
  for (std::size_t t = 0; t < traj.size(); ++t) {
    auto cur = traj.config(t);
    auto order = traj.order(t);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = i + 1; j < k; ++j) {
        if (cur[i] == cur[j]) {
          ++same;
          rep.add_witness({{"t", t}, {"i", i + 1}, {"j", j + 1}, {"kind", "same-round"}, {"vertex", cur[i]}});
        }
      }
    }
    if (t == 0) continue;
    auto prev = traj.config(t - 1);
    for (std::size_t i = 0; i < k; ++i) {
      if (cur[i] == prev[i]) {
        ++stay;
        rep.add_witness({{"t", t}, {"i", i + 1}, {"j", i + 1}, {"kind", "stay"}, {"vertex", cur[i]}});
      }
      for (std::size_t j = 0; j < k; ++j) {
        if (i == j || order[i] >= order[j]) continue;
        if (cur[i] == prev[j]) {
          ++cross;
          rep.add_witness({{"t", t}, {"i", i + 1}, {"j", j + 1}, {"kind", "cross-round"}, {"vertex", cur[i]}});
        }
      }
    }
  }
  rep.stats["rounds"] = traj.size() == 0 ? 0 : traj.size() - 1;
  rep.stats["frames"] = traj.size();
  rep.stats["same_round_violations"] = same;
  rep.stats["cross_round_violations"] = cross;
  rep.stats["stay_violations"] = stay;
  return rep;
}

namespace {

std::uint64_t checked_pow(std::uint64_t base, int exp) {
  std::uint64_t r = 1;
  for (int i = 0; i < exp; ++i) {
    if (r > std::numeric_limits<std::uint64_t>::max() / base) throw Unsupported("history keys overflow 64 bits");
    r *= base;
  }
  return r;
}

std::vector<std::uint64_t> decode(std::uint64_t key, std::uint64_t base, int len) {
  std::vector<std::uint64_t> digits(static_cast<std::size_t>(len));
  for (int i = len - 1; i >= 0; --i) {
    digits[static_cast<std::size_t>(i)] = key % base;
    key /= base;
  }
  return digits;
}

using Dist = std::unordered_map<std::uint32_t, Rational>;

void weak_laws(StateSpace& space, const std::vector<std::pair<std::uint32_t, Rational>>& init, int horizon,
               const ExactOptions& opt, VerificationReport& rep) {
  const int n = space.process().info().n;
  const int k = space.process().info().k;
  const auto base = static_cast<std::uint64_t>(n + 1);
  checked_pow(base, horizon + 1);
  const Rational expected(1, n - 1);
  std::int64_t histories = 0;
  std::int64_t identities = 0;
  std::size_t peak_nodes = 0;

  for (int j = 1; j <= k; ++j) {
    const auto jj = static_cast<std::size_t>(j - 1);
    std::map<std::uint64_t, Dist> layer;
    for (const auto& [id, m] : init) layer[static_cast<std::uint64_t>(space.config(id)[jj])][id] += m;

    for (int len = 1; len <= horizon; ++len) {
      std::map<std::uint64_t, Dist> next;
      std::size_t nodes = 0;
      for (const auto& [key, dist] : layer) {
        Rational total;
        std::vector<Rational> law(static_cast<std::size_t>(n) + 1);
        for (const auto& [id, m] : dist) {
          total += m;
          for (const auto& e : space.successors(id)) {
            const Rational mw = m * e.weight;
            const Vertex v = space.config(e.next)[jj];
            law[static_cast<std::size_t>(v)] += mw;
            if (len < horizon) next[key * base + static_cast<std::uint64_t>(v)][e.next] += mw;
          }
        }
        ++histories;
        const auto last = static_cast<Vertex>(key % base);
        auto witness = [&](Vertex v, const Rational& observed) {
          HistoryEvent h{j, {}, {}};
          auto digits = decode(key, base, len);
          for (std::size_t t = 0; t < digits.size(); ++t) {
            h.positions.emplace_back(static_cast<std::int64_t>(t), static_cast<Vertex>(digits[t]));
          }
          nlohmann::json w = h.to_json();
          w["kind"] = "weak";
          w["next"] = v;
          w["observed"] = observed.str();
          w["expected"] = v == last ? "0" : expected.str();
          rep.add_witness(std::move(w));
        };
        for (Vertex v = 1; v <= n; ++v) {
          const auto& mass = law[static_cast<std::size_t>(v)];
          ++identities;
          if (v == last) {
            if (!mass.is_zero()) witness(v, mass / total);
          } else if (mass * Rational(n - 1) != total) {
            witness(v, mass / total);
          }
        }
        if (opt.stop_at_first_failure && !rep.passed()) return;
      }
      for (const auto& [key, dist] : next) nodes += dist.size();
      peak_nodes = std::max(peak_nodes, nodes + space.size());
      if (peak_nodes > opt.budget) {
        throw Unsupported("exact enumeration aborted: " + std::to_string(peak_nodes) + " weighted nodes exceed budget " +
                          std::to_string(opt.budget));
      }
      layer = std::move(next);
    }
  }
  rep.stats["histories_checked"] = histories;
  rep.stats["identities_checked"] = identities;
  rep.stats["peak_nodes"] = peak_nodes;
}

std::uint64_t perm_rank(std::span<const Vertex> p) {
  std::uint64_t rank = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    std::uint64_t smaller = 0;
    for (std::size_t j = i + 1; j < p.size(); ++j)
      if (p[j] < p[i]) ++smaller;
    rank = rank * (p.size() - i) + smaller;
  }
  return rank;
}

Vertex preimage(std::span<const Vertex> p, Vertex v) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (p[i] == v) return static_cast<Vertex>(i + 1);
  return 0;
}

void strong_laws(StateSpace& space, const std::vector<std::pair<std::uint32_t, Rational>>& init, int horizon,
                 std::size_t budget, VerificationReport& rep) {
  const auto& info = space.process().info();
  const int n = info.n;
  if (!info.has_labels) throw Unsupported("strong identities need a process with label permutations");
  if (n < 3) throw Unsupported("strong identities need n >= 3");
  std::uint64_t fact = 1;
  for (int i = 2; i <= n; ++i) fact *= static_cast<std::uint64_t>(i);
  const std::uint64_t base = fact * static_cast<std::uint64_t>(n + 1);
  checked_pow(base, horizon);
  const Rational one_over_n1(1, n - 1);
  const Rational one_over_n2(1, n - 2);

  std::vector<std::uint64_t> rank_cache;
  auto rank_of = [&](std::uint32_t id) {
    if (rank_cache.size() <= id) rank_cache.resize(space.size(), std::numeric_limits<std::uint64_t>::max());
    if (rank_cache[id] == std::numeric_limits<std::uint64_t>::max()) rank_cache[id] = perm_rank(space.labels(id));
    return rank_cache[id];
  };

  std::int64_t histories = 0;
  std::map<std::string, std::int64_t> checked;
  std::size_t peak_nodes = 0;
  std::vector<int> walkers;

  for (int j = 1; j <= info.k; ++j) {
    const auto jj = static_cast<std::size_t>(j - 1);
    const auto first = init.front().first;
    if (preimage(space.labels(first), space.config(first)[jj]) == n) continue;  // the inserted walker
    walkers.push_back(j);

    auto code = [&](std::uint32_t id) {
      const Vertex u = preimage(space.labels(id), space.config(id)[jj]);
      return rank_of(id) * static_cast<std::uint64_t>(n + 1) + static_cast<std::uint64_t>(u);
    };
    std::map<std::uint64_t, Dist> layer;
    for (const auto& [id, m] : init) layer[code(id)][id] += m;

    for (int len = 1; len <= horizon; ++len) {
      std::map<std::uint64_t, Dist> next;
      for (const auto& [key, dist] : layer) {
        const std::uint32_t any = dist.begin()->first;
        const auto p = space.labels(any);
        const Vertex pN = p[static_cast<std::size_t>(n - 1)];
        const Vertex w = space.config(any)[jj];
        Rational total;
        std::vector<Rational> mass_pn(static_cast<std::size_t>(n) + 1);
        std::vector<Rational> mass_w(static_cast<std::size_t>(n) + 1);
        std::vector<Rational> mass_pull(static_cast<std::size_t>(n) + 1);
        for (const auto& [id, m] : dist) {
          total += m;
          for (const auto& e : space.successors(id)) {
            const Rational mw = m * e.weight;
            const auto q = space.labels(e.next);
            const Vertex qN = q[static_cast<std::size_t>(n - 1)];
            const Vertex w2 = space.config(e.next)[jj];
            const Vertex u2 = preimage(q, w2);
            mass_pn[static_cast<std::size_t>(qN)] += mw;
            mass_w[static_cast<std::size_t>(w2)] += mw;
            if (u2 >= 1 && u2 <= n) {
              const Vertex va = p[static_cast<std::size_t>(u2 - 1)];  // U_t(j) = p^{-1}(va)
              if (qN != va) mass_pull[static_cast<std::size_t>(va)] += mw;
            }
            if (len < horizon) next[key * base + code(e.next)][e.next] += mw;
          }
        }
        ++histories;
        auto fail = [&](const char* kind, Vertex v, const Rational& observed, const Rational& expect) {
          HistoryEvent h{j, {}, {}};
          // Rebuild the history from the key: (rank, u) digits; report u and the last labels.
          auto digits = decode(key, base, len);
          for (std::size_t t = 0; t < digits.size(); ++t) {
            h.positions.emplace_back(static_cast<std::int64_t>(t), static_cast<Vertex>(digits[t] % (n + 1)));
          }
          h.labels.emplace_back(p.begin(), p.end());
          nlohmann::json wj = h.to_json();
          wj["kind"] = kind;
          wj["v"] = v;
          wj["observed"] = observed.str();
          wj["expected"] = expect.str();
          wj["note"] = "positions are base positions U; labels are the last P";
          rep.add_witness(std::move(wj));
        };
        for (Vertex v = 1; v <= n; ++v) {
          const auto vi = static_cast<std::size_t>(v);
          // P(P_t(N) = v | A)
          ++checked["label_step"];
          if (v == pN ? !mass_pn[vi].is_zero() : mass_pn[vi] * Rational(n - 1) != total) {
            fail("strong-label-step", v, mass_pn[vi] / total, v == pN ? Rational(0) : one_over_n1);
          }
          // P(W_t(j) = v | A)
          ++checked["walker_step"];
          if (v == w ? !mass_w[vi].is_zero() : mass_w[vi] * Rational(n - 1) != total) {
            fail("strong-walker-step", v, mass_w[vi] / total, v == w ? Rational(0) : one_over_n1);
          }
          if (v == pN || v == w) continue;
          const Rational rest = total - mass_pn[vi];
          ++checked["pullback_previous_labels"];
          if (mass_pull[vi] * Rational(n - 2) != rest) {
            fail("strong-pullback-previous", v, rest.is_zero() ? Rational(0) : mass_pull[vi] / rest, one_over_n2);
          }
          ++checked["pullback_current_labels"];
          if (mass_w[vi] * Rational(n - 2) != rest) {
            fail("strong-pullback-current", v, rest.is_zero() ? Rational(0) : mass_w[vi] / rest, one_over_n2);
          }
        }
      }
      std::size_t nodes = 0;
      for (const auto& [key, dist] : next) nodes += dist.size();
      peak_nodes = std::max(peak_nodes, nodes + space.size());
      if (peak_nodes > budget) {
        throw Unsupported("strong enumeration aborted: " + std::to_string(peak_nodes) + " weighted nodes exceed budget " +
                          std::to_string(budget));
      }
      layer = std::move(next);
    }
  }
  nlohmann::json s;
  s["horizon"] = horizon;
  s["histories_checked"] = histories;
  s["identities_checked"] = checked;
  s["walkers"] = walkers;
  s["peak_nodes"] = peak_nodes;
  s["expected_label_step"] = one_over_n1.str();
  s["expected_pullback"] = one_over_n2.str();
  rep.stats["strong"] = s;
}

}  // namespace

VerificationReport exact_conditional_laws(const CouplingProcess& process, const ExactOptions& options) {
  VerificationReport rep;
  rep.check = "exact-conditional-laws";
  const auto& info = process.info();
  rep.stats["process"] = info.name;
  rep.stats["n"] = info.n;
  rep.stats["k"] = info.k;
  rep.stats["horizon"] = options.horizon;
  rep.stats["expected"] = Rational(1, std::max(1, info.n - 1)).str();
  if (options.horizon < 1) throw ParameterError("horizon must be at least 1");
  try {
    StateSpace space(process, options.budget);
    const auto init = space.initial();
    weak_laws(space, init, options.horizon, options, rep);
    if (info.has_labels && options.strong_horizon > 0 && !(options.stop_at_first_failure && !rep.passed())) {
      strong_laws(space, init, std::min(options.horizon, options.strong_horizon), options.budget, rep);
    }
    rep.stats["states"] = space.size();
  } catch (const Unsupported& e) {
    rep.mark_unsupported(e.what());
  }
  return rep;
}

VerificationReport exact_strong_identities(const CouplingProcess& process, int horizon, std::size_t budget) {
  VerificationReport rep;
  rep.check = "exact-strong-identities";
  rep.stats["process"] = process.info().name;
  rep.stats["horizon"] = horizon;
  if (horizon < 1) throw ParameterError("horizon must be at least 1");
  try {
    StateSpace space(process, budget);
    const auto init = space.initial();
    strong_laws(space, init, horizon, budget, rep);
    rep.stats["states"] = space.size();
  } catch (const Unsupported& e) {
    rep.mark_unsupported(e.what());
  }
  return rep;
}

VerificationReport stationarity_check(const CouplingProcess& process, int steps, std::size_t budget) {
  VerificationReport rep;
  rep.check = "stationarity";
  rep.stats["process"] = process.info().name;
  rep.stats["steps"] = steps;
  try {
    StateSpace space(process, budget);
    JointDistribution joint(space, steps);
    const auto& first = joint.layer(0);
    std::map<std::uint32_t, Rational> initial(first.begin(), first.end());
    for (int t = 1; t <= steps; ++t) {
      std::map<std::uint32_t, Rational> layer(joint.layer(t).begin(), joint.layer(t).end());
      if (layer == initial) continue;
      // Report the first state (by id) whose mass differs.
      std::map<std::uint32_t, std::pair<Rational, Rational>> diff;
      for (const auto& [id, m] : initial) diff[id].first = m;
      for (const auto& [id, m] : layer) diff[id].second = m;
      for (const auto& [id, masses] : diff) {
        if (masses.first == masses.second) continue;
        nlohmann::json w{{"t", t},
                         {"config", space.config(id)},
                         {"initial_mass", masses.first.str()},
                         {"mass", masses.second.str()}};
        if (!space.labels(id).empty()) w["labels"] = space.labels(id);
        rep.add_witness(std::move(w));
        break;
      }
    }
    rep.stats["support"] = first.size();
    if (!first.empty()) {
      const bool uniform = std::all_of(first.begin(), first.end(), [&](const auto& e) { return e.second == first.front().second; });
      rep.stats["uniform"] = uniform;
      if (uniform) rep.stats["mass_per_state"] = first.front().second.str();
    }
  } catch (const Unsupported& e) {
    rep.mark_unsupported(e.what());
  }
  return rep;
}

VerificationReport check_posac_orders(const Trajectory& traj, const PartialOrder& r, bool debug) {
  VerificationReport rep;
  rep.check = "posac-orders";
  if (traj.empty()) {
    rep.mark_unsupported("empty trajectory");
    return rep;
  }
  if (traj.k() != r.k()) throw ParameterError("trajectory and partial order have different walker counts");
  const bool recompute = debug && traj.meta().last_walker_added;
  std::int64_t after_b = 0, first_case = 0;
  const auto k = static_cast<std::size_t>(traj.k());
  for (std::size_t t = 0; t < traj.size(); ++t) {
    auto pos = traj.order(t);
    MoveOrder sigma;
    try {
      sigma = MoveOrder(std::vector<int>(pos.begin(), pos.end()));
    } catch (const ParameterError&) {
      rep.add_witness({{"t", t}, {"kind", "not-a-permutation"}});
      continue;
    }
    for (auto [i, j] : r.relations()) {
      if (sigma.position(i) >= sigma.position(j)) {
        rep.add_witness({{"t", t}, {"i", i}, {"j", j}, {"kind", "violates-order"}});
      }
    }
    if (!recompute || t == 0) continue;
    std::vector<int> s;
    if (traj.has_base_orders()) {
      auto b = traj.base_order(t);
      s.assign(b.begin(), b.end());
    } else {
      const int removed = pos.back();
      s.assign(pos.begin(), pos.end() - 1);
      for (auto& p : s)
        if (p > removed) --p;
    }
    auto prev = traj.config(t - 1).first(k - 1);
    try {
      auto expected = resolve_insertion(MoveOrder(s), prev, traj.config(t)[k - 1]);
      (expected.after_walker != 0 ? after_b : first_case)++;
      if (!(expected.resolved == sigma)) {
        rep.add_witness({{"t", t},
                         {"kind", "insertion-mismatch"},
                         {"expected", std::vector<int>(expected.resolved.positions().begin(), expected.resolved.positions().end())},
                         {"observed", std::vector<int>(pos.begin(), pos.end())}});
      }
    } catch (const std::logic_error& e) {
      rep.add_witness({{"t", t}, {"kind", "non-unique-b"}, {"detail", e.what()}});
    }
  }
  rep.stats["frames"] = traj.size();
  rep.stats["debug"] = recompute;
  if (recompute) {
    rep.stats["inserted_after_b"] = after_b;
    rep.stats["inserted_first"] = first_case;
  }
  return rep;
}

VerificationReport label_markov_check(const CouplingProcess& process, int steps, std::size_t budget) {
  VerificationReport rep;
  rep.check = "label-markov";
  rep.stats["process"] = process.info().name;
  try {
    StateSpace space(process, budget);
    JointDistribution joint(space, steps);
    std::map<std::pair<std::vector<Vertex>, std::vector<Vertex>>, std::uint32_t> seen;
    for (std::uint32_t id = 0; id < space.size(); ++id) {
      std::pair key{std::vector<Vertex>(space.config(id).begin(), space.config(id).end()),
                    std::vector<Vertex>(space.labels(id).begin(), space.labels(id).end())};
      auto [it, fresh] = seen.emplace(std::move(key), id);
      if (!fresh) {
        rep.add_witness({{"config", it->first.first}, {"labels", it->first.second}, {"kind", "ambiguous-frame"}});
      }
    }
    rep.stats["states"] = space.size();
  } catch (const Unsupported& e) {
    rep.mark_unsupported(e.what());
  }
  return rep;
}

namespace {

std::uint64_t splitmix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

VerificationReport sampler_consistency(const CouplingProcess& process, int steps, std::int64_t runs,
                                       std::uint64_t seed, double sigmas, std::size_t budget) {
  VerificationReport rep;
  rep.check = "sampler-consistency";
  rep.stats["process"] = process.info().name;
  rep.stats["steps"] = steps;
  rep.stats["runs"] = runs;
  try {
    StateSpace space(process, budget);
    JointDistribution joint(space, steps);
    std::map<std::vector<Vertex>, Rational> exact;
    for (const auto& [id, m] : joint.layer(steps)) {
      exact[std::vector<Vertex>(space.config(id).begin(), space.config(id).end())] += m;
    }
    std::map<std::vector<Vertex>, std::int64_t> counts;
    for (std::int64_t r = 0; r < runs; ++r) {
      SeedStreams streams(splitmix(seed ^ splitmix(static_cast<std::uint64_t>(r))));
      State s = process.sample_init(streams);
      for (int t = 0; t < steps; ++t) s = process.sample_step(s, streams).next;
      ++counts[process.config_of(s)];
    }
    double worst = 0;
    for (const auto& [config, c] : counts) {
      if (!exact.count(config)) rep.add_witness({{"config", config}, {"count", c}, {"kind", "outside-support"}});
    }
    for (const auto& [config, p] : exact) {
      const double pd = p.to_double();
      const double expected = pd * static_cast<double>(runs);
      const double sd = std::sqrt(static_cast<double>(runs) * pd * (1 - pd));
      const auto it = counts.find(config);
      const double observed = it == counts.end() ? 0.0 : static_cast<double>(it->second);
      const double z = sd > 0 ? std::abs(observed - expected) / sd : (observed == expected ? 0.0 : INFINITY);
      worst = std::max(worst, z);
      if (z > sigmas) {
        rep.add_witness({{"config", config}, {"exact", p.str()}, {"observed", observed}, {"z", z}});
      }
    }
    rep.stats["outcomes"] = exact.size();
    rep.stats["max_abs_z"] = worst;
    rep.stats["threshold_sigmas"] = sigmas;
  } catch (const Unsupported& e) {
    rep.mark_unsupported(e.what());
  }
  return rep;
}

}  // namespace avc
