#include "avc/trajectory_io.hpp"

#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

namespace avc {

void write_trajectory_jsonl(std::ostream& out, const Trajectory& traj) {
  const auto& m = traj.meta();
  nlohmann::json meta{{"format", "avc-trajectory/1"},
                      {"n", traj.n()},
                      {"k", traj.k()},
                      {"seed", m.seed},
                      {"process", m.process},
                      {"window", m.window},
                      {"has_labels", traj.has_labels()},
                      {"has_base_orders", traj.has_base_orders()},
                      {"last_walker_added", m.last_walker_added}};
  out << nlohmann::json{{"meta", meta}}.dump() << '\n';
  for (std::size_t t = 0; t < traj.size(); ++t) {
    auto c = traj.config(t);
    auto o = traj.order(t);
    nlohmann::json f{{"t", t}, {"config", std::vector<Vertex>(c.begin(), c.end())}, {"order", std::vector<int>(o.begin(), o.end())}};
    if (traj.has_labels()) {
      auto l = traj.labels(t);
      f["labels"] = std::vector<Vertex>(l.begin(), l.end());
    }
    if (traj.has_base_orders()) {
      auto b = traj.base_order(t);
      f["base_order"] = std::vector<int>(b.begin(), b.end());
    }
    out << f.dump() << '\n';
  }
}

Trajectory read_trajectory_jsonl(std::istream& in) {
  std::string line;
  if (!std::getline(in, line)) throw ParameterError("empty trajectory stream");
  try {
    const auto head = nlohmann::json::parse(line).at("meta");
    if (head.at("format") != "avc-trajectory/1") throw ParameterError("unknown trajectory format");
    Trajectory traj(head.at("n").get<int>(), head.at("k").get<int>(), head.at("has_labels").get<bool>(),
                    head.value("has_base_orders", false));
    traj.meta().seed = head.at("seed").get<std::uint64_t>();
    traj.meta().process = head.value("process", "");
    traj.meta().window = head.value("window", traj.meta().window);
    traj.meta().last_walker_added = head.value("last_walker_added", false);
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      const auto f = nlohmann::json::parse(line);
      if (f.at("t").get<std::size_t>() != traj.size()) throw ParameterError("frames must be consecutive from t = 0");
      const auto config = f.at("config").get<std::vector<Vertex>>();
      const auto order = f.at("order").get<std::vector<int>>();
      const auto labels = f.value("labels", std::vector<Vertex>{});
      const auto base = f.value("base_order", std::vector<int>{});
      traj.push(config, order, labels, base);
    }
    return traj;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed trajectory: ") + e.what());
  }
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,walker,vertex,move_position\n";
  for (std::size_t t = 0; t < traj.size(); ++t) {
    auto c = traj.config(t);
    auto o = traj.order(t);
    for (int j = 0; j < traj.k(); ++j) {
      out << t << ',' << j + 1 << ',' << c[static_cast<std::size_t>(j)] << ',' << o[static_cast<std::size_t>(j)] << '\n';
    }
  }
}

}  // namespace avc
