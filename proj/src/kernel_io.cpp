#include "avc/base.hpp"

namespace avc {

nlohmann::json kernel_to_json(const KernelTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  for (const auto& r : table.rows()) {
    nlohmann::json targets = nlohmann::json::array();
    for (const auto& t : r.targets) targets.push_back({{"v", t.v}, {"p", t.p.str()}});
    rows.push_back({{"config", r.config}, {"walker", r.walker}, {"given", r.given}, {"targets", targets}});
  }
  nlohmann::json j{{"n", table.n()}, {"k", table.k()}, {"rows", rows}};
  auto pos = table.move_order().positions();
  j["order"] = std::vector<int>(pos.begin(), pos.end());
  if (!table.name().empty()) j["name"] = table.name();
  return j;
}

KernelTable kernel_from_json(const nlohmann::json& j) {
  try {
    const int n = j.at("n").get<int>();
    const int k = j.at("k").get<int>();
    MoveOrder order = j.contains("order") ? MoveOrder(j.at("order").get<std::vector<int>>()) : MoveOrder::identity(k);
    std::vector<KernelRow> rows;
    for (const auto& r : j.at("rows")) {
      KernelRow row;
      row.config = r.at("config").get<std::vector<Vertex>>();
      row.walker = r.at("walker").get<int>();
      row.given = r.value("given", std::vector<Vertex>{});
      for (const auto& t : r.at("targets")) {
        const auto& p = t.at("p");
        if (!p.is_string()) throw ParameterError("kernel weights must be exact \"p/q\" strings");
        row.targets.push_back({t.at("v").get<Vertex>(), Rational::parse(p.get<std::string>())});
      }
      rows.push_back(std::move(row));
    }
    return KernelTable(n, k, std::move(order), std::move(rows), j.value("name", std::string{}));
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("kernel JSON: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParameterError(std::string("kernel JSON: ") + e.what());
  }
}

}  // namespace avc
