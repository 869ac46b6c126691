#include <doctest.h>

#include <sstream>

#include "avc/descriptor.hpp"
#include "avc/extend.hpp"
#include "avc/trajectory_io.hpp"

using namespace avc;

TEST_CASE("trajectories round-trip through JSON lines") {
  const auto p = extend_posac(kernel_process(symmetric_pair_kernel(5)));
  const auto traj = sample_trajectory(*p, 50, 3, SampleOptions{true});
  std::stringstream buf;
  write_trajectory_jsonl(buf, traj);
  const auto first_line = buf.str().substr(0, buf.str().find('\n'));
  CHECK(first_line.find("\"meta\"") != std::string::npos);

  const auto back = read_trajectory_jsonl(buf);
  REQUIRE(back.size() == traj.size());
  CHECK(back.meta().seed == 3);
  CHECK(back.meta().process == traj.meta().process);
  CHECK(back.meta().last_walker_added);
  CHECK(back.has_base_orders());
  for (std::size_t t = 0; t < traj.size(); ++t) {
    CHECK(std::equal(traj.config(t).begin(), traj.config(t).end(), back.config(t).begin()));
    CHECK(std::equal(traj.order(t).begin(), traj.order(t).end(), back.order(t).begin()));
    CHECK(std::equal(traj.labels(t).begin(), traj.labels(t).end(), back.labels(t).begin()));
  }
}

TEST_CASE("malformed trajectory input is a parameter error") {
  std::istringstream empty("");
  CHECK_THROWS_AS(read_trajectory_jsonl(empty), ParameterError);
  std::istringstream junk("{\"meta\":{\"format\":\"avc-trajectory/1\",\"n\":4,\"k\":1,\"seed\":0,\"has_labels\":false}}\n"
                          "{\"t\":1,\"config\":[1],\"order\":[1]}\n");
  CHECK_THROWS_AS(read_trajectory_jsonl(junk), ParameterError);
}

TEST_CASE("trajectory CSV lists one row per walker and frame") {
  const auto traj = sample_trajectory(*trivial_sac(3), 1, 0);
  std::ostringstream out;
  write_trajectory_csv(out, traj);
  std::istringstream in(out.str());
  std::string line;
  int lines = 0;
  while (std::getline(in, line)) ++lines;
  CHECK(lines == 3);
  CHECK(out.str().rfind("t,walker,vertex,move_position\n0,1,", 0) == 0);
}

TEST_CASE("descriptors round-trip and rebuild the same process") {
  auto d = builtin_descriptor("pair-k5");
  d.order = PartialOrder(2, {{1, 2}});
  d.steps.push_back({ExtendMode::add_walker, 6, {}, PermFault::none});
  d.steps.push_back({ExtendMode::keep_walkers, 7, "alt", PermFault::none});
  d.seed = 9;
  const auto j = d.to_json();
  CHECK(j["format"] == "avc-process/1");
  const auto back = ProcessDescriptor::from_json(j);
  CHECK(back.to_json() == j);
  const auto p = back.build();
  CHECK(p->info().n == 7);
  CHECK(p->info().k == 3);
  CHECK(p->info().name == "kernel(pair-k5) > add@6 > keep@7");

  const auto a = sample_trajectory(*p, 100, 9);
  const auto b = sample_trajectory(*d.build(), 100, 9);
  for (std::size_t t = 0; t <= 100; ++t) CHECK(std::equal(a.config(t).begin(), a.config(t).end(), b.config(t).begin()));

  auto inline_kernel = builtin_descriptor("trivial:3");
  inline_kernel.kernel = trivial_kernel(3);
  inline_kernel.base_name.clear();
  CHECK(ProcessDescriptor::from_json(inline_kernel.to_json()).build()->info().n == 3);
}

TEST_CASE("descriptor errors") {
  CHECK_THROWS_AS(builtin_descriptor("pair-kx"), ParameterError);
  CHECK_THROWS_AS(builtin_descriptor("independent:5"), ParameterError);
  CHECK_THROWS_AS(builtin_descriptor("hexagon"), ParameterError);
  CHECK_THROWS_AS(ProcessDescriptor::from_json(nlohmann::json{{"format", "other"}}), ParameterError);
  auto d = builtin_descriptor("pair-k5");
  d.steps.push_back({ExtendMode::keep_walkers, 7, {}, PermFault::none});
  CHECK_THROWS_AS(d.build(), ParameterError);
  auto reversed = builtin_descriptor("pair-k5");
  reversed.order = PartialOrder(2, {{2, 1}});
  CHECK_THROWS_AS(reversed.build(), ParameterError);
}

TEST_CASE("independent walks extend only when trusted") {
  auto d = builtin_descriptor("independent:5:2");
  d.steps.push_back({ExtendMode::keep_walkers, 6, {}, PermFault::none});
  const auto p = d.build();
  CHECK_FALSE(p->info().certified);
  CHECK_THROWS_AS(extend_sac(independent_walks(5, 2)), ParameterError);
}
