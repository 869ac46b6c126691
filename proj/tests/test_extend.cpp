#include <doctest.h>

#include "avc/base.hpp"
#include "avc/descriptor.hpp"
#include "avc/extend.hpp"
#include "avc/verify.hpp"

using namespace avc;

TEST_CASE("insertion follows the base walker that left the new vertex") {
  const auto s = MoveOrder::identity(2);
  const std::vector<Vertex> prev{3, 5};

  const auto after2 = resolve_insertion(s, prev, 5);
  CHECK(after2.after_walker == 2);
  CHECK(after2.resolved == MoveOrder({1, 2, 3}));

  const auto after1 = resolve_insertion(s, prev, 3);
  CHECK(after1.after_walker == 1);
  CHECK(after1.insert_position == 2);
  CHECK(after1.resolved == MoveOrder({1, 3, 2}));

  const auto first = resolve_insertion(s, prev, 1);
  CHECK(first.after_walker == 0);
  CHECK(first.resolved == MoveOrder({2, 3, 1}));

  // b moving second in s: walker 3 goes right after it.
  const auto swapped = resolve_insertion(MoveOrder({2, 1}), prev, 3);
  CHECK(swapped.resolved == MoveOrder({2, 1, 3}));

  const std::vector<Vertex> clash{4, 4};
  CHECK_THROWS_AS(resolve_insertion(s, clash, 4), std::logic_error);
}

TEST_CASE("extension metadata") {
  const auto base = kernel_process(symmetric_pair_kernel(5));
  const auto keep = extend_sac(base);
  CHECK(keep->info().n == 6);
  CHECK(keep->info().k == 2);
  CHECK(keep->info().certified);
  CHECK(keep->info().has_labels);
  CHECK(keep->info().name == "kernel(pair-k5) > keep@6");

  const auto add = iterate_extension(base, 7, ExtendMode::add_walker);
  CHECK(add->info().k == 4);
  CHECK(add->info().last_walker_added);
  CHECK(add->info().order->relations() == PartialOrder::chain(2).relations());
  CHECK(add->info().name == "kernel(pair-k5) > add@6 > add@7");

  ExtendOptions faulty;
  faulty.fault = PermFault::reuse_previous_a;
  const auto bad = extend_sac(base, faulty);
  CHECK_FALSE(bad->info().certified);
  CHECK_FALSE(bad->can_enumerate());

  CHECK_THROWS_AS(iterate_extension(base, 5, ExtendMode::keep_walkers), ParameterError);
  CHECK_THROWS_AS(extend_sac(nullptr), ParameterError);
}

TEST_CASE("uncertified bases need explicit trust") {
  const auto indep = independent_walks(5, 2);
  CHECK_THROWS_AS(extend_sac(indep), ParameterError);
  ExtendOptions trust;
  trust.trust_base = true;
  const auto p = extend_sac(indep, trust);
  CHECK_FALSE(p->info().certified);
  const auto traj = sample_trajectory(*p, 2000, 3);
  CHECK_FALSE(check_avoidance(traj).passed());
}

TEST_CASE("sampling is deterministic and prefix-stable") {
  const auto p = iterate_extension(kernel_process(symmetric_pair_kernel(5)), 7, ExtendMode::add_walker);
  const auto a = sample_trajectory(*p, 500, 42);
  const auto b = sample_trajectory(*p, 500, 42);
  const auto longer = sample_trajectory(*p, 900, 42);
  const auto other = sample_trajectory(*p, 500, 43);
  bool differs = false;
  for (std::size_t t = 0; t <= 500; ++t) {
    const auto ca = a.config(t);
    CHECK(std::equal(ca.begin(), ca.end(), b.config(t).begin()));
    CHECK(std::equal(ca.begin(), ca.end(), longer.config(t).begin()));
    CHECK(std::equal(a.labels(t).begin(), a.labels(t).end(), longer.labels(t).begin()));
    differs = differs || !std::equal(ca.begin(), ca.end(), other.config(t).begin());
  }
  CHECK(differs);
}

TEST_CASE("the added walker sits at the image of N") {
  const auto p = extend_posac(kernel_process(symmetric_pair_kernel(5)));
  const auto traj = sample_trajectory(*p, 300, 5);
  for (std::size_t t = 0; t < traj.size(); ++t) CHECK(traj.config(t)[2] == traj.labels(t)[5]);
}

TEST_CASE("sampled extensions avoid collisions") {
  const auto pair = kernel_process(symmetric_pair_kernel(5));
  for (const auto& p : {extend_sac(pair), iterate_extension(pair, 7, ExtendMode::keep_walkers), extend_posac(pair),
                        iterate_extension(pair, 7, ExtendMode::add_walker)}) {
    const auto traj = sample_trajectory(*p, 20000, 11, SampleOptions{true});
    const auto rep = check_avoidance(traj);
    CHECK_MESSAGE(rep.passed(), p->info().name);
    if (p->info().last_walker_added) CHECK(check_posac_orders(traj, *p->info().order).passed());
  }
}

TEST_CASE("exact laws of small extensions") {
  ExactOptions opt;
  opt.horizon = 3;
  const auto keep = iterate_extension(trivial_sac(3), 5, ExtendMode::keep_walkers);
  CHECK(exact_conditional_laws(*keep, opt).passed());
  const auto add = extend_posac(trivial_sac(3));
  const auto rep = exact_conditional_laws(*add, opt);
  CHECK_MESSAGE(rep.passed(), rep.to_json().dump());
  CHECK(stationarity_check(*add, 2).passed());
  CHECK(label_markov_check(*add, 2).passed());
  CHECK(exact_strong_identities(*extend_sac(trivial_sac(4)), 2).passed());
}

TEST_CASE("sampler and enumerator agree") {
  const auto p = extend_sac(trivial_sac(3));
  const auto rep = sampler_consistency(*p, 3, 20000, 9);
  CHECK_MESSAGE(rep.passed(), rep.to_json().dump());
  CHECK(rep.stats["outcomes"] == 4);
}

TEST_CASE("a label chain that reuses its transposition is caught") {
  ExtendOptions faulty;
  faulty.fault = PermFault::reuse_previous_a;
  const auto bad = extend_posac(kernel_process(symmetric_pair_kernel(5)), faulty);
  ChiSquareOptions opt;
  opt.samples = 100000;
  opt.seed = 1;
  const auto rep = chi_square_uniformity(*bad, opt);
  CHECK_FALSE(rep.passed());
  CHECK(exact_conditional_laws(*bad).status == Status::unsupported);

  const auto good = chi_square_uniformity(*extend_posac(kernel_process(symmetric_pair_kernel(5))), opt);
  CHECK_MESSAGE(good.passed(), good.to_json().dump());
}
