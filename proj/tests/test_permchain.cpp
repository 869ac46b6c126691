#include <doctest.h>

#include <cmath>
#include <map>

#include "avc/permchain.hpp"

using namespace avc;

TEST_CASE("composition and inverse behave as group operations") {
  const auto perms = all_permutations(4);
  CHECK(perms.size() == 24);
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const auto& p = perms[rng.uniform_below(24)];
    const auto& q = perms[rng.uniform_below(24)];
    CHECK(p.compose(p.inverse()) == Permutation::identity(4));
    for (Vertex v = 1; v <= 4; ++v) CHECK(p.compose(q)(v) == p(q(v)));
    const auto a = static_cast<Vertex>(rng.uniform_below(3)) + 1;
    CHECK(p.then_swap(4, a) == p.compose(Permutation::transposition(4, 4, a)));
  }
  CHECK_THROWS_AS(Permutation({1, 1, 2}), ParameterError);
}

TEST_CASE("a chain step swaps the images of N and a") {
  const PermState s{Permutation({3, 1, 4, 2}), std::nullopt};
  const auto next = step_perm_chain_with(s, 2);
  CHECK(next.perm == Permutation({3, 2, 4, 1}));
  CHECK(next.last_a == 2);
  CHECK_THROWS_AS(step_perm_chain_with(s, 4), ParameterError);
  CHECK_THROWS_AS(step_perm_chain_with(s, 0), ParameterError);

  const auto branches = enumerate_perm_steps(s);
  REQUIRE(branches.size() == 3);
  for (const auto& [b, w] : branches) {
    CHECK(w == Rational(1, 3));
    CHECK(b.perm(4) != s.perm(4));  // the tracked walker always moves
  }
}

TEST_CASE("uniform law on S_n is invariant under the exact step") {
  for (int n = 2; n <= 5; ++n) {
    std::map<Permutation, Rational> mass;
    const auto perms = all_permutations(n);
    for (const auto& p : perms)
      for (const auto& [b, w] : enumerate_perm_steps(PermState{p, std::nullopt}))
        mass[b.perm] += w * Rational(1, static_cast<std::int64_t>(perms.size()));
    CHECK(mass.size() == perms.size());
    for (const auto& [p, m] : mass) CHECK(m == Rational(1, static_cast<std::int64_t>(perms.size())));
  }
  Rng rng(1);
  CHECK_THROWS_AS(init_perm_chain(1, rng), ParameterError);
}

TEST_CASE("random permutations hit each element of S_3 evenly") {
  Rng rng(99);
  std::map<Permutation, int> counts;
  const int draws = 60000;
  for (int i = 0; i < draws; ++i) ++counts[random_permutation(3, rng)];
  REQUIRE(counts.size() == 6);
  // 5 sigma of a binomial(60000, 1/6)
  for (const auto& [p, c] : counts) CHECK(std::abs(c - draws / 6) < 5 * 91.3);
}
