#include <doctest.h>

#include <algorithm>

#include "avc/base.hpp"
#include "avc/verify.hpp"

using namespace avc;

namespace {

bool has_kind(const KernelReport& r, const std::string& kind) {
  return std::any_of(r.violations.begin(), r.violations.end(), [&](const auto& v) { return v.kind == kind; });
}

// Copy of `t` with the row for (config, walker, given) replaced by `targets`.
KernelTable patched(const KernelTable& t, std::vector<Vertex> config, WalkerId w, std::vector<Vertex> given,
                    std::vector<KernelTarget> targets) {
  auto rows = t.rows();
  for (auto& r : rows)
    if (r.config == config && r.walker == w && r.given == given) r.targets = targets;
  return KernelTable(t.n(), t.k(), t.move_order(), std::move(rows), "patched");
}

// One walker on K_4 hopping 1 <-> 2 and 3 <-> 4: two closed classes.
KernelTable disconnected() {
  std::vector<KernelRow> rows;
  for (Vertex v = 1; v <= 4; ++v) rows.push_back({{v}, 1, {}, {{v % 2 == 1 ? v + 1 : v - 1, Rational(1)}}});
  return KernelTable(4, 1, MoveOrder::identity(1), std::move(rows), "split");
}

}  // namespace

TEST_CASE("configurations are all injective placements") {
  CHECK(all_configurations(5, 2).size() == 20);
  CHECK(all_configurations(6, 3).size() == 120);
  const auto c = all_configurations(3, 2);
  CHECK(c.front() == std::vector<Vertex>{1, 2});
  CHECK(c.back() == std::vector<Vertex>{3, 2});
}

TEST_CASE("builtin kernels validate") {
  for (int n = 2; n <= 6; ++n) CHECK(validate_kernel(trivial_kernel(n)).ok);
  for (int n = 4; n <= 8; ++n) CHECK(validate_kernel(symmetric_pair_kernel(n)).ok);
  CHECK_THROWS_AS(trivial_kernel(1), ParameterError);
  CHECK_THROWS_AS(symmetric_pair_kernel(3), ParameterError);
}

TEST_CASE("each kind of kernel violation is reported") {
  const auto base = symmetric_pair_kernel(5);
  const std::vector<Vertex> c{1, 2};
  // walker 1 from (1,2): legal targets 3, 4, 5
  CHECK(has_kind(validate_kernel(patched(base, c, 1, {}, {{3, Rational(1, 2)}, {4, Rational(1, 3)}})), "sum"));
  CHECK(has_kind(validate_kernel(patched(base, c, 1, {}, {{3, Rational(2)}, {4, Rational(-1)}})), "negative"));
  CHECK(has_kind(validate_kernel(patched(base, c, 1, {}, {{1, Rational(1)}})), "stay"));
  CHECK(has_kind(validate_kernel(patched(base, c, 1, {}, {{2, Rational(1)}})), "cross-round"));
  CHECK(has_kind(validate_kernel(patched(base, c, 1, {}, {{9, Rational(1)}})), "out-of-range"));
  // walker 2 from (1,2) after walker 1 went to 3
  const auto same = validate_kernel(patched(base, c, 2, {3}, {{3, Rational(1)}}));
  CHECK(has_kind(same, "same-round"));
  CHECK_FALSE(same.ok);
  CHECK(same.to_json()["violations"][0]["kind"] == "same-round");

  // Moving walker 1 to 2 would demand a row for given {2}; drop a row instead.
  auto rows = base.rows();
  rows.erase(std::remove_if(rows.begin(), rows.end(), [](const KernelRow& r) { return r.walker == 2 && r.given == std::vector<Vertex>{5}; }),
             rows.end());
  const KernelTable missing(5, 2, MoveOrder::identity(2), std::move(rows), "missing");
  CHECK(has_kind(validate_kernel(missing), "missing-row"));
  CHECK_THROWS_AS(kernel_process(missing), KernelError);
}

TEST_CASE("kernel processes start from the exact stationary law") {
  const auto p = kernel_process(symmetric_pair_kernel(5));
  const auto rep = stationarity_check(*p, 3);
  CHECK(rep.passed());
  CHECK(rep.stats["support"] == 20);
  CHECK(rep.stats["uniform"] == true);
  for (const auto& w : kernel_stationary(trivial_kernel(4))) CHECK(w == Rational(1, 4));
  CHECK(p->info().certified);
  CHECK(p->info().order == PartialOrder::chain(2));
}

TEST_CASE("non-uniform stationary laws are solved exactly") {
  std::vector<KernelRow> rows{{{1}, 1, {}, {{2, Rational(1)}}},
                              {{2}, 1, {}, {{1, Rational(1, 2)}, {3, Rational(1, 2)}}},
                              {{3}, 1, {}, {{1, Rational(1)}}}};
  const KernelTable t(3, 1, MoveOrder::identity(1), std::move(rows), "lopsided");
  CHECK(kernel_stationary(t) == std::vector<Rational>{Rational(2, 5), Rational(2, 5), Rational(1, 5)});
  CHECK(stationarity_check(*kernel_process(t), 3).passed());
}

TEST_CASE("a chain with two closed classes has no unique stationary law") {
  try {
    kernel_process(disconnected());
    FAIL("expected StationaryError");
  } catch (const StationaryError& e) {
    REQUIRE(e.closed_classes.size() == 2);
    CHECK(e.closed_classes[0].size() == 2);
  }
}

TEST_CASE("kernel JSON round-trips and rejects inexact weights") {
  const auto t = symmetric_pair_kernel(6);
  const auto back = kernel_from_json(kernel_to_json(t));
  CHECK(equivalent_kernels(t, back));
  CHECK(back.name() == t.name());

  auto j = kernel_to_json(trivial_kernel(3));
  j["rows"][0]["targets"][0]["p"] = 0.5;
  CHECK_THROWS_AS(kernel_from_json(j), ParameterError);
  CHECK_THROWS_AS(kernel_from_json(nlohmann::json{{"n", 3}}), ParameterError);
}

TEST_CASE("the trivial and pair kernels are equivalent to themselves only") {
  CHECK(equivalent_kernels(symmetric_pair_kernel(5), symmetric_pair_kernel(5)));
  CHECK_FALSE(equivalent_kernels(symmetric_pair_kernel(5), symmetric_pair_kernel(6)));
  CHECK_FALSE(equivalent_kernels(trivial_kernel(4), trivial_kernel(5)));
}

TEST_CASE("search recovers the pair kernel on K5") {
  const auto r = search_equivariant_kernel(5, 2, 4);
  REQUIRE(r.table);
  CHECK(equivalent_kernels(*r.table, symmetric_pair_kernel(5)));
  CHECK(r.free_parameters >= 1);
  CHECK(r.candidates_examined >= 1);
}

TEST_CASE("search finds a two-walker coupling on K4") {
  const auto r = search_equivariant_kernel(4, 2, 4);
  REQUIRE(r.table);
  CHECK(equivalent_kernels(*r.table, symmetric_pair_kernel(4)));
}

TEST_CASE("search finds the only coupling on K2 and none for two walkers on K3") {
  const auto one = search_equivariant_kernel(2, 1, 3);
  REQUIRE(one.table);
  CHECK(equivalent_kernels(*one.table, trivial_kernel(2)));

  const auto none = search_equivariant_kernel(3, 2, 2);
  CHECK_FALSE(none.table);
  CHECK(none.candidates_examined == 1);

  CHECK_THROWS_AS(search_equivariant_kernel(8, 2, 2), ParameterError);
  CHECK_THROWS_AS(search_equivariant_kernel(5, 4, 2), ParameterError);
}

TEST_CASE("search respects the candidate cap") {
  SearchOptions opt;
  opt.max_candidates = 2;
  const auto r = search_equivariant_kernel(5, 2, 3, opt);
  CHECK_FALSE(r.table);
  CHECK(r.candidates_examined == 2);
}
