#include "stationary.hpp"

#include <algorithm>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/strong_components.hpp>
#include <boost/multiprecision/cpp_int.hpp>

namespace avc::detail {
namespace {

using big = boost::multiprecision::cpp_rational;

big to_big(const Rational& r) { return big(r.num()) / big(r.den()); }

Rational from_big(const big& v) {
  const auto num = boost::multiprecision::numerator(v);
  const auto den = boost::multiprecision::denominator(v);
  if (num > std::numeric_limits<std::int64_t>::max() || num < std::numeric_limits<std::int64_t>::min() ||
      den > std::numeric_limits<std::int64_t>::max()) {
    throw std::overflow_error("stationary probability does not fit a 64-bit rational");
  }
  return Rational(num.convert_to<std::int64_t>(), den.convert_to<std::int64_t>());
}

}  // namespace

StationarySolution solve_stationary(const SparseRows& rows) {
  const std::size_t n = rows.size();
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::directedS>;
  Graph g(n);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, w] : rows[i])
      if (!w.is_zero()) boost::add_edge(i, j, g);

  std::vector<int> component(n);
  const int ncomp = n == 0 ? 0 : boost::strong_components(g, component.data());
  std::vector<char> leaves(static_cast<std::size_t>(ncomp), 0);
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [j, w] : rows[i])
      if (!w.is_zero() && component[i] != component[j]) leaves[static_cast<std::size_t>(component[i])] = 1;

  StationarySolution out;
  std::vector<int> class_of_component(static_cast<std::size_t>(ncomp), -1);
  for (std::size_t i = 0; i < n; ++i) {
    auto c = static_cast<std::size_t>(component[i]);
    if (leaves[c]) continue;
    if (class_of_component[c] < 0) {
      class_of_component[c] = static_cast<int>(out.closed_classes.size());
      out.closed_classes.emplace_back();
    }
    out.closed_classes[static_cast<std::size_t>(class_of_component[c])].push_back(i);
  }
  if (out.closed_classes.size() != 1) return out;

  const auto& cls = out.closed_classes.front();
  const std::size_t m = cls.size();

  // With a single closed class the stationary law is unique, so a uniform
  // law that balances (every column sums to 1) is the answer. This is the
  // common case for symmetric kernels and avoids the dense solve.
  {
    std::vector<Rational> inflow(n);
    for (std::size_t i : cls)
      for (const auto& [j, w] : rows[i]) inflow[j] += w;
    if (std::all_of(cls.begin(), cls.end(), [&](std::size_t i) { return inflow[i] == Rational(1); })) {
      out.pi.assign(n, Rational{});
      for (std::size_t i : cls) out.pi[i] = Rational(1, static_cast<std::int64_t>(m));
      return out;
    }
  }

  // Balance equations pi (P - I) = 0 on the closed class, with the last
  // equation replaced by sum(pi) = 1. Transient states carry no mass.
  std::vector<std::size_t> local(n, m);
  for (std::size_t a = 0; a < m; ++a) local[cls[a]] = a;

  std::vector<std::vector<big>> A(m, std::vector<big>(m + 1, big(0)));
  for (std::size_t a = 0; a < m; ++a) {
    A[a][a] -= 1;
    for (const auto& [j, w] : rows[cls[a]]) {
      if (local[j] == m) throw std::logic_error("closed class has an outgoing edge");
      A[local[j]][a] += to_big(w);  // row = equation for state j
    }
  }
  for (auto& c : A[m - 1]) c = 1;

  for (std::size_t col = 0; col < m; ++col) {
    std::size_t pivot = col;
    while (pivot < m && A[pivot][col] == 0) ++pivot;
    if (pivot == m) throw std::logic_error("singular balance system on a closed class");
    std::swap(A[pivot], A[col]);
    for (std::size_t r = 0; r < m; ++r) {
      if (r == col || A[r][col] == 0) continue;
      big f = A[r][col] / A[col][col];
      for (std::size_t c = col; c <= m; ++c) A[r][c] -= f * A[col][c];
    }
  }
  out.pi.assign(n, Rational{});
  for (std::size_t a = 0; a < m; ++a) out.pi[cls[a]] = from_big(A[a][m] / A[a][a]);
  return out;
}

}  // namespace avc::detail
