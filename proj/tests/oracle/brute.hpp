#pragma once

// Brute-force path enumeration, kept free of the library's exact machinery
// so it can serve as an independent oracle for small cases.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace oracle {

using Q = boost::rational<std::int64_t>;
using S = std::vector<int>;
using Law = std::vector<std::pair<S, Q>>;

struct Chain {
  Law init;
  std::function<Law(const S&)> step;
  std::function<int(const S&, int)> position;  // walker j (1-based) position in state
  int n = 0;
  int k = 0;
};

struct ConditionalSummary {
  std::set<Q> move_probabilities;  // P(W_l = v | history) over v != w_{l-1}
  Q max_stay = 0;                  // largest P(W_l = w_{l-1} | history)
  std::int64_t histories = 0;
  std::map<std::vector<int>, std::map<int, Q>> laws;  // history -> next-position law
};

// Conditional next-position laws of walker j after every own history of
// length 1..horizon that starts at t = 0.
inline ConditionalSummary conditional_laws(const Chain& c, int j, int horizon) {
  ConditionalSummary out;
  // history -> (state -> mass)
  std::map<std::vector<int>, std::map<S, Q>> layer;
  for (const auto& [s, m] : c.init) layer[{c.position(s, j)}][s] += m;
  for (int len = 1; len <= horizon; ++len) {
    std::map<std::vector<int>, std::map<S, Q>> next;
    for (const auto& [hist, dist] : layer) {
      Q total = 0;
      std::map<int, Q> law;
      for (const auto& [s, m] : dist) {
        total += m;
        for (const auto& [t, w] : c.step(s)) {
          const int v = c.position(t, j);
          law[v] += m * w;
          if (len < horizon) {
            auto h = hist;
            h.push_back(v);
            next[h][t] += m * w;
          }
        }
      }
      ++out.histories;
      for (int v = 1; v <= c.n; ++v) {
        const Q p = law.count(v) ? law[v] / total : Q(0);
        if (v == hist.back()) out.max_stay = std::max(out.max_stay, p);
        else out.move_probabilities.insert(p);
      }
      for (auto& [v, m] : law) m /= total;
      out.laws[hist] = std::move(law);
    }
    layer = std::move(next);
  }
  return out;
}

// All permutations of [n] as image lists.
inline std::vector<S> permutations(int n) {
  S p(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<std::size_t>(i)] = i + 1;
  std::vector<S> out;
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

// Two walkers on K_n; walker 1 moves uniformly off both vertices, walker 2
// takes the vacated vertex with probability p and otherwise spreads evenly.
inline Law pair_step(int n, Q p, int x, int y) {
  Law out;
  const Q first(1, n - 2);
  for (int x2 = 1; x2 <= n; ++x2) {
    if (x2 == x || x2 == y) continue;
    out.push_back({{x2, x}, first * p});
    for (int y2 = 1; y2 <= n; ++y2) {
      if (y2 == y || y2 == x2 || y2 == x) continue;
      out.push_back({{x2, y2}, first * (Q(1) - p) / Q(n - 3)});
    }
  }
  return out;
}

inline Law uniform_pairs(int n) {
  Law out;
  for (int x = 1; x <= n; ++x)
    for (int y = 1; y <= n; ++y)
      if (x != y) out.push_back({{x, y}, Q(1, n * (n - 1))});
  return out;
}

}  // namespace oracle
