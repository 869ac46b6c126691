#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "avc/rational.hpp"

namespace avc::detail {

using SparseRows = std::vector<std::vector<std::pair<std::size_t, Rational>>>;

struct StationarySolution {
  std::vector<Rational> pi;                             // empty unless exactly one closed class
  std::vector<std::vector<std::size_t>> closed_classes;  // recurrent classes of the support graph
};

/// Exact stationary law of a finite chain given by sparse transition rows.
StationarySolution solve_stationary(const SparseRows& rows);

}  // namespace avc::detail
