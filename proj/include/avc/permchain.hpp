#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "avc/model.hpp"
#include "avc/rational.hpp"
#include "avc/rng.hpp"

namespace avc {

/// Permutation of [n] stored as its image list [p(1), ..., p(n)].
class Permutation {
 public:
  Permutation() = default;
  /// Throws ParameterError unless `images` is a bijection on [n].
  explicit Permutation(std::vector<Vertex> images);

  static Permutation identity(int n);
  static Permutation transposition(int n, Vertex a, Vertex b);

  int n() const { return static_cast<int>(images_.size()); }
  Vertex operator()(Vertex v) const { return images_[static_cast<std::size_t>(v - 1)]; }
  std::span<const Vertex> images() const { return images_; }

  Permutation inverse() const;
  /// (*this ∘ other)(v) = (*this)(other(v)).
  Permutation compose(const Permutation& other) const;
  /// *this ∘ (a b), computed in place on a copy.
  Permutation then_swap(Vertex a, Vertex b) const;

  friend bool operator==(const Permutation&, const Permutation&) = default;
  friend auto operator<=>(const Permutation&, const Permutation&) = default;

 private:
  std::vector<Vertex> images_;
};

/// All n! permutations of [n] in lexicographic order of their image lists.
std::vector<Permutation> all_permutations(int n);

/// Uniform permutation of [n] by Fisher-Yates on `rng`.
Permutation random_permutation(int n, Rng& rng);

/// State of the label chain P_t: P_t = P_{t-1} ∘ (N a_t), a_t uniform on [N-1].
struct PermState {
  Permutation perm;
  std::optional<int> last_a;  // the a_t that produced this state

  int n() const { return perm.n(); }
  friend bool operator==(const PermState&, const PermState&) = default;
};

/// P_0 uniform on S_n. Throws ParameterError when n < 2.
PermState init_perm_chain(int n, Rng& rng);

/// One step with a uniform a in [N-1].
PermState step_perm_chain(const PermState& state, Rng& rng);

/// One step with a given a in [N-1]; the deterministic core of the chain.
PermState step_perm_chain_with(const PermState& state, int a);

/// The N-1 successors, each with weight exactly 1/(N-1), in order of a.
std::vector<std::pair<PermState, Rational>> enumerate_perm_steps(const PermState& state);

}  // namespace avc
