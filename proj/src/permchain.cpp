#include "avc/permchain.hpp"

#include <algorithm>
#include <numeric>

namespace avc {

Permutation::Permutation(std::vector<Vertex> images) : images_(std::move(images)) {
  std::vector<char> seen(images_.size() + 1, 0);
  for (Vertex v : images_) {
    if (v < 1 || v > n() || seen[static_cast<std::size_t>(v)]++) {
      throw ParameterError("image list is not a permutation");
    }
  }
}

Permutation Permutation::identity(int n) {
  std::vector<Vertex> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  Permutation p;
  p.images_ = std::move(img);
  return p;
}

Permutation Permutation::transposition(int n, Vertex a, Vertex b) { return identity(n).then_swap(a, b); }

Permutation Permutation::inverse() const {
  Permutation inv;
  inv.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) {
    inv.images_[static_cast<std::size_t>(images_[i] - 1)] = static_cast<Vertex>(i + 1);
  }
  return inv;
}

Permutation Permutation::compose(const Permutation& other) const {
  if (other.n() != n()) throw ParameterError("composing permutations of different sizes");
  Permutation r;
  r.images_.resize(images_.size());
  for (std::size_t i = 0; i < images_.size(); ++i) r.images_[i] = (*this)(other.images_[i]);
  return r;
}

Permutation Permutation::then_swap(Vertex a, Vertex b) const {
  if (a < 1 || a > n() || b < 1 || b > n()) throw ParameterError("transposition point out of range");
  Permutation r = *this;
  std::swap(r.images_[static_cast<std::size_t>(a - 1)], r.images_[static_cast<std::size_t>(b - 1)]);
  return r;
}

std::vector<Permutation> all_permutations(int n) {
  std::vector<Permutation> out;
  Permutation p = Permutation::identity(n);
  std::vector<Vertex> img(p.images().begin(), p.images().end());
  do {
    out.emplace_back(img);
  } while (std::next_permutation(img.begin(), img.end()));
  return out;
}

Permutation random_permutation(int n, Rng& rng) {
  std::vector<Vertex> img(static_cast<std::size_t>(n));
  std::iota(img.begin(), img.end(), 1);
  for (std::size_t i = img.size(); i > 1; --i) {
    std::swap(img[i - 1], img[rng.uniform_below(i)]);
  }
  return Permutation(std::move(img));
}

PermState init_perm_chain(int n, Rng& rng) {
  if (n < 2) throw ParameterError("permutation chain needs n >= 2");
  return PermState{random_permutation(n, rng), std::nullopt};
}

PermState step_perm_chain_with(const PermState& state, int a) {
  const int n = state.n();
  if (a < 1 || a > n - 1) throw ParameterError("transposition index a must lie in [N-1]");
  return PermState{state.perm.then_swap(n, a), a};
}

PermState step_perm_chain(const PermState& state, Rng& rng) {
  const auto a = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(state.n() - 1))) + 1;
  return step_perm_chain_with(state, a);
}

std::vector<std::pair<PermState, Rational>> enumerate_perm_steps(const PermState& state) {
  const int n = state.n();
  const Rational w(1, n - 1);
  std::vector<std::pair<PermState, Rational>> out;
  out.reserve(static_cast<std::size_t>(n - 1));
  for (int a = 1; a <= n - 1; ++a) out.emplace_back(step_perm_chain_with(state, a), w);
  return out;
}

}  // namespace avc
