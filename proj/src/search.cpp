#include <algorithm>
#include <functional>
#include <map>
#include <numeric>

#include "avc/base.hpp"
#include "avc/verify.hpp"

namespace avc {
namespace {

struct Slot {
  std::vector<Vertex> config;
  WalkerId walker;
  std::vector<Vertex> given;
  std::vector<Vertex> legal;
  std::vector<int> target_class;  // per legal target: index of the matching vertex in config++given, or -1
  std::size_t orbit;
};

struct Orbit {
  std::vector<int> named;  // classes that are a single earlier vertex
  int fresh_size = 0;      // vertices not mentioned in config++given
  std::size_t first_param = 0;
  std::size_t params = 0;
};

// First-occurrence relabeling: the S_n orbit of a vertex sequence.
std::vector<int> pattern(const std::vector<Vertex>& seq) {
  std::vector<int> out;
  std::map<Vertex, int> seen;
  for (Vertex v : seq) out.push_back(seen.emplace(v, static_cast<int>(seen.size())).first->second);
  return out;
}

}  // namespace

SearchResult search_equivariant_kernel(int n, int k, int horizon, const SearchOptions& options) {
  if (k < 1 || k > 3 || n < 2 || n > 7) throw ParameterError("equivariant search is limited to k <= 3 and 2 <= n <= 7");
  if (horizon < 1) throw ParameterError("horizon must be at least 1");

  std::vector<Slot> slots;
  std::map<std::pair<WalkerId, std::vector<int>>, std::size_t> orbit_index;
  std::vector<Orbit> orbits;

  for (const auto& c : all_configurations(n, k)) {
    std::vector<Vertex> given;
    std::function<void(int)> rec = [&](int w) {
      if (w > k) return;
      std::vector<Vertex> seq = c;
      seq.insert(seq.end(), given.begin(), given.end());
      Slot slot{c, w, given, {}, {}, 0};
      for (Vertex v = 1; v <= n; ++v) {
        const bool own = v == c[static_cast<std::size_t>(w - 1)];
        const bool waiting = std::find(c.begin() + w, c.end(), v) != c.end();
        const bool taken = std::find(given.begin(), given.end(), v) != given.end();
        if (own || waiting || taken) continue;
        slot.legal.push_back(v);
        auto it = std::find(seq.begin(), seq.end(), v);
        slot.target_class.push_back(it == seq.end() ? -1 : static_cast<int>(it - seq.begin()));
      }
      auto key = std::make_pair(w, pattern(seq));
      auto [it, fresh] = orbit_index.emplace(key, orbits.size());
      if (fresh) {
        Orbit o;
        for (int cls : slot.target_class) {
          if (cls < 0) ++o.fresh_size;
          else o.named.push_back(cls);
        }
        std::sort(o.named.begin(), o.named.end());
        orbits.push_back(o);
      }
      slot.orbit = it->second;
      const std::vector<Vertex> legal = slot.legal;
      slots.push_back(std::move(slot));
      for (Vertex v : legal) {
        given.push_back(v);
        rec(w + 1);
        given.pop_back();
      }
    };
    rec(1);
  }

  SearchResult result;
  std::size_t total_params = 0;
  for (auto& o : orbits) {
    o.first_param = total_params;
    o.params = o.fresh_size > 0 ? o.named.size() : (o.named.empty() ? 0 : o.named.size() - 1);
    total_params += o.params;
  }
  result.free_parameters = total_params;
  if (std::any_of(orbits.begin(), orbits.end(), [](const Orbit& o) { return o.fresh_size == 0 && o.named.empty(); })) {
    return result;  // some walker has no legal move at all
  }

  auto evaluate = [&](const std::vector<std::int64_t>& x, std::int64_t d) -> std::optional<KernelTable> {
    std::vector<KernelRow> rows;
    rows.reserve(slots.size());
    for (const auto& s : slots) {
      const Orbit& o = orbits[s.orbit];
      KernelRow row{s.config, s.walker, s.given, {}};
      std::int64_t used = 0;
      for (std::size_t q = 0; q < o.params; ++q) used += x[o.first_param + q];
      for (std::size_t t = 0; t < s.legal.size(); ++t) {
        const int cls = s.target_class[t];
        Rational w;
        if (cls < 0) {
          w = Rational(d - used, d * o.fresh_size);
        } else {
          const auto pos = static_cast<std::size_t>(std::find(o.named.begin(), o.named.end(), cls) - o.named.begin());
          w = pos < o.params ? Rational(x[o.first_param + pos], d) : Rational(d - used, d);
        }
        row.targets.push_back({s.legal[t], w});
      }
      rows.push_back(std::move(row));
    }
    KernelTable table(n, k, MoveOrder::identity(k), std::move(rows),
                      "equivariant-n" + std::to_string(n) + "-k" + std::to_string(k));
    if (!validate_kernel(table).ok) return std::nullopt;
    ProcessPtr process;
    try {
      process = kernel_process(table);
    } catch (const Unsupported&) {
      return std::nullopt;
    }
    ExactOptions opt;
    opt.horizon = std::min(2, horizon);
    opt.strong_horizon = 0;
    opt.stop_at_first_failure = true;
    if (!exact_conditional_laws(*process, opt).passed()) return std::nullopt;
    if (horizon > 2) {
      opt.horizon = horizon;
      if (!exact_conditional_laws(*process, opt).passed()) return std::nullopt;
    }
    return table;
  };

  std::vector<std::int64_t> x(total_params, 0);
  for (std::int64_t d = 1; d <= options.max_denominator; ++d) {
    std::function<bool(std::size_t, std::size_t)> rec = [&](std::size_t orbit, std::size_t q) -> bool {
      if (orbit == orbits.size()) {
        std::int64_t g = d;
        for (auto v : x) g = std::gcd(g, v);
        if (g != 1) return false;  // already seen with a smaller denominator
        if (result.candidates_examined >= options.max_candidates) return true;
        ++result.candidates_examined;
        if (auto table = evaluate(x, d)) {
          result.table = std::move(table);
          return true;
        }
        return false;
      }
      const Orbit& o = orbits[orbit];
      if (q == o.params) return rec(orbit + 1, 0);
      std::int64_t used = 0;
      for (std::size_t p = 0; p < q; ++p) used += x[o.first_param + p];
      for (std::int64_t v = 0; v + used <= d; ++v) {
        x[o.first_param + q] = v;
        if (rec(orbit, q + 1)) return true;
      }
      x[o.first_param + q] = 0;
      return false;
    };
    if (rec(0, 0)) break;
    if (total_params == 0) break;  // the single candidate has been examined
  }
  return result;
}

bool equivalent_kernels(const KernelTable& a, const KernelTable& b) {
  if (a.n() != b.n() || a.k() != b.k() || !(a.move_order() == b.move_order())) return false;
  auto canon = [](const KernelTable& t) {
    std::map<std::vector<int>, std::vector<std::pair<Vertex, Rational>>> m;
    for (const auto& r : t.rows()) {
      std::vector<int> key{r.walker};
      key.insert(key.end(), r.config.begin(), r.config.end());
      key.insert(key.end(), r.given.begin(), r.given.end());
      std::vector<std::pair<Vertex, Rational>> targets;
      for (const auto& tg : r.targets)
        if (!tg.p.is_zero()) targets.emplace_back(tg.v, tg.p);
      std::sort(targets.begin(), targets.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
      m[key] = std::move(targets);
    }
    return m;
  };
  // Rows whose targets all carry zero weight are dropped on both sides.
  auto ca = canon(a);
  auto cb = canon(b);
  std::erase_if(ca, [](const auto& e) { return e.second.empty(); });
  std::erase_if(cb, [](const auto& e) { return e.second.empty(); });
  return ca == cb;
}

}  // namespace avc
