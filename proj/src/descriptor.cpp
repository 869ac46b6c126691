#include "avc/descriptor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace avc {
namespace {

class IndependentWalks final : public CouplingProcess {
 public:
  IndependentWalks(int n, int k, ProcessInfo info) : CouplingProcess(std::move(info)), n_(n), k_(k) {}

  State sample_init(SeedStreams& streams) const override {
    Rng& rng = streams.stream("init/independent");
    State s(static_cast<std::size_t>(k_));
    for (auto& v : s) v = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_))) + 1;
    return s;
  }

  StepOutcome sample_step(const State& state, SeedStreams& streams) const override {
    Rng& rng = streams.stream("independent");
    State next = state;
    for (auto& v : next) {
      const int u = static_cast<int>(rng.uniform_below(static_cast<std::uint64_t>(n_ - 1))) + 1;
      v = u >= v ? u + 1 : u;
    }
    return {std::move(next), MoveOrder::identity(k_), std::nullopt};
  }

  bool can_enumerate() const override { return true; }
  double init_support_size() const override { return std::pow(n_, k_); }

  std::vector<WeightedState> init_distribution(std::size_t budget) const override {
    if (init_support_size() > static_cast<double>(budget)) throw Unsupported("initial law exceeds budget");
    std::vector<WeightedState> out;
    State s(static_cast<std::size_t>(k_), 1);
    const Rational each(1, static_cast<std::int64_t>(init_support_size()));
    while (true) {
      out.push_back({s, each});
      std::size_t i = 0;
      while (i < s.size() && s[i] == n_) s[i++] = 1;
      if (i == s.size()) break;
      ++s[i];
    }
    return out;
  }

  std::vector<Branch> enumerate_step(const State& state) const override {
    std::vector<Branch> out{{State{}, MoveOrder::identity(k_), Rational(1)}};
    const Rational each(1, n_ - 1);
    for (int v : state) {
      std::vector<Branch> grown;
      for (const auto& b : out) {
        for (int u = 1; u <= n_; ++u) {
          if (u == v) continue;
          State next = b.next;
          next.push_back(u);
          grown.push_back({std::move(next), b.order, b.weight * each});
        }
      }
      out = std::move(grown);
    }
    return out;
  }

  void config_into(const State& state, std::span<Vertex> out) const override {
    std::copy(state.begin(), state.end(), out.begin());
  }
  MoveOrder initial_order() const override { return MoveOrder::identity(k_); }

 private:
  int n_;
  int k_;
};

class Reordered final : public CouplingProcess {
 public:
  Reordered(ProcessPtr inner, ProcessInfo info) : CouplingProcess(std::move(info)), inner_(std::move(inner)) {}

  State sample_init(SeedStreams& s) const override { return inner_->sample_init(s); }
  StepOutcome sample_step(const State& st, SeedStreams& s) const override { return inner_->sample_step(st, s); }
  bool can_enumerate() const override { return inner_->can_enumerate(); }
  double init_support_size() const override { return inner_->init_support_size(); }
  std::vector<WeightedState> init_distribution(std::size_t b) const override { return inner_->init_distribution(b); }
  std::vector<Branch> enumerate_step(const State& st) const override { return inner_->enumerate_step(st); }
  void config_into(const State& st, std::span<Vertex> out) const override { inner_->config_into(st, out); }
  void labels_into(const State& st, std::span<Vertex> out) const override { inner_->labels_into(st, out); }
  MoveOrder initial_order() const override { return inner_->initial_order(); }

 private:
  ProcessPtr inner_;
};

int parse_int(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  int v = 0;
  try {
    v = std::stoi(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw ParameterError("bad " + what + " in '" + text + "'");
  return v;
}

const char* mode_name(ExtendMode m) { return m == ExtendMode::add_walker ? "add" : "keep"; }

}  // namespace

KernelTable builtin_kernel(const std::string& name) {
  if (name.rfind("trivial:", 0) == 0) return trivial_kernel(parse_int(name.substr(8), "n"));
  if (name.rfind("pair-k", 0) == 0) return symmetric_pair_kernel(parse_int(name.substr(6), "n"));
  throw ParameterError("unknown builtin kernel '" + name + "'");
}

ProcessPtr independent_walks(int n, int k) {
  if (n < 2 || k < 1) throw ParameterError("independent walks need n >= 2 and k >= 1");
  ProcessInfo info;
  info.name = "independent:" + std::to_string(n) + ":" + std::to_string(k);
  info.n = n;
  info.k = k;
  info.order = PartialOrder::chain(k);
  return std::make_shared<IndependentWalks>(n, k, std::move(info));
}

ProcessPtr with_order(ProcessPtr process, PartialOrder r) {
  ProcessInfo info = process->info();
  if (r.k() != info.k) throw ParameterError("partial order has the wrong walker count");
  if (!order_respects(process->initial_order(), r)) throw ParameterError("process moves do not respect the order");
  info.order = std::move(r);
  return std::make_shared<Reordered>(std::move(process), std::move(info));
}

int ProcessDescriptor::base_n() const {
  if (base_kind == "independent") return independent_n;
  return kernel ? kernel->n() : builtin_kernel(base_name).n();
}

ProcessPtr ProcessDescriptor::build() const {
  ProcessPtr p;
  bool trust = false;
  if (base_kind == "independent") {
    p = independent_walks(independent_n, independent_k);
    trust = true;
  } else if (base_kind == "kernel") {
    p = kernel_process(kernel ? *kernel : builtin_kernel(base_name));
  } else {
    throw ParameterError("unknown base kind '" + base_kind + "'");
  }
  if (order) p = with_order(p, *order);
  for (const auto& s : steps) {
    if (s.n != p->info().n + 1) throw ParameterError("extension steps must raise n by one each");
    ExtendOptions opt;
    opt.stream = s.stream;
    opt.trust_base = trust;
    opt.fault = s.fault;
    p = s.mode == ExtendMode::keep_walkers ? extend_sac(p, opt) : extend_posac(p, opt);
  }
  return p;
}

nlohmann::json ProcessDescriptor::to_json() const {
  nlohmann::json base{{"kind", base_kind}};
  if (base_kind == "independent") {
    base["n"] = independent_n;
    base["k"] = independent_k;
  } else if (kernel) {
    base["kernel"] = kernel_to_json(*kernel);
  } else {
    base["name"] = base_name;
  }
  nlohmann::json j{{"format", "avc-process/1"}, {"base", base}};
  if (order) j["order"] = order->relations();
  nlohmann::json st = nlohmann::json::array();
  for (const auto& s : steps) {
    nlohmann::json e{{"mode", mode_name(s.mode)}, {"n", s.n}};
    if (!s.stream.empty()) e["stream"] = s.stream;
    if (s.fault == PermFault::reuse_previous_a) e["fault"] = "reuse-a";
    st.push_back(e);
  }
  j["steps"] = st;
  if (seed) j["seed"] = *seed;
  return j;
}

ProcessDescriptor ProcessDescriptor::from_json(const nlohmann::json& j) {
  try {
    if (j.value("format", "") != "avc-process/1") throw ParameterError("not an avc-process/1 descriptor");
    ProcessDescriptor d;
    const auto& base = j.at("base");
    d.base_kind = base.at("kind").get<std::string>();
    if (d.base_kind == "independent") {
      d.independent_n = base.at("n").get<int>();
      d.independent_k = base.at("k").get<int>();
    } else if (d.base_kind == "kernel") {
      if (base.contains("kernel")) d.kernel = kernel_from_json(base.at("kernel"));
      else d.base_name = base.at("name").get<std::string>();
    } else {
      throw ParameterError("unknown base kind '" + d.base_kind + "'");
    }
    const int k = d.base_kind == "independent" ? d.independent_k
                                               : (d.kernel ? d.kernel->k() : builtin_kernel(d.base_name).k());
    if (j.contains("order")) {
      d.order = PartialOrder(k, j.at("order").get<std::vector<std::pair<WalkerId, WalkerId>>>());
    }
    for (const auto& e : j.value("steps", nlohmann::json::array())) {
      ExtensionStep s;
      const auto mode = e.at("mode").get<std::string>();
      if (mode == "keep") s.mode = ExtendMode::keep_walkers;
      else if (mode == "add") s.mode = ExtendMode::add_walker;
      else throw ParameterError("unknown step mode '" + mode + "'");
      s.n = e.at("n").get<int>();
      s.stream = e.value("stream", "");
      const auto fault = e.value("fault", "none");
      if (fault == "reuse-a") s.fault = PermFault::reuse_previous_a;
      else if (fault != "none") throw ParameterError("unknown fault '" + fault + "'");
      d.steps.push_back(std::move(s));
    }
    if (j.contains("seed")) d.seed = j.at("seed").get<std::uint64_t>();
    return d;
  } catch (const nlohmann::json::exception& e) {
    throw ParameterError(std::string("malformed process descriptor: ") + e.what());
  }
}

ProcessDescriptor builtin_descriptor(const std::string& name) {
  ProcessDescriptor d;
  if (name.rfind("independent:", 0) == 0) {
    const auto rest = name.substr(12);
    const auto colon = rest.find(':');
    if (colon == std::string::npos) throw ParameterError("expected independent:<n>:<k>");
    d.base_kind = "independent";
    d.independent_n = parse_int(rest.substr(0, colon), "n");
    d.independent_k = parse_int(rest.substr(colon + 1), "k");
    return d;
  }
  builtin_kernel(name);  // validates the name
  d.base_name = name;
  return d;
}

}  // namespace avc
