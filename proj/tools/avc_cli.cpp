// avc: build, sample, extend and verify avoidance couplings from the shell.
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "avc/base.hpp"
#include "avc/descriptor.hpp"
#include "avc/extend.hpp"
#include "avc/hopsim.hpp"
#include "avc/trajectory_io.hpp"
#include "avc/verify.hpp"

namespace {

using nlohmann::json;
using namespace avc;

constexpr int kPass = 0;
constexpr int kFail = 2;
constexpr int kUsage = 3;

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParameterError("cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ParameterError("'" + path + "' is not valid JSON: " + e.what());
  }
}

// "builtin:<name>", a descriptor file, or a kernel table file.
ProcessDescriptor load_descriptor(const std::string& ref) {
  if (ref.rfind("builtin:", 0) == 0) return builtin_descriptor(ref.substr(8));
  json j = read_json_file(ref);
  if (j.contains("format")) return ProcessDescriptor::from_json(j);
  ProcessDescriptor d;
  d.kernel = kernel_from_json(j);
  return d;
}

KernelTable load_kernel(const std::string& ref) {
  if (ref.rfind("builtin:", 0) == 0) return builtin_kernel(ref.substr(8));
  return kernel_from_json(read_json_file(ref));
}

// Writes to `path`, or stdout when empty.
template <class F>
void emit(const std::string& path, F&& write) {
  if (path.empty()) {
    write(std::cout);
    return;
  }
  std::ofstream out(path);
  if (!out) throw ParameterError("cannot write '" + path + "'");
  write(out);
}

void emit_json(const std::string& path, const json& j) {
  emit(path, [&](std::ostream& o) { o << j.dump(2) << '\n'; });
}

PartialOrder parse_order(int k, const std::vector<std::string>& pairs) {
  std::vector<std::pair<WalkerId, WalkerId>> rel;
  for (const auto& p : pairs) {
    const auto lt = p.find('<');
    if (lt == std::string::npos) throw ParameterError("order relations look like 1<2, got '" + p + "'");
    rel.emplace_back(std::stoi(p.substr(0, lt)), std::stoi(p.substr(lt + 1)));
  }
  return PartialOrder(k, std::move(rel));
}

std::uint64_t pick_seed(const ProcessDescriptor& d, const std::optional<std::uint64_t>& flag) {
  return flag ? *flag : d.seed.value_or(0);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Avoidance couplings of random walks on complete graphs"};
  app.require_subcommand(1);
  int code = kPass;

  // base
  auto* base = app.add_subcommand("base", "Inspect, validate and search base kernels");
  base->require_subcommand(1);
  std::string base_ref, base_out;
  auto* base_show = base->add_subcommand("show", "Print a kernel table as JSON");
  base_show->add_option("kernel", base_ref, "builtin:<name> or kernel file")->required();
  base_show->add_option("--out", base_out);
  auto* base_validate = base->add_subcommand("validate", "Check avoidance and row sums");
  base_validate->add_option("kernel", base_ref, "builtin:<name> or kernel file")->required();
  base_validate->add_option("--out", base_out);
  int search_n = 0, search_k = 0, search_h = 3;
  SearchOptions search_opt;
  auto* base_search = base->add_subcommand("search", "Search equivariant kernels with exactly uniform laws");
  base_search->add_option("--n", search_n)->required();
  base_search->add_option("--k", search_k)->required();
  base_search->add_option("--horizon", search_h);
  base_search->add_option("--max-denominator", search_opt.max_denominator);
  base_search->add_option("--max-candidates", search_opt.max_candidates);
  base_search->add_option("--out", base_out);

  // build / extend
  std::string build_base, build_out;
  std::vector<std::string> build_steps, build_order;
  std::optional<std::uint64_t> build_seed;
  auto* build = app.add_subcommand("build", "Write a process descriptor");
  build->add_option("--base", build_base, "builtin:<name>, descriptor or kernel file")->required();
  build->add_option("--extend", build_steps, "keep:<N> or add:<N>, repeatable");
  build->add_option("--order", build_order, "relation i<j on base walkers, repeatable");
  build->add_option("--seed", build_seed);
  build->add_option("--out", build_out);

  std::string ext_base, ext_mode = "keep", ext_fault = "none", ext_out;
  int ext_target = 0;
  auto* extend = app.add_subcommand("extend", "Extend a process to a larger complete graph");
  extend->add_option("--base", ext_base)->required();
  extend->add_option("--target-n", ext_target)->required();
  extend->add_option("--mode", ext_mode)->check(CLI::IsMember({"keep", "add"}));
  extend->add_option("--fault", ext_fault)->check(CLI::IsMember({"none", "reuse-a"}));
  extend->add_option("--out", ext_out);

  // sample
  std::string sample_desc, sample_format = "jsonl", sample_out;
  std::int64_t sample_t = 100;
  std::optional<std::uint64_t> sample_seed;
  bool sample_debug = false;
  auto* sample = app.add_subcommand("sample", "Sample a trajectory");
  sample->add_option("--desc", sample_desc)->required();
  sample->add_option("--t-max", sample_t);
  sample->add_option("--seed", sample_seed);
  sample->add_option("--format", sample_format)->check(CLI::IsMember({"jsonl", "csv"}));
  sample->add_flag("--debug", sample_debug, "record base orders of POSAC extensions");
  sample->add_option("--out", sample_out);

  // verify
  std::string verify_desc, verify_traj, verify_out;
  std::optional<std::uint64_t> verify_seed;
  bool v_avoid = false, v_exact = false, v_strong = false, v_stat = false, v_chi = false, v_posac = false,
       v_markov = false;
  std::int64_t v_rounds = 100000;
  ExactOptions exact_opt;
  int v_steps = 3;
  ChiSquareOptions chi_opt;
  auto* verify = app.add_subcommand("verify", "Run verification checks and print a JSON report");
  verify->add_option("--desc", verify_desc, "process to verify")->required();
  verify->add_option("--trajectory", verify_traj, "check this JSONL trajectory instead of sampling");
  verify->add_option("--seed", verify_seed);
  verify->add_flag("--avoidance", v_avoid);
  verify->add_option("--rounds", v_rounds, "sampled rounds for --avoidance and --posac-orders");
  verify->add_flag("--exact", v_exact);
  verify->add_option("--horizon", exact_opt.horizon);
  verify->add_flag("--strong", v_strong, "label-conditioned identities on their own");
  verify->add_option("--strong-horizon", exact_opt.strong_horizon);
  verify->add_option("--budget", exact_opt.budget);
  verify->add_flag("--stationarity", v_stat);
  verify->add_option("--steps", v_steps);
  verify->add_flag("--chi2", v_chi);
  verify->add_option("--samples", chi_opt.samples);
  verify->add_option("--depth", chi_opt.depth);
  verify->add_option("--alpha", chi_opt.alpha);
  verify->add_flag("--posac-orders", v_posac);
  verify->add_flag("--label-markov", v_markov);
  verify->add_option("--out", verify_out);

  // hopsim / export
  std::string hop_desc, hop_strategy = "histogram-of-history", hop_straw, hop_out;
  int hop_f = 1;
  std::int64_t hop_rounds = 100000;
  std::optional<std::uint64_t> hop_seed;
  bool hop_full = false;
  auto* hopsim = app.add_subcommand("hopsim", "Jam a hop schedule and report hit rates");
  hopsim->add_option("--desc", hop_desc, "process driving the schedule");
  hopsim->add_option("--straw-man", hop_straw, "use a baseline schedule instead")->check(CLI::IsMember({"round-robin"}));
  hopsim->add_option("--strategy", hop_strategy);
  hopsim->add_option("--f", hop_f);
  hopsim->add_option("--rounds", hop_rounds);
  hopsim->add_option("--seed", hop_seed);
  hopsim->add_flag("--full-observation", hop_full, "experimental: the jammer sees every transmitter");
  hopsim->add_option("--out", hop_out);

  std::string exp_desc, exp_format = "csv", exp_out;
  std::int64_t exp_slots = 1000;
  std::optional<std::uint64_t> exp_seed;
  auto* exporter = app.add_subcommand("export", "Write a hop schedule");
  exporter->add_option("--desc", exp_desc)->required();
  exporter->add_option("--slots", exp_slots);
  exporter->add_option("--seed", exp_seed);
  exporter->add_option("--format", exp_format)->check(CLI::IsMember({"csv", "jsonl"}));
  exporter->add_option("--out", exp_out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kUsage;
  }

  try {
    if (*base_show) {
      emit_json(base_out, kernel_to_json(load_kernel(base_ref)));
    } else if (*base_validate) {
      const auto report = validate_kernel(load_kernel(base_ref));
      emit_json(base_out, report.to_json());
      code = report.ok ? kPass : kFail;
    } else if (*base_search) {
      const auto r = search_equivariant_kernel(search_n, search_k, search_h, search_opt);
      json j{{"found", r.table.has_value()},
             {"candidates_examined", r.candidates_examined},
             {"free_parameters", r.free_parameters}};
      if (r.table) j["kernel"] = kernel_to_json(*r.table);
      emit_json(base_out, j);
      code = r.table ? kPass : kFail;
    } else if (*build) {
      auto d = load_descriptor(build_base);
      if (!build_order.empty()) {
        d.order = parse_order(d.build()->info().k, build_order);
      }
      int n = d.steps.empty() ? d.base_n() : d.steps.back().n;
      for (const auto& s : build_steps) {
        const auto colon = s.find(':');
        const auto mode = s.substr(0, colon);
        if (colon == std::string::npos || (mode != "keep" && mode != "add")) {
          throw ParameterError("--extend takes keep:<N> or add:<N>, got '" + s + "'");
        }
        const int target = std::stoi(s.substr(colon + 1));
        if (target <= n) throw ParameterError("--extend target must exceed the current n");
        for (; n < target; ++n) {
          d.steps.push_back({mode == "add" ? ExtendMode::add_walker : ExtendMode::keep_walkers, n + 1, {}, PermFault::none});
        }
      }
      if (build_seed) d.seed = build_seed;
      d.build();  // fail early on inconsistent recipes
      emit_json(build_out, d.to_json());
    } else if (*extend) {
      auto d = load_descriptor(ext_base);
      int n = d.steps.empty() ? d.base_n() : d.steps.back().n;
      if (ext_target <= n) throw ParameterError("--target-n must exceed the current n");
      for (; n < ext_target; ++n) {
        d.steps.push_back({ext_mode == "add" ? ExtendMode::add_walker : ExtendMode::keep_walkers, n + 1, {},
                           ext_fault == "reuse-a" ? PermFault::reuse_previous_a : PermFault::none});
      }
      d.build();
      emit_json(ext_out, d.to_json());
    } else if (*sample) {
      const auto d = load_descriptor(sample_desc);
      const auto p = d.build();
      const auto traj = sample_trajectory(*p, sample_t, pick_seed(d, sample_seed), SampleOptions{sample_debug});
      emit(sample_out, [&](std::ostream& o) {
        if (sample_format == "csv") write_trajectory_csv(o, traj);
        else write_trajectory_jsonl(o, traj);
      });
    } else if (*verify) {
      const auto d = load_descriptor(verify_desc);
      const auto p = d.build();
      const auto seed = pick_seed(d, verify_seed);
      if (!(v_avoid || v_exact || v_strong || v_stat || v_chi || v_posac || v_markov)) v_avoid = true;
      std::optional<Trajectory> traj;
      auto trajectory = [&]() -> const Trajectory& {
        if (!traj) {
          if (!verify_traj.empty()) {
            std::ifstream in(verify_traj);
            if (!in) throw ParameterError("cannot open '" + verify_traj + "'");
            traj = read_trajectory_jsonl(in);
          } else {
            traj = sample_trajectory(*p, v_rounds, seed, SampleOptions{true});
          }
        }
        return *traj;
      };
      json reports = json::array();
      bool pass = true, failed = false;
      auto add = [&](const VerificationReport& r) {
        pass = pass && r.passed();
        failed = failed || r.status == Status::fail;
        reports.push_back(r.to_json());
      };
      if (v_avoid) add(check_avoidance(trajectory()));
      if (v_stat) add(stationarity_check(*p, v_steps, exact_opt.budget));
      if (v_exact) {
        if (v_strong) exact_opt.strong_horizon = std::max(exact_opt.strong_horizon, 1);
        add(exact_conditional_laws(*p, exact_opt));
      } else if (v_strong) {
        add(exact_strong_identities(*p, exact_opt.strong_horizon, exact_opt.budget));
      }
      if (v_chi) {
        chi_opt.seed = seed;
        add(verify_traj.empty() ? chi_square_uniformity(*p, chi_opt) : chi_square_uniformity(trajectory(), chi_opt));
      }
      if (v_posac) {
        if (!p->info().order) throw Unsupported("process has no partial order");
        add(check_posac_orders(trajectory(), *p->info().order, true));
      }
      if (v_markov) add(label_markov_check(*p, v_steps, exact_opt.budget));
      json out{{"descriptor", d.to_json()}, {"process", p->info().name}, {"seed", seed}, {"pass", pass},
               {"reports", reports}};
      emit_json(verify_out, out);
      // A check that could not run is not a failure of the process.
      code = pass ? kPass : (failed ? kFail : kUsage);
    } else if (*hopsim) {
      std::optional<HopSchedule> schedule;
      std::uint64_t seed = hop_seed.value_or(0);
      std::string source;
      if (!hop_straw.empty()) {
        int n = 8, k = 2;
        if (!hop_desc.empty()) {
          const auto p = load_descriptor(hop_desc).build();
          n = p->info().n;
          k = p->info().k;
        }
        schedule = round_robin_schedule(n, k, hop_rounds + 1);
        source = "round-robin";
      } else {
        if (hop_desc.empty()) throw ParameterError("hopsim needs --desc or --straw-man");
        const auto d = load_descriptor(hop_desc);
        const auto p = d.build();
        seed = pick_seed(d, hop_seed);
        schedule = schedule_from_trajectory(sample_trajectory(*p, hop_rounds, seed));
        source = p->info().name;
      }
      HopsimOptions opt;
      opt.strategy = hop_strategy;
      opt.f = hop_f;
      opt.rounds = hop_rounds;
      opt.seed = seed;
      opt.full_observation = hop_full;
      auto j = simulate_jamming(*schedule, opt).to_json();
      j["schedule"] = source;
      j["seed"] = seed;
      emit_json(hop_out, j);
    } else if (*exporter) {
      const auto d = load_descriptor(exp_desc);
      const auto p = d.build();
      const auto sched = schedule_from_trajectory(sample_trajectory(*p, exp_slots - 1, pick_seed(d, exp_seed)));
      emit(exp_out, [&](std::ostream& o) {
        if (exp_format == "csv") write_schedule_csv(o, sched);
        else write_schedule_jsonl(o, sched);
      });
    }
  } catch (const KernelError& e) {
    std::cerr << "avc: " << e.what() << '\n' << e.report.to_json().dump(2) << '\n';
    return kUsage;
  } catch (const StationaryError& e) {
    std::cerr << "avc: " << e.what() << " (" << e.closed_classes.size() << " closed classes)\n";
    return kUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "avc: " << e.what() << '\n';
    return kUsage;
  } catch (const Unsupported& e) {
    std::cerr << "avc: unsupported: " << e.what() << '\n';
    return kUsage;
  }
  return code;
}
