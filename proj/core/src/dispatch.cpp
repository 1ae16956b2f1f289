#include <cstdio>
#include <filesystem>
#include <functional>
#include <iostream>
#include <optional>
#include <sstream>

#include <json.hpp>

#include "hypercontagion/activity.hpp"
#include "hypercontagion/adaptive.hpp"
#include "hypercontagion/cli.hpp"
#include "hypercontagion/contagion.hpp"
#include "hypercontagion/experiments.hpp"
#include "hypercontagion/hypergraph.hpp"
#include "hypercontagion/io.hpp"
#include "hypercontagion/ode.hpp"
#include "hypercontagion/parallel.hpp"
#include "hypercontagion/version.hpp"

namespace hc {

namespace {

namespace fs = std::filesystem;
using json = nlohmann::ordered_json;

/// Tracks files created by a run so a failed run leaves no partial outputs.
class OutputDir {
 public:
  explicit OutputDir(const fs::path& dir) : dir_(dir) { fs::create_directories(dir_); }

  const fs::path& dir() const { return dir_; }

  fs::path write(const std::string& name,
                 const std::function<void(std::ostream&)>& writer) {
    const fs::path path = dir_ / name;
    created_.push_back(path);
    write_file(path, writer);
    return path;
  }

  void track(const fs::path& path) { created_.push_back(path); }

  void cleanup() {
    std::error_code ec;
    for (const auto& path : created_) fs::remove(path, ec);
  }

 private:
  fs::path dir_;
  std::vector<fs::path> created_;
};

void write_manifest(OutputDir& out, const RunConfig& config) {
  json manifest;
  manifest["artifact"] = "hypercontagion";
  manifest["version"] = kVersion;
  manifest["subcommand"] = config.subcommand;
  manifest["seed"] = config.get_uint("run.seed");
  json cfg = json::object();
  for (const auto& [key, value] : config.resolved) cfg[key] = value;
  manifest["config"] = cfg;
  out.write("manifest.json", [&](std::ostream& os) { os << manifest.dump(2) << '\n'; });
}

ScalingSpec scaling_from(const RunConfig& config, const std::string& prefix) {
  const std::string variant = config.get(prefix + ".variant");
  if (variant == "scale") return ScalingSpec::scale_misspec(config.get_double(prefix + ".eta"));
  if (variant == "form")
    return ScalingSpec::form_misspec(static_cast<int>(config.get_int(prefix + ".n")));
  return ScalingSpec::true_form();
}

DiseaseParams disease_from(const RunConfig& config) {
  DiseaseParams params;
  params.beta = config.get_double("disease.beta");
  params.mu = config.get_double("disease.mu");
  params.alpha = config.get_double("disease.alpha");
  params.k_gamma = config.get_double("disease.k_gamma");
  params.m = static_cast<int>(config.get_int("disease.m"));
  params.validate();
  return params;
}

NetworkConfig network_from(const RunConfig& config) {
  NetworkConfig net;
  const std::string kind = config.get("network.kind");
  net.kind = kind == "lattice" ? NetworkCase::TriangularLattice : NetworkCase::ErdosRenyi;
  net.er_n = static_cast<std::uint32_t>(config.get_uint("network.n"));
  net.er_p = config.get_double("network.p");
  net.lattice_rows = static_cast<int>(config.get_int("network.rows"));
  net.lattice_cols = static_cast<int>(config.get_int("network.cols"));
  net.lattice_periodic = config.get_bool("network.periodic");
  net.max_order = static_cast<int>(config.get_int("network.max_order"));
  return net;
}

/// Pairwise base graph for generate/simulate/paired (kind may be "file").
Hypergraph base_graph_from(const RunConfig& config, std::uint64_t seed) {
  const std::string kind = config.get("network.kind");
  if (kind == "complete") return generate_complete(static_cast<std::uint32_t>(config.get_uint("network.n")));
  if (kind == "er")
    return generate_er(static_cast<std::uint32_t>(config.get_uint("network.n")),
                       config.get_double("network.p"), seed);
  if (kind == "lattice")
    return generate_triangular_lattice(static_cast<int>(config.get_int("network.rows")),
                                       static_cast<int>(config.get_int("network.cols")),
                                       config.get_bool("network.periodic"));
  const std::string path = config.get("network.path");
  if (path.empty())
    throw ConfigError("config key 'network.path' is required when network.kind = file");
  return load_hypergraph(path);
}

int default_lift_order(const std::string& kind) {
  if (kind == "lattice") return 2;
  if (kind == "er") return 4;
  return 2;  // complete
}

std::vector<std::pair<int, AdjustmentEvent>> collect_events(const ReplicateSet& set) {
  std::vector<std::pair<int, AdjustmentEvent>> events;
  for (std::size_t r = 0; r < set.runs.size(); ++r)
    for (const auto& event : set.runs[r].events)
      events.emplace_back(static_cast<int>(r), event);
  return events;
}

std::string replicate_file(int replicate, const std::string& suffix) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "rep%03d_%s.csv", replicate, suffix.c_str());
  return buf;
}

void write_replicate_set(OutputDir& out, const ReplicateSet& set, int max_order) {
  const std::string suffix_k = "k" + std::to_string(max_order);
  for (std::size_t r = 0; r < set.runs.size(); ++r) {
    out.write(replicate_file(static_cast<int>(r), "k1"), [&](std::ostream& os) {
      write_trajectory_csv(os, set.runs[r].trajectory_1);
    });
    out.write(replicate_file(static_cast<int>(r), suffix_k), [&](std::ostream& os) {
      write_trajectory_csv(os, set.runs[r].trajectory_k);
    });
  }
  out.write("replicates.csv", [&](std::ostream& os) {
    os << "replicate,file_k1,file_kk\n";
    for (std::size_t r = 0; r < set.runs.size(); ++r)
      os << r << ',' << replicate_file(static_cast<int>(r), "k1") << ','
         << replicate_file(static_cast<int>(r), suffix_k) << '\n';
  });
  out.write("ensemble.csv",
            [&](std::ostream& os) { write_ensemble_csv(os, set.ensemble); });
  const auto events = collect_events(set);
  out.write("events.csv", [&](std::ostream& os) { write_events_csv(os, events); });

  json metrics;
  metrics["beta1_initial"] = set.beta1_initial;
  metrics["rmse_mean_infected"] = set.rmse;
  const double endemic_1 = endemic_level(set.ensemble.mean_1);
  const double endemic_k = endemic_level(set.ensemble.mean_k);
  metrics["endemic_k1"] = endemic_1;
  metrics["endemic_kk"] = endemic_k;
  metrics["half_crossing_k1"] = half_crossing_time(set.ensemble.mean_1, endemic_1);
  metrics["half_crossing_kk"] = half_crossing_time(set.ensemble.mean_k, endemic_k);
  json counts = json::array();
  for (const auto& run : set.runs) counts.push_back(run.events.size());
  metrics["adjustment_counts"] = counts;
  out.write("metrics.json", [&](std::ostream& os) { os << metrics.dump(2) << '\n'; });
}

// Runners --------------------------------------------------------------------

void run_generate(const RunConfig& config, OutputDir& out) {
  const std::uint64_t seed = config.get_uint("run.seed");
  const Hypergraph base = base_graph_from(config, seed);
  const auto save = [&](const Hypergraph& g, const std::string& name) {
    const fs::path path = out.dir() / name;
    out.track(path);
    save_hypergraph(g, path);
  };
  const int lift = static_cast<int>(config.get_int("network.max_order"));
  if (lift >= 2) save(clique_complex(base, lift), "hypergraph_k" + std::to_string(lift) + ".hg");
  save(base, "hypergraph_k1.hg");
}

void run_simulate(const RunConfig& config, OutputDir& out) {
  const std::uint64_t seed = config.get_uint("run.seed");
  Hypergraph graph = base_graph_from(config, seed);
  const int lift = static_cast<int>(config.get_int("network.max_order"));
  if (lift >= 2) graph = clique_complex(graph, lift);

  const DiseaseParams params = disease_from(config);
  const ScalingSpec spec = scaling_from(config, "scaling");
  const auto t_steps = static_cast<int>(config.get_int("run.t_steps"));
  const double fraction = config.get_double("run.init_infected_fraction");
  const auto n_init =
      static_cast<std::uint32_t>(std::llround(fraction * graph.n_nodes()));
  Rng init_rng = make_rng(seed, 0, kChannelInit);
  const auto init = make_initial_states(graph.n_nodes(), n_init, init_rng);

  const Trajectory trajectory = run(graph, params, spec, init, t_steps, seed);
  out.write("trajectory.csv",
            [&](std::ostream& os) { write_trajectory_csv(os, trajectory); });
}

void run_paired(const RunConfig& config, OutputDir& out) {
  const std::uint64_t seed = config.get_uint("run.seed");
  const std::string kind = config.get("network.kind");
  Hypergraph g_k = base_graph_from(config, seed);
  int lift = static_cast<int>(config.get_int("network.max_order"));
  if (kind == "file") {
    if (lift >= 2) g_k = clique_complex(g_k, lift);
  } else {
    if (lift == 0) lift = default_lift_order(kind);
    g_k = clique_complex(g_k, lift);
  }
  const Hypergraph g_1 = order1_restriction(g_k);

  PairedRunOptions options;
  if (config.get_bool("adaptive.enabled")) {
    AdaptiveConfig adaptive;
    adaptive.tau = static_cast<int>(config.get_int("adaptive.tau"));
    adaptive.rho = config.get_double("adaptive.rho");
    adaptive.spec_for_xi = scaling_from(config, "adaptive.scaling");
    options.adaptive = adaptive;
  }

  int replicates = static_cast<int>(config.get_int("run.replicates"));
  if (replicates == 0) replicates = kind == "lattice" ? 50 : 10;

  std::fprintf(stderr, "paired: %d replicates on %s (K=%d)\n", replicates, kind.c_str(),
               g_k.max_order());
  const ReplicateSet set = run_paired_replicates(
      g_k, g_1, disease_from(config), options, replicates,
      config.get_double("run.init_infected_fraction"),
      static_cast<int>(config.get_int("run.t_steps")), seed, 0,
      static_cast<int>(config.get_int("run.threads")));
  write_replicate_set(out, set, g_k.max_order());
}

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
  std::vector<double> values;
  std::istringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t pos = 0;
      values.push_back(std::stod(item, &pos));
      if (pos != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw ConfigError("config key '" + key + "': '" + item + "' is not a number");
    }
  }
  if (values.empty()) throw ConfigError("config key '" + key + "': empty list");
  return values;
}

std::vector<int> parse_int_list(const std::string& text, const std::string& key) {
  std::vector<int> values;
  for (double v : parse_double_list(text, key)) {
    const int i = static_cast<int>(v);
    if (i != v) throw ConfigError("config key '" + key + "': expected integers");
    values.push_back(i);
  }
  return values;
}

void run_experiment(const RunConfig& config, OutputDir& out) {
  const std::string family = config.get("experiment.family");
  const std::uint64_t seed = config.get_uint("run.seed");
  const int threads = static_cast<int>(config.get_int("run.threads"));
  const int replicates = static_cast<int>(config.get_int("run.replicates"));

  if (family == "fig2" || family == "switch" || family == "adaptive") {
    PairedExperimentConfig experiment;
    experiment.network = network_from(config);
    experiment.replicates = replicates;
    experiment.params = disease_from(config);
    experiment.init_fraction = config.get_double("run.init_infected_fraction");
    experiment.t_steps = static_cast<int>(config.get_int("run.t_steps"));
    experiment.seed = seed;
    experiment.threads = threads;
    if (family == "switch") {
      experiment.beta1_override = experiment.params.beta;
      experiment.t_switch = static_cast<int>(config.get_int("switch.t_switch"));
    } else if (family == "adaptive") {
      AdaptiveConfig adaptive;
      adaptive.tau = static_cast<int>(config.get_int("adaptive.tau"));
      adaptive.rho = config.get_double("adaptive.rho");
      adaptive.spec_for_xi = scaling_from(config, "adaptive.scaling");
      experiment.adaptive = adaptive;
    }
    std::fprintf(stderr, "experiment %s: network=%s\n", family.c_str(),
                 config.get("network.kind").c_str());
    const ReplicateSet set = run_paired_experiment(experiment);
    const int max_order = experiment.network.max_order > 0
                              ? experiment.network.max_order
                              : (experiment.network.kind == NetworkCase::TriangularLattice
                                     ? 2
                                     : 4);
    write_replicate_set(out, set, max_order);
    return;
  }

  if (family == "misspec") {
    MisspecConfig misspec;
    misspec.eta_values =
        parse_double_list(config.get("misspec.eta_values"), "misspec.eta_values");
    misspec.n_values = parse_int_list(config.get("misspec.n_values"), "misspec.n_values");
    misspec.replicates = replicates > 0 ? replicates : 5;
    misspec.t_steps = static_cast<int>(config.get_int("run.t_steps"));
    misspec.seed = seed;
    misspec.threads = threads;
    misspec.network = network_from(config);
    misspec.params = disease_from(config);
    for (double eta : misspec.eta_values) ScalingSpec::scale_misspec(eta).validate();
    for (int n : misspec.n_values) ScalingSpec::form_misspec(n).validate();

    std::fprintf(stderr, "experiment misspec: %zu eta cells, %zu n cells\n",
                 misspec.eta_values.size(), misspec.n_values.size());
    const MisspecStudy study = experiment_misspecification(misspec);

    out.write("cells.csv", [&](std::ostream& os) {
      os << "kind,param,rmse,beta1_initial,total_events\n";
      const auto row = [&os](const char* kind, double param, const MisspecCellResult& cell) {
        std::size_t events = 0;
        for (const auto& run : cell.set.runs) events += run.events.size();
        os << kind << ',' << format_double(param) << ',' << format_double(cell.set.rmse)
           << ',' << format_double(cell.set.beta1_initial) << ',' << events << '\n';
      };
      for (const auto& cell : study.eta_cells) row("eta", cell.spec.eta, cell);
      for (const auto& cell : study.n_cells) row("n", cell.spec.n, cell);
    });
    for (const auto& cell : study.eta_cells)
      out.write("ensemble_eta" + format_double(cell.spec.eta) + ".csv",
                [&](std::ostream& os) { write_ensemble_csv(os, cell.set.ensemble); });
    for (const auto& cell : study.n_cells)
      out.write("ensemble_n" + std::to_string(cell.spec.n) + ".csv",
                [&](std::ostream& os) { write_ensemble_csv(os, cell.set.ensemble); });
    return;
  }

  if (family == "sweep") {
    if (config.get("network.kind") != "er")
      throw ConfigError("config key 'network.kind': sweep family runs on the er network");
    SweepGrid grid;
    grid.beta_values = log_spaced(config.get_double("sweep.beta_min"),
                                  config.get_double("sweep.beta_max"),
                                  static_cast<int>(config.get_int("sweep.beta_count")));
    grid.mu_values = log_spaced(config.get_double("sweep.mu_min"),
                                config.get_double("sweep.mu_max"),
                                static_cast<int>(config.get_int("sweep.mu_count")));
    grid.replicates = replicates > 0 ? replicates : 5;
    const int lift = static_cast<int>(config.get_int("network.max_order"));
    grid.max_order = lift > 0 ? lift : 4;
    grid.k_gamma = config.get_double("disease.k_gamma");
    grid.m = static_cast<int>(config.get_int("disease.m"));
    grid.mu_mode =
        config.get("sweep.mu_mode") == "recovery" ? MuMode::Recovery : MuMode::Removal;
    grid.t_cap = static_cast<int>(config.get_int("sweep.t_cap"));
    grid.init_fraction = config.get_double("run.init_infected_fraction");

    std::fprintf(stderr, "experiment sweep: %zux%zu grid, %d replicates\n",
                 grid.beta_values.size(), grid.mu_values.size(), grid.replicates);
    const SweepResult result = experiment_sir_sweep(
        grid, seed, static_cast<std::uint32_t>(config.get_uint("network.n")),
        config.get_double("network.p"), threads);

    out.write("phase_peak_time.csv", [&](std::ostream& os) {
      write_phase_table_csv(os, result, PhaseStat::PeakTime);
    });
    out.write("phase_peak_proportion.csv", [&](std::ostream& os) {
      write_phase_table_csv(os, result, PhaseStat::PeakProportion);
    });
    out.write("phase_final_proportion.csv", [&](std::ostream& os) {
      write_phase_table_csv(os, result, PhaseStat::FinalProportion);
    });
    return;
  }

  throw ConfigError("unknown experiment family '" + family + "'");
}

void run_ode(const RunConfig& config, OutputDir& out) {
  OdeParams params;
  params.beta = config.get_double("ode.beta");
  params.mu = config.get_double("ode.mu");
  params.alpha = config.get_double("ode.alpha");
  params.n = static_cast<std::uint32_t>(config.get_uint("ode.n"));
  const double i0 = config.get_double("ode.i0");
  const OdeState init{static_cast<double>(params.n) - i0, i0, 0.0};
  const auto series =
      integrate(params, init, config.get_double("ode.t_end"), config.get_double("ode.dt"));
  out.write("ode.csv", [&](std::ostream& os) { write_ode_csv(os, series); });
}

json run_activity(const RunConfig& config, OutputDir* out) {
  const std::uint64_t seed = config.get_uint("run.seed");
  Hypergraph graph = base_graph_from(config, seed);
  const int lift = static_cast<int>(config.get_int("network.max_order"));
  if (lift >= 2) graph = clique_complex(graph, lift);
  int k = static_cast<int>(config.get_int("activity.k"));
  if (k == 0) k = graph.max_order();

  const ActivityReport report =
      combinatorial_activity(graph, config.get_double("disease.beta"),
                             config.get_double("disease.k_gamma"), k,
                             scaling_from(config, "scaling"));
  json output;
  output["K"] = report.max_order;
  output["value"] = report.value;
  output["order_terms"] = report.order_terms;
  output["N_k"] = report.edge_counts;
  if (out)
    out->write("activity.json",
               [&](std::ostream& os) { os << output.dump(2) << '\n'; });
  return output;
}

}  // namespace

int dispatch(const RunConfig& config) {
  std::optional<OutputDir> out;
  try {
    const auto it = config.resolved.find("run.output");
    const std::string dir = it != config.resolved.end() ? it->second : "";
    if (!dir.empty()) {
      out.emplace(dir);
      write_manifest(*out, config);
    }

    if (config.subcommand == "generate") {
      run_generate(config, *out);
    } else if (config.subcommand == "simulate") {
      run_simulate(config, *out);
    } else if (config.subcommand == "paired") {
      run_paired(config, *out);
    } else if (config.subcommand == "experiment") {
      run_experiment(config, *out);
    } else if (config.subcommand == "ode") {
      run_ode(config, *out);
    } else if (config.subcommand == "activity") {
      const json report = run_activity(config, out ? &*out : nullptr);
      std::cout << report.dump(2) << '\n';
    } else {
      throw ConfigError("unknown subcommand '" + config.subcommand + "'");
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    if (out) out->cleanup();
    return 1;
  }
}

}  // namespace hc
