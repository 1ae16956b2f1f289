#include "hypercontagion/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "hypercontagion/parallel.hpp"

namespace hc {

BuiltNetwork build_network(const NetworkConfig& config, std::uint64_t seed) {
  Hypergraph base;
  int default_order = 1;
  switch (config.kind) {
    case NetworkCase::TriangularLattice:
      base = generate_triangular_lattice(config.lattice_rows, config.lattice_cols,
                                         config.lattice_periodic);
      default_order = 2;
      break;
    case NetworkCase::ErdosRenyi:
      base = generate_er(config.er_n, config.er_p, seed);
      default_order = 4;
      break;
  }
  const int max_order = config.max_order > 0 ? config.max_order : default_order;
  BuiltNetwork net;
  net.max_order = max_order;
  net.g_k = clique_complex(base, max_order);
  net.g_1 = std::move(base);
  return net;
}

ReplicateSet run_paired_replicates(const Hypergraph& g_k, const Hypergraph& g_1,
                                   const DiseaseParams& params,
                                   const PairedRunOptions& options, int replicates,
                                   double init_fraction, int t_steps, std::uint64_t seed,
                                   std::uint64_t run_index_offset, int threads) {
  if (replicates < 1)
    throw std::invalid_argument("run_paired_replicates: need at least one replicate");
  if (!(init_fraction >= 0.0 && init_fraction <= 1.0))
    throw std::invalid_argument("run_paired_replicates: init_fraction must lie in [0, 1]");

  const std::uint32_t n = g_k.n_nodes();
  const auto n_init = static_cast<std::uint32_t>(std::llround(init_fraction * n));

  ReplicateSet set;
  set.runs.resize(replicates);
  parallel_for(replicates, threads, [&](std::size_t r) {
    const std::uint64_t run_index = run_index_offset + r;
    Rng init_rng = make_rng(seed, run_index, kChannelInit);
    const auto init = make_initial_states(n, n_init, init_rng);
    set.runs[r] = paired_run(g_k, g_1, params, options, init, t_steps,
                             SeedPair{seed, run_index});
  });

  set.ensemble = summarize_ensemble(set.runs);
  set.rmse = rmse(set.ensemble.mean_1, set.ensemble.mean_k);
  set.beta1_initial = set.runs.front().beta1_initial;
  return set;
}

ReplicateSet run_paired_experiment(const PairedExperimentConfig& config) {
  const auto net = build_network(config.network, config.seed);
  const int replicates =
      config.replicates > 0
          ? config.replicates
          : (config.network.kind == NetworkCase::TriangularLattice ? 50 : 10);
  PairedRunOptions options;
  options.adaptive = config.adaptive;
  options.beta1_init = config.beta1_override;
  options.switch_to_higher_order_at = config.t_switch;
  options.stop_when_extinct = config.stop_when_extinct;
  return run_paired_replicates(net.g_k, net.g_1, config.params, options, replicates,
                               config.init_fraction, config.t_steps, config.seed,
                               config.run_index_offset, config.threads);
}

ReplicateSet experiment_static_normalization(NetworkCase network, int replicates,
                                             std::uint64_t seed, int threads) {
  PairedExperimentConfig config;
  config.network.kind = network;
  config.replicates = replicates;
  config.seed = seed;
  config.threads = threads;
  return run_paired_experiment(config);
}

ReplicateSet experiment_control_switch(NetworkCase network, int t_switch, int replicates,
                                       std::uint64_t seed, int threads) {
  PairedExperimentConfig config;
  config.network.kind = network;
  config.replicates = replicates;
  config.seed = seed;
  config.threads = threads;
  config.beta1_override = config.params.beta;  // unnormalized control
  config.t_switch = t_switch;
  return run_paired_experiment(config);
}

ReplicateSet experiment_adaptive(NetworkCase network, const ScalingSpec& misspec,
                                 int replicates, std::uint64_t seed, int threads) {
  PairedExperimentConfig config;
  config.network.kind = network;
  config.replicates = replicates;
  config.seed = seed;
  config.threads = threads;
  AdaptiveConfig adaptive;
  adaptive.spec_for_xi = misspec;
  config.adaptive = adaptive;
  return run_paired_experiment(config);
}

MisspecStudy experiment_misspecification(const MisspecConfig& config) {
  MisspecStudy study;
  std::uint64_t cell = 0;
  const auto run_cell = [&](const ScalingSpec& spec) {
    PairedExperimentConfig cell_config;
    cell_config.network = config.network;
    cell_config.replicates = config.replicates;
    cell_config.params = config.params;
    cell_config.t_steps = config.t_steps;
    cell_config.seed = config.seed;
    cell_config.threads = config.threads;
    cell_config.run_index_offset = cell++ << 32;
    AdaptiveConfig adaptive;
    adaptive.spec_for_xi = spec;
    cell_config.adaptive = adaptive;
    return MisspecCellResult{spec, run_paired_experiment(cell_config)};
  };
  for (double eta : config.eta_values) study.eta_cells.push_back(run_cell(ScalingSpec::scale_misspec(eta)));
  for (int n : config.n_values) study.n_cells.push_back(run_cell(ScalingSpec::form_misspec(n)));
  return study;
}

std::vector<double> log_spaced(double lo, double hi, int count) {
  if (!(lo > 0.0) || !(hi >= lo)) throw std::invalid_argument("log_spaced: need 0 < lo <= hi");
  if (count < 1) throw std::invalid_argument("log_spaced: count must be >= 1");
  std::vector<double> values(count);
  if (count == 1) {
    values[0] = lo;
    return values;
  }
  const double ratio = std::log(hi / lo) / (count - 1);
  for (int i = 0; i < count; ++i) values[i] = lo * std::exp(ratio * i);
  values.back() = hi;
  return values;
}

SweepResult experiment_sir_sweep(const SweepGrid& grid, std::uint64_t seed,
                                 std::uint32_t er_n, double er_p, int threads) {
  if (grid.beta_values.empty() || grid.mu_values.empty())
    throw std::invalid_argument("experiment_sir_sweep: grid axes must be non-empty");
  if (grid.replicates < 1)
    throw std::invalid_argument("experiment_sir_sweep: need at least one replicate");
  for (double b : grid.beta_values)
    if (!(b > 0.0 && b <= 1.0))
      throw std::invalid_argument("experiment_sir_sweep: beta values must lie in (0, 1]");
  for (double m : grid.mu_values)
    if (!(m >= 0.0 && m <= 1.0))
      throw std::invalid_argument("experiment_sir_sweep: mu values must lie in [0, 1]");

  const Hypergraph g_1 = generate_er(er_n, er_p, seed);
  const Hypergraph g_k = clique_complex(g_1, grid.max_order);

  const std::size_t n_beta = grid.beta_values.size();
  const std::size_t n_cells = n_beta * grid.mu_values.size();
  const std::size_t n_tasks = n_cells * grid.replicates;
  const SummaryMode mode = grid.mu_mode == MuMode::Removal ? SummaryMode::Sir : SummaryMode::Sis;

  struct TaskStats {
    SummaryStats k1;
    SummaryStats kk;
  };
  std::vector<TaskStats> task_stats(n_tasks);

  const std::uint32_t n_init =
      static_cast<std::uint32_t>(std::llround(grid.init_fraction * er_n));

  parallel_for(n_tasks, threads, [&](std::size_t task) {
    const std::size_t cell = task / grid.replicates;
    const std::size_t rep = task % grid.replicates;
    const std::size_t i_mu = cell / n_beta;
    const std::size_t i_beta = cell % n_beta;

    DiseaseParams params;
    params.beta = grid.beta_values[i_beta];
    params.mu = grid.mu_mode == MuMode::Recovery ? grid.mu_values[i_mu] : 0.0;
    params.alpha = grid.mu_mode == MuMode::Removal ? grid.mu_values[i_mu] : 0.0;
    params.k_gamma = grid.k_gamma;
    params.m = grid.m;

    PairedRunOptions options;
    options.adaptive = AdaptiveConfig{};
    options.stop_when_extinct = true;

    const std::uint64_t run_index = (static_cast<std::uint64_t>(cell) << 32) + rep;
    Rng init_rng = make_rng(seed, run_index, kChannelInit);
    const auto init = make_initial_states(er_n, n_init, init_rng);
    const auto result =
        paired_run(g_k, g_1, params, options, init, grid.t_cap, SeedPair{seed, run_index});
    task_stats[task] = {summarize(result.trajectory_1, mode),
                        summarize(result.trajectory_k, mode)};
  });

  SweepResult result;
  result.beta_values = grid.beta_values;
  result.mu_values = grid.mu_values;
  result.cells.resize(n_cells);
  for (std::size_t cell = 0; cell < n_cells; ++cell) {
    PhaseCell& out = result.cells[cell];
    out.beta = grid.beta_values[cell % n_beta];
    out.mu = grid.mu_values[cell / n_beta];
    for (int rep = 0; rep < grid.replicates; ++rep) {
      const auto& stats = task_stats[cell * grid.replicates + rep];
      out.k1.peak_time += stats.k1.peak_time;
      out.k1.peak_proportion += stats.k1.peak_proportion;
      out.k1.final_proportion += stats.k1.final_proportion;
      out.kk.peak_time += stats.kk.peak_time;
      out.kk.peak_proportion += stats.kk.peak_proportion;
      out.kk.final_proportion += stats.kk.final_proportion;
    }
    const double scale = 1.0 / grid.replicates;
    out.k1.peak_time *= scale;
    out.k1.peak_proportion *= scale;
    out.k1.final_proportion *= scale;
    out.kk.peak_time *= scale;
    out.kk.peak_proportion *= scale;
    out.kk.final_proportion *= scale;
  }
  return result;
}

SummaryStats summarize(const Trajectory& trajectory, SummaryMode mode) {
  if (trajectory.records.empty())
    throw std::invalid_argument("summarize: trajectory must be non-empty");
  const double n = trajectory.n_nodes;

  SummaryStats stats;
  std::uint32_t peak_infected = trajectory.records.front().i;
  for (const auto& rec : trajectory.records) {
    if (rec.i > peak_infected) {
      peak_infected = rec.i;
      stats.peak_time = rec.t;
    }
  }
  stats.peak_proportion = peak_infected / n;

  if (mode == SummaryMode::Sir) {
    stats.final_proportion = trajectory.records.back().r / n;
  } else {
    const std::size_t size = trajectory.records.size();
    const std::size_t window = std::min<std::size_t>(100, size);
    double sum = 0.0;
    for (std::size_t idx = size - window; idx < size; ++idx)
      sum += trajectory.records[idx].i / n;
    stats.final_proportion = sum / static_cast<double>(window);
  }
  return stats;
}

namespace {

double interpolated_quantile(std::vector<double>& values, double q) {
  std::sort(values.begin(), values.end());
  const double pos = q * static_cast<double>(values.size() - 1);
  const auto lo = static_cast<std::size_t>(pos);
  if (lo + 1 >= values.size()) return values.back();
  const double frac = pos - static_cast<double>(lo);
  return values[lo] + frac * (values[lo + 1] - values[lo]);
}

double infected_fraction_padded(const Trajectory& trajectory, std::size_t idx) {
  const auto& records = trajectory.records;
  const auto& rec = idx < records.size() ? records[idx] : records.back();
  return static_cast<double>(rec.i) / trajectory.n_nodes;
}

}  // namespace

EnsembleSummary summarize_ensemble(const std::vector<PairedRunResult>& runs) {
  if (runs.empty()) throw std::invalid_argument("summarize_ensemble: no replicates");
  std::size_t length = 0;
  for (const auto& run : runs)
    length = std::max(length, run.trajectory_1.records.size());

  EnsembleSummary ensemble;
  for (auto* column : {&ensemble.mean_1, &ensemble.q05_1, &ensemble.q95_1,
                       &ensemble.mean_k, &ensemble.q05_k, &ensemble.q95_k})
    column->resize(length);

  std::vector<double> sample(runs.size());
  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t system = 0; system < 2; ++system) {
      for (std::size_t r = 0; r < runs.size(); ++r) {
        const auto& trajectory =
            system == 0 ? runs[r].trajectory_1 : runs[r].trajectory_k;
        sample[r] = infected_fraction_padded(trajectory, t);
      }
      const double mean =
          std::accumulate(sample.begin(), sample.end(), 0.0) / sample.size();
      const double q05 = interpolated_quantile(sample, 0.05);
      const double q95 = interpolated_quantile(sample, 0.95);
      if (system == 0) {
        ensemble.mean_1[t] = mean;
        ensemble.q05_1[t] = q05;
        ensemble.q95_1[t] = q95;
      } else {
        ensemble.mean_k[t] = mean;
        ensemble.q05_k[t] = q05;
        ensemble.q95_k[t] = q95;
      }
    }
  }
  return ensemble;
}

double rmse(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size() || a.empty())
    throw std::invalid_argument("rmse: curves must be non-empty and equally long");
  double sum = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum / static_cast<double>(a.size()));
}

double endemic_level(std::span<const double> curve, int window) {
  if (curve.empty()) throw std::invalid_argument("endemic_level: empty curve");
  const std::size_t w = std::min<std::size_t>(window, curve.size());
  double sum = 0.0;
  for (std::size_t i = curve.size() - w; i < curve.size(); ++i) sum += curve[i];
  return sum / static_cast<double>(w);
}

std::size_t half_crossing_time(std::span<const double> curve, double level) {
  for (std::size_t i = 0; i < curve.size(); ++i)
    if (curve[i] >= 0.5 * level) return i;
  return curve.size();
}

}  // namespace hc
