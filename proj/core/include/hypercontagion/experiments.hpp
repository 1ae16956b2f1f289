#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "hypercontagion/adaptive.hpp"
#include "hypercontagion/contagion.hpp"
#include "hypercontagion/hypergraph.hpp"

namespace hc {

// Networks --------------------------------------------------------------------

enum class NetworkCase { TriangularLattice, ErdosRenyi };

struct NetworkConfig {
  NetworkCase kind = NetworkCase::ErdosRenyi;
  std::uint32_t er_n = 500;
  double er_p = 0.1;
  int lattice_rows = 20;
  int lattice_cols = 25;
  bool lattice_periodic = true;
  int max_order = 0;  // 0 -> default per kind: lattice 2, ER 4
};

struct BuiltNetwork {
  Hypergraph g_k;  // clique complex up to max_order
  Hypergraph g_1;  // pairwise base graph
  int max_order = 1;
};

BuiltNetwork build_network(const NetworkConfig& config, std::uint64_t seed);

// Paired-replicate experiments --------------------------------------------------

struct EnsembleSummary {
  // Infected fraction per time step; trajectories shorter than the longest
  // replicate are padded with their final state.
  std::vector<double> mean_1, q05_1, q95_1;
  std::vector<double> mean_k, q05_k, q95_k;
};

struct ReplicateSet {
  std::vector<PairedRunResult> runs;
  EnsembleSummary ensemble;
  double rmse = 0.0;  // between the two ensemble mean curves
  double beta1_initial = 0.0;
};

struct PairedExperimentConfig {
  NetworkConfig network;
  int replicates = 0;  // 0 -> default per kind: lattice 50, ER 10
  DiseaseParams params{};
  double init_fraction = 0.01;
  int t_steps = 700;
  std::uint64_t seed = 1;
  std::uint64_t run_index_offset = 0;  // namespaces replicate streams per cell
  int threads = 1;
  std::optional<AdaptiveConfig> adaptive;
  std::optional<double> beta1_override;
  std::optional<int> t_switch;
  bool stop_when_extinct = false;
};

ReplicateSet run_paired_experiment(const PairedExperimentConfig& config);

/// Replicate loop over prebuilt graphs; building block for the CLI and the
/// experiment families above.
ReplicateSet run_paired_replicates(const Hypergraph& g_k, const Hypergraph& g_1,
                                   const DiseaseParams& params,
                                   const PairedRunOptions& options, int replicates,
                                   double init_fraction, int t_steps, std::uint64_t seed,
                                   std::uint64_t run_index_offset, int threads);

/// Static normalization protocol: lattice K=2 (50 replicates) or
/// ER(500, 0.1) K=4 (10 replicates), SIS (0.05, 0.0001, 0), m = 50, T = 700.
ReplicateSet experiment_static_normalization(NetworkCase network, int replicates,
                                             std::uint64_t seed, int threads = 1);

/// Unnormalized control where the pairwise system switches to the lifted
/// hypergraph at t_switch.
ReplicateSet experiment_control_switch(NetworkCase network, int t_switch, int replicates,
                                       std::uint64_t seed, int threads = 1);

/// Adaptive beta1(t) protocol; `misspec` is the scaling form assumed inside
/// activity ratios (dynamics always use the true form).
ReplicateSet experiment_adaptive(NetworkCase network, const ScalingSpec& misspec,
                                 int replicates, std::uint64_t seed, int threads = 1);

// Misspecification study --------------------------------------------------------

struct MisspecCellResult {
  ScalingSpec spec;
  ReplicateSet set;
};

struct MisspecStudy {
  std::vector<MisspecCellResult> eta_cells;
  std::vector<MisspecCellResult> n_cells;
};

struct MisspecConfig {
  std::vector<double> eta_values{0.5, 0.8, 1.2, 1.5, 2.0};
  std::vector<int> n_values{2, 3, 4, 5};
  int replicates = 5;
  int t_steps = 700;
  std::uint64_t seed = 1;
  int threads = 1;
  NetworkConfig network{};  // ER(500, 0.1), K = 4
  DiseaseParams params{};
};

MisspecStudy experiment_misspecification(const MisspecConfig& config);

// SIR phase sweep ----------------------------------------------------------------

/// Whether the sweep's mu axis drives the removal channel (I->R, SIR reading)
/// or the recovery channel (I->S, SIS reading).
enum class MuMode { Removal, Recovery };

struct SweepGrid {
  std::vector<double> beta_values;
  std::vector<double> mu_values;
  int replicates = 5;
  int max_order = 4;
  double k_gamma = 3.0;
  int m = 50;
  MuMode mu_mode = MuMode::Removal;
  int t_cap = 700;
  double init_fraction = 0.01;
};

struct CellStats {
  double peak_time = 0.0;
  double peak_proportion = 0.0;
  double final_proportion = 0.0;
};

struct PhaseCell {
  double beta = 0.0;
  double mu = 0.0;
  CellStats k1;
  CellStats kk;
};

/// Cells laid out mu-major: cell index = i_mu * n_beta + i_beta.
struct SweepResult {
  std::vector<double> beta_values;
  std::vector<double> mu_values;
  std::vector<PhaseCell> cells;
};

SweepResult experiment_sir_sweep(const SweepGrid& grid, std::uint64_t seed,
                                 std::uint32_t er_n = 500, double er_p = 0.1,
                                 int threads = 1);

std::vector<double> log_spaced(double lo, double hi, int count);

// Summaries ------------------------------------------------------------------------

enum class SummaryMode { Sis, Sir };

struct SummaryStats {
  int peak_time = 0;            // earliest argmax of I
  double peak_proportion = 0.0;  // max I / N
  // SIR: terminal R / N. SIS: mean I / N over the final 100 steps.
  double final_proportion = 0.0;
};

SummaryStats summarize(const Trajectory& trajectory, SummaryMode mode);

EnsembleSummary summarize_ensemble(const std::vector<PairedRunResult>& runs);

double rmse(std::span<const double> a, std::span<const double> b);

/// Mean of a curve's final `window` entries.
double endemic_level(std::span<const double> curve, int window = 100);

/// First index where the curve reaches half of `level`; curve.size() if never.
std::size_t half_crossing_time(std::span<const double> curve, double level);

}  // namespace hc
