#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hypercontagion/activity.hpp"
#include "hypercontagion/contagion.hpp"
#include "hypercontagion/hypergraph.hpp"

namespace hc {

/// Controller parameters for the dynamically adjusted pairwise rate beta1(t).
/// spec_for_xi is the scaling function assumed when computing activity
/// ratios; it may deliberately differ from the dynamics' true form.
struct AdaptiveConfig {
  int tau = 5;
  double rho = 0.5;  // may be +inf: "never adjust"
  ScalingSpec spec_for_xi = {};

  void validate() const;
};

struct AdjustmentEvent {
  int t = 0;
  double beta1_before = 0.0;
  double beta1_after = 0.0;
  double xi = 0.0;
  double xi_bar = 0.0;
};

/// Outcome of co-simulating a pairwise (K=1) and a higher-order system.
struct PairedRunResult {
  Trajectory trajectory_1;
  Trajectory trajectory_k;
  std::vector<AdjustmentEvent> events;
  double beta1_initial = 0.0;

  std::vector<int> adjustment_times() const;
};

/// Exact-activity ratio xi = lambda_K(gK, beta_k, X_K) / lambda_1(g1, beta_1, X_1),
/// both sides evaluated with spec_for_xi. Returns NaN when the denominator
/// activity is zero (undefined ratio).
double xi_ratio(const Hypergraph& g_k, const Hypergraph& g_1, double beta_k,
                double beta_1, const NodeStateVector& states_k,
                const NodeStateVector& states_1, double k_gamma,
                const ScalingSpec& spec_for_xi = {});

struct Beta1Update {
  double beta1;
  bool adjusted;
};

/// Threshold rule: unchanged while |xi_bar - 1| < rho, otherwise
/// beta1 <- xi * beta1 clamped to (0, 1].
Beta1Update update_beta1(double beta1_prev, double xi_t, double xi_bar_t, double rho);

/// Identifies the two RNG streams of a paired run.
struct SeedPair {
  std::uint64_t master = 1;
  std::uint64_t run_index = 0;
};

/// Extension knobs used by the experiment runners; the defaults reproduce the
/// plain static/adaptive protocols.
struct PairedRunOptions {
  std::optional<AdaptiveConfig> adaptive;          // nullopt -> static beta1
  std::optional<double> beta1_init;                // nullopt -> static normalization
  std::optional<int> switch_to_higher_order_at;    // replace g1 by gK at this step
  bool stop_when_extinct = false;                  // end once both systems have I = 0
};

/// Advances both systems in lockstep for t_steps steps from a shared initial
/// state. After each step the activity ratio xi(t) and its trailing mean over
/// at most tau samples are recorded on trajectory_1; in adaptive mode the
/// threshold rule is applied and the averaging window restarts after every
/// adjustment. When the denominator activity is zero, xi is recorded as NaN
/// and beta1 is frozen for that step.
PairedRunResult paired_run(const Hypergraph& g_k, const Hypergraph& g_1,
                           const DiseaseParams& params_k,
                           const std::optional<AdaptiveConfig>& adaptive,
                           const NodeStateVector& init, int t_steps, SeedPair seeds);

PairedRunResult paired_run(const Hypergraph& g_k, const Hypergraph& g_1,
                           const DiseaseParams& params_k, const PairedRunOptions& options,
                           const NodeStateVector& init, int t_steps, SeedPair seeds);

}  // namespace hc
