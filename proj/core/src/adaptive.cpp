#include "hypercontagion/adaptive.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace hc {

void AdaptiveConfig::validate() const {
  if (tau < 1) throw std::invalid_argument("AdaptiveConfig: tau must be >= 1");
  if (!(rho > 0.0)) throw std::invalid_argument("AdaptiveConfig: rho must be > 0");
  spec_for_xi.validate();
}

std::vector<int> PairedRunResult::adjustment_times() const {
  std::vector<int> times;
  times.reserve(events.size());
  for (const auto& event : events) times.push_back(event.t);
  return times;
}

double xi_ratio(const Hypergraph& g_k, const Hypergraph& g_1, double beta_k,
                double beta_1, const NodeStateVector& states_k,
                const NodeStateVector& states_1, double k_gamma,
                const ScalingSpec& spec_for_xi) {
  const double numerator = exact_activity(g_k, beta_k, states_k, k_gamma, spec_for_xi).value;
  const double denominator =
      exact_activity(g_1, beta_1, states_1, k_gamma, spec_for_xi).value;
  if (denominator == 0.0) return std::numeric_limits<double>::quiet_NaN();
  return numerator / denominator;
}

Beta1Update update_beta1(double beta1_prev, double xi_t, double xi_bar_t, double rho) {
  if (!(beta1_prev > 0.0 && beta1_prev <= 1.0))
    throw std::invalid_argument("update_beta1: beta1_prev must lie in (0, 1]");
  if (!(rho > 0.0)) throw std::invalid_argument("update_beta1: rho must be > 0");
  assert(std::isfinite(xi_t) && std::isfinite(xi_bar_t));
  if (std::abs(xi_bar_t - 1.0) < rho) return {beta1_prev, false};
  const double adjusted =
      std::clamp(xi_t * beta1_prev, std::numeric_limits<double>::min(), 1.0);
  return {adjusted, true};
}

namespace {

struct XiWindow {
  std::vector<double> samples;  // most recent tau ratios since the last reset
  int tau;

  void push(double xi) {
    samples.push_back(xi);
    if (static_cast<int>(samples.size()) > tau) samples.erase(samples.begin());
  }
  void reset() { samples.clear(); }
  double mean() const {
    if (samples.empty()) return std::numeric_limits<double>::quiet_NaN();
    return std::accumulate(samples.begin(), samples.end(), 0.0) /
           static_cast<double>(samples.size());
  }
};

}  // namespace

PairedRunResult paired_run(const Hypergraph& g_k, const Hypergraph& g_1,
                           const DiseaseParams& params_k,
                           const std::optional<AdaptiveConfig>& adaptive,
                           const NodeStateVector& init, int t_steps, SeedPair seeds) {
  PairedRunOptions options;
  options.adaptive = adaptive;
  return paired_run(g_k, g_1, params_k, options, init, t_steps, seeds);
}

PairedRunResult paired_run(const Hypergraph& g_k, const Hypergraph& g_1,
                           const DiseaseParams& params_k, const PairedRunOptions& options,
                           const NodeStateVector& init, int t_steps, SeedPair seeds) {
  if (t_steps < 1) throw std::invalid_argument("paired_run: t_steps must be >= 1");
  if (options.adaptive) options.adaptive->validate();

  const bool adaptive_mode = options.adaptive.has_value();
  const ScalingSpec true_form{};
  const ScalingSpec xi_spec = adaptive_mode ? options.adaptive->spec_for_xi : true_form;
  const double k_gamma = params_k.k_gamma;

  double beta1 =
      options.beta1_init
          ? *options.beta1_init
          : normalize_beta1(g_k, g_1, params_k.beta, k_gamma, g_k.max_order(), xi_spec);

  DiseaseParams params_1 = params_k;
  params_1.beta = beta1;

  Simulation sim_k(g_k, params_k, true_form, init,
                   make_rng(seeds.master, seeds.run_index, kChannelSystemK));
  Simulation sim_1(g_1, params_1, true_form, init,
                   make_rng(seeds.master, seeds.run_index, kChannelSystem1));

  PairedRunResult result;
  result.beta1_initial = beta1;
  result.trajectory_1.n_nodes = g_1.n_nodes();
  result.trajectory_k.n_nodes = g_k.n_nodes();
  result.trajectory_1.records.reserve(t_steps + 1);
  result.trajectory_k.records.reserve(t_steps + 1);

  XiWindow window{{}, adaptive_mode ? options.adaptive->tau : AdaptiveConfig{}.tau};

  const auto record = [&](int t, double xi, double xi_bar, bool adjusted) {
    TrajectoryRecord rec1;
    rec1.t = t;
    rec1.s = sim_1.n_susceptible();
    rec1.i = sim_1.n_infected();
    rec1.r = sim_1.n_removed();
    rec1.beta1 = beta1;
    rec1.xi = xi;
    rec1.xi_bar = xi_bar;
    rec1.adjusted = adjusted ? 1 : 0;
    result.trajectory_1.records.push_back(rec1);

    TrajectoryRecord reck;
    reck.t = t;
    reck.s = sim_k.n_susceptible();
    reck.i = sim_k.n_infected();
    reck.r = sim_k.n_removed();
    result.trajectory_k.records.push_back(reck);
  };

  const auto current_xi = [&]() {
    return xi_ratio(g_k, sim_1.hypergraph(), params_k.beta, beta1, sim_k.states(),
                    sim_1.states(), k_gamma, xi_spec);
  };

  record(0, current_xi(), std::numeric_limits<double>::quiet_NaN(), false);

  for (int t = 1; t <= t_steps; ++t) {
    if (options.switch_to_higher_order_at && t == *options.switch_to_higher_order_at + 1)
      sim_1.set_hypergraph(g_k);

    sim_k.step();
    sim_1.step();

    const double xi = current_xi();
    double xi_bar = std::numeric_limits<double>::quiet_NaN();
    bool adjusted = false;
    if (std::isfinite(xi)) {
      window.push(xi);
      xi_bar = window.mean();
      if (adaptive_mode) {
        const auto update = update_beta1(beta1, xi, xi_bar, options.adaptive->rho);
        if (update.adjusted) {
          result.events.push_back({t, beta1, update.beta1, xi, xi_bar});
          beta1 = update.beta1;
          sim_1.set_beta(beta1);
          window.reset();
          adjusted = true;
        }
      }
    }
    // xi undefined: beta1 stays frozen and the step records empty ratio fields.

    record(t, xi, xi_bar, adjusted);

    if (options.stop_when_extinct && sim_k.n_infected() == 0 && sim_1.n_infected() == 0)
      break;
  }
  return result;
}

}  // namespace hc
