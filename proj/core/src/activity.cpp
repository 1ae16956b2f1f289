#include "hypercontagion/activity.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hc {

namespace {

double binomial(int n, int r) {
  double value = 1.0;
  for (int i = 1; i <= r; ++i) value = value * (n - r + i) / i;
  return value;
}

/// min[f(n_i / k) * n_i * beta, 1] for n_i = 0..k; indexable while at least
/// one member is susceptible.
std::vector<double> edge_prob_row(int k, double beta, double k_gamma,
                                  const ScalingSpec& spec) {
  std::vector<double> row(k + 1);
  for (int ni = 0; ni <= k; ++ni)
    row[ni] =
        std::min(scaling_f(static_cast<double>(ni) / k, k_gamma, spec) * ni * beta, 1.0);
  return row;
}

}  // namespace

double beta_hat_k(int k, double beta, double k_gamma, const ScalingSpec& spec) {
  if (k < 1) throw std::invalid_argument("beta_hat_k: order must be >= 1");
  if (!(beta >= 0.0 && beta <= 1.0))
    throw std::invalid_argument("beta_hat_k: beta must lie in [0, 1]");
  // i = 0 and i = k + 1 contribute nothing (no infected / no susceptible).
  double sum = 0.0;
  for (int i = 1; i <= k; ++i) {
    const double prob =
        std::min(scaling_f(static_cast<double>(i) / k, k_gamma, spec) * i * beta, 1.0);
    sum += binomial(k + 1, i) * (k + 1 - i) * prob;
  }
  return sum / std::exp2(k + 1);
}

ActivityReport combinatorial_activity(const Hypergraph& g, double beta, double k_gamma,
                                      int K, const ScalingSpec& spec) {
  if (K < 1) throw std::invalid_argument("combinatorial_activity: K must be >= 1");
  if (K > g.max_order())
    throw std::invalid_argument("combinatorial_activity: K exceeds the hypergraph's max order");

  ActivityReport report;
  report.max_order = K;
  report.order_terms.resize(K);
  report.edge_counts.resize(K);
  double weighted = 0.0;
  std::size_t total = 0;
  for (int k = 1; k <= K; ++k) {
    report.order_terms[k - 1] = beta_hat_k(k, beta, k_gamma, spec);
    report.edge_counts[k - 1] = g.edge_count(k);
    weighted += static_cast<double>(report.edge_counts[k - 1]) * report.order_terms[k - 1];
    total += report.edge_counts[k - 1];
  }
  if (total == 0)
    throw std::runtime_error("combinatorial_activity: hypergraph has no hyperedges up to K");
  report.value = weighted / static_cast<double>(total);
  return report;
}

ActivityReport exact_activity(const Hypergraph& g, double beta,
                              const NodeStateVector& states, double k_gamma,
                              const ScalingSpec& spec) {
  if (states.size() != g.n_nodes())
    throw std::invalid_argument("exact_activity: state vector length must equal node count");
  const std::size_t total = g.total_edges();
  if (total == 0) throw std::runtime_error("exact_activity: hypergraph has no hyperedges");

  ActivityReport report;
  report.max_order = g.max_order();
  report.order_terms.resize(report.max_order, 0.0);
  report.edge_counts.resize(report.max_order, 0);
  double grand = 0.0;
  for (int k = 1; k <= g.max_order(); ++k) {
    const std::size_t count = g.edge_count(k);
    report.edge_counts[k - 1] = count;
    if (count == 0) continue;
    const auto row = edge_prob_row(k, beta, k_gamma, spec);
    const auto& flat = g.flat(k);
    const std::size_t stride = static_cast<std::size_t>(k) + 1;
    double order_sum = 0.0;
    for (std::size_t offset = 0; offset < flat.size(); offset += stride) {
      int n_infected = 0, n_susceptible = 0;
      for (std::size_t j = 0; j < stride; ++j) {
        const Compartment c = states[flat[offset + j]];
        n_infected += c == Compartment::Infected;
        n_susceptible += c == Compartment::Susceptible;
      }
      if (n_susceptible > 0) order_sum += n_susceptible * row[n_infected];
    }
    report.order_terms[k - 1] = order_sum / static_cast<double>(count);
    grand += order_sum;
  }
  report.value = grand / static_cast<double>(total);
  return report;
}

double normalize_beta1(const Hypergraph& g_k, const Hypergraph& g_1, double beta,
                       double k_gamma, int K, const ScalingSpec& spec) {
  if (g_1.n_nodes() != g_k.n_nodes() || g_1.max_order() != 1 ||
      g_1.flat(1) != g_k.flat(1))
    throw std::invalid_argument(
        "normalize_beta1: g_1 must be the order-1 restriction of g_k");
  const double lambda_k = combinatorial_activity(g_k, beta, k_gamma, K, spec).value;
  const double lambda_1 = combinatorial_activity(g_1, beta, k_gamma, 1, spec).value;
  if (lambda_1 <= 0.0)
    throw std::runtime_error(
        "normalize_beta1: pairwise combinatorial activity is zero, normalization undefined");
  return lambda_k / lambda_1 * beta;
}

}  // namespace hc
