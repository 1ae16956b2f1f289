#pragma once

#include <vector>

#include "hypercontagion/contagion.hpp"
#include "hypercontagion/hypergraph.hpp"
#include "hypercontagion/scaling.hpp"

namespace hc {

/// Expected new infections per hyperedge selection, with per-order breakdown.
struct ActivityReport {
  double value = 0.0;
  int max_order = 0;                     // K
  std::vector<double> order_terms;       // per order 1..K
  std::vector<std::size_t> edge_counts;  // N_k per order 1..K
};

/// Expected per-selection infections of a single order-k edge whose members
/// are independently infected or susceptible with probability 1/2.
double beta_hat_k(int k, double beta, double k_gamma, const ScalingSpec& spec = {});

/// Topology-only activity: count-weighted mean of beta_hat over orders 1..K.
ActivityReport combinatorial_activity(const Hypergraph& g, double beta, double k_gamma,
                                      int K, const ScalingSpec& spec = {});

/// State-dependent activity: mean over all hyperedges of n_S(e) * beta_e.
ActivityReport exact_activity(const Hypergraph& g, double beta,
                              const NodeStateVector& states, double k_gamma,
                              const ScalingSpec& spec = {});

/// Static normalization: the pairwise rate that matches the order-K system's
/// combinatorial activity, beta1 = [lambda_K(gK) / lambda_1(g1)] * beta.
/// Requires g1 to be the order-1 restriction of gK.
double normalize_beta1(const Hypergraph& g_k, const Hypergraph& g_1, double beta,
                       double k_gamma, int K, const ScalingSpec& spec = {});

}  // namespace hc
