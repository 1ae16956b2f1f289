#pragma once

#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "hypercontagion/hypergraph.hpp"
#include "hypercontagion/rng.hpp"
#include "hypercontagion/scaling.hpp"

namespace hc {

enum class Compartment : std::uint8_t { Susceptible, Infected, Removed };

/// Per-node compartment assignment; index = NodeId.
using NodeStateVector = std::vector<Compartment>;

/// Per-iteration probabilities of the edge-based model plus the amplification
/// cap k_gamma and the resolution m (iterations per time step).
struct DiseaseParams {
  double beta = 0.05;
  double mu = 1e-4;
  double alpha = 0.0;
  double k_gamma = 3.0;
  int m = 50;

  void validate() const;
};

struct TrajectoryRecord {
  int t = 0;
  std::uint32_t s = 0;
  std::uint32_t i = 0;
  std::uint32_t r = 0;
  // Controller columns; NaN / -1 when not applicable to the run kind.
  double beta1 = std::numeric_limits<double>::quiet_NaN();
  double xi = std::numeric_limits<double>::quiet_NaN();
  double xi_bar = std::numeric_limits<double>::quiet_NaN();
  std::int8_t adjusted = -1;
};

struct Trajectory {
  std::uint32_t n_nodes = 0;
  std::vector<TrajectoryRecord> records;

  int steps() const { return static_cast<int>(records.size()) - 1; }
  double infected_fraction(std::size_t idx) const {
    return static_cast<double>(records[idx].i) / n_nodes;
  }
};

/// Probability that one susceptible member of `edge` becomes infected when the
/// edge is selected: min[f(n_I / k) * n_I * beta, 1]. Zero when the edge has
/// no infected or no susceptible members.
double edge_infection_prob(std::span<const NodeId> edge, const NodeStateVector& states,
                           double beta, double k_gamma, const ScalingSpec& spec = {});

std::uint32_t count_compartment(const NodeStateVector& states, Compartment c);

/// n_infected distinct nodes drawn uniformly, the rest susceptible.
NodeStateVector make_initial_states(std::uint32_t n_nodes, std::uint32_t n_infected,
                                    Rng& rng);

/// Edge-based stochastic SIS/SIR dynamics on a hypergraph.
///
/// One iteration: a hyperedge is selected uniformly over all orders, each
/// susceptible member independently becomes infected with the edge's
/// probability, then every previously infected node recovers (I->S, prob mu)
/// or is removed (I->R, prob alpha) from a single uniform draw. Nodes
/// infected within the iteration are exempt from that iteration's recovery
/// pass. Draw order is fixed: edge index, susceptible members ascending,
/// infected nodes ascending.
class Simulation {
 public:
  Simulation(const Hypergraph& g, const DiseaseParams& params, const ScalingSpec& spec,
             NodeStateVector init, Rng rng);

  void iterate_once();
  /// One time step = m iterations.
  void step();

  /// Adaptive control: replaces the base infection probability.
  void set_beta(double beta);
  /// Swaps the interaction topology mid-run (states carry over).
  void set_hypergraph(const Hypergraph& g);

  const NodeStateVector& states() const { return states_; }
  const Hypergraph& hypergraph() const { return *g_; }
  const DiseaseParams& params() const { return params_; }
  const Rng& rng() const { return rng_; }
  std::uint32_t n_susceptible() const { return n_s_; }
  std::uint32_t n_infected() const { return n_i_; }
  std::uint32_t n_removed() const { return n_r_; }

 private:
  void rebuild_edge_prob_table();

  const Hypergraph* g_;
  DiseaseParams params_;
  ScalingSpec spec_;
  NodeStateVector states_;
  std::vector<NodeId> infected_;  // sorted ascending
  std::uint32_t n_s_ = 0, n_i_ = 0, n_r_ = 0;
  Rng rng_;
  // edge_prob_[k-1][n_i] = min(f(n_i / k) * n_i * beta, 1)
  std::vector<std::vector<double>> edge_prob_;
  std::vector<NodeId> fresh_;  // scratch: nodes infected this iteration
};

// Spec-shaped free functions over plain state vectors. They reproduce exactly
// what a Simulation constructed from (states, rng) would do.
void iterate_once(NodeStateVector& states, const Hypergraph& g, const DiseaseParams& params,
                  const ScalingSpec& spec, Rng& rng);
void step(NodeStateVector& states, const Hypergraph& g, const DiseaseParams& params,
          const ScalingSpec& spec, Rng& rng);

/// Runs t_steps time steps and records the trajectory (t = 0..t_steps).
/// Deterministic given the seed.
Trajectory run(const Hypergraph& g, const DiseaseParams& params, const ScalingSpec& spec,
               const NodeStateVector& init, int t_steps, std::uint64_t seed);

}  // namespace hc
