#include "hypercontagion/contagion.hpp"

#include <algorithm>
#include <cassert>
#include <numeric>
#include <stdexcept>
#include <string>

namespace hc {

void DiseaseParams::validate() const {
  const auto in_unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!in_unit(beta)) throw std::invalid_argument("DiseaseParams: beta must lie in [0, 1]");
  if (!in_unit(mu)) throw std::invalid_argument("DiseaseParams: mu must lie in [0, 1]");
  if (!in_unit(alpha)) throw std::invalid_argument("DiseaseParams: alpha must lie in [0, 1]");
  if (mu + alpha > 1.0)
    throw std::invalid_argument("DiseaseParams: mu + alpha must not exceed 1");
  if (!(k_gamma >= 0.0)) throw std::invalid_argument("DiseaseParams: k_gamma must be >= 0");
  if (m < 1) throw std::invalid_argument("DiseaseParams: m must be >= 1");
}

double edge_infection_prob(std::span<const NodeId> edge, const NodeStateVector& states,
                           double beta, double k_gamma, const ScalingSpec& spec) {
  int n_infected = 0, n_susceptible = 0;
  for (NodeId v : edge) {
    n_infected += states[v] == Compartment::Infected;
    n_susceptible += states[v] == Compartment::Susceptible;
  }
  if (n_infected == 0 || n_susceptible == 0) return 0.0;
  const int k = static_cast<int>(edge.size()) - 1;
  const double p = static_cast<double>(n_infected) / k;
  return std::min(scaling_f(p, k_gamma, spec) * n_infected * beta, 1.0);
}

std::uint32_t count_compartment(const NodeStateVector& states, Compartment c) {
  std::uint32_t count = 0;
  for (Compartment s : states) count += s == c;
  return count;
}

NodeStateVector make_initial_states(std::uint32_t n_nodes, std::uint32_t n_infected,
                                    Rng& rng) {
  if (n_infected > n_nodes)
    throw std::invalid_argument("make_initial_states: more infected than nodes");
  NodeStateVector states(n_nodes, Compartment::Susceptible);
  std::vector<NodeId> ids(n_nodes);
  std::iota(ids.begin(), ids.end(), 0u);
  // Partial Fisher-Yates; the first n_infected slots form a uniform sample.
  for (std::uint32_t j = 0; j < n_infected; ++j) {
    const std::size_t pick = j + uniform_index(rng, n_nodes - j);
    std::swap(ids[j], ids[pick]);
    states[ids[j]] = Compartment::Infected;
  }
  return states;
}

Simulation::Simulation(const Hypergraph& g, const DiseaseParams& params,
                       const ScalingSpec& spec, NodeStateVector init, Rng rng)
    : g_(&g), params_(params), spec_(spec), states_(std::move(init)), rng_(rng) {
  params_.validate();
  spec_.validate();
  if (states_.size() != g.n_nodes())
    throw std::invalid_argument("Simulation: state vector length must equal node count");
  for (NodeId v = 0; v < states_.size(); ++v) {
    switch (states_[v]) {
      case Compartment::Susceptible: ++n_s_; break;
      case Compartment::Infected: ++n_i_; infected_.push_back(v); break;
      case Compartment::Removed: ++n_r_; break;
    }
  }
  rebuild_edge_prob_table();
}

void Simulation::rebuild_edge_prob_table() {
  edge_prob_.assign(g_->max_order(), {});
  for (int k = 1; k <= g_->max_order(); ++k) {
    auto& row = edge_prob_[k - 1];
    row.resize(k + 1);
    for (int ni = 0; ni <= k; ++ni)
      row[ni] = std::min(
          scaling_f(static_cast<double>(ni) / k, params_.k_gamma, spec_) * ni * params_.beta,
          1.0);
  }
}

void Simulation::set_beta(double beta) {
  params_.beta = beta;
  params_.validate();
  rebuild_edge_prob_table();
}

void Simulation::set_hypergraph(const Hypergraph& g) {
  if (g.n_nodes() != states_.size())
    throw std::invalid_argument("Simulation: replacement hypergraph must keep the node count");
  g_ = &g;
  rebuild_edge_prob_table();
}

void Simulation::iterate_once() {
  const std::size_t total = g_->total_edges();
  if (total == 0) throw std::runtime_error("iterate_once: hypergraph has no hyperedges");

  // (a) uniform hyperedge over the union of all orders
  const auto [order, members] = g_->edge_at(uniform_index(rng_, total));

  // (b) infection attempts against the pre-iteration state
  fresh_.clear();
  int n_infected = 0, n_susceptible = 0;
  for (NodeId v : members) {
    n_infected += states_[v] == Compartment::Infected;
    n_susceptible += states_[v] == Compartment::Susceptible;
  }
  if (n_infected > 0 && n_susceptible > 0) {
    const double edge_prob = edge_prob_[order - 1][n_infected];
    if (edge_prob > 0.0) {
      for (NodeId v : members)
        if (states_[v] == Compartment::Susceptible && uniform_double(rng_) < edge_prob)
          fresh_.push_back(v);
    }
  }

  // (c) recovery/removal of nodes infected before (b); one draw per node
  if (params_.mu + params_.alpha > 0.0 && !infected_.empty()) {
    std::size_t keep = 0;
    for (NodeId v : infected_) {
      const double u = uniform_double(rng_);
      if (u < params_.mu) {
        states_[v] = Compartment::Susceptible;
        --n_i_;
        ++n_s_;
      } else if (u < params_.mu + params_.alpha) {
        states_[v] = Compartment::Removed;
        --n_i_;
        ++n_r_;
      } else {
        infected_[keep++] = v;
      }
    }
    infected_.resize(keep);
  }

  if (!fresh_.empty()) {
    for (NodeId v : fresh_) states_[v] = Compartment::Infected;
    n_i_ += static_cast<std::uint32_t>(fresh_.size());
    n_s_ -= static_cast<std::uint32_t>(fresh_.size());
    const auto mid = static_cast<std::ptrdiff_t>(infected_.size());
    infected_.insert(infected_.end(), fresh_.begin(), fresh_.end());
    std::inplace_merge(infected_.begin(), infected_.begin() + mid, infected_.end());
  }
  assert(n_s_ + n_i_ + n_r_ == states_.size());
}

void Simulation::step() {
  for (int i = 0; i < params_.m; ++i) iterate_once();
}

void iterate_once(NodeStateVector& states, const Hypergraph& g, const DiseaseParams& params,
                  const ScalingSpec& spec, Rng& rng) {
  Simulation sim(g, params, spec, std::move(states), rng);
  sim.iterate_once();
  states = sim.states();
  rng = sim.rng();
}

void step(NodeStateVector& states, const Hypergraph& g, const DiseaseParams& params,
          const ScalingSpec& spec, Rng& rng) {
  Simulation sim(g, params, spec, std::move(states), rng);
  sim.step();
  states = sim.states();
  rng = sim.rng();
}

Trajectory run(const Hypergraph& g, const DiseaseParams& params, const ScalingSpec& spec,
               const NodeStateVector& init, int t_steps, std::uint64_t seed) {
  if (t_steps < 1) throw std::invalid_argument("run: t_steps must be >= 1");
  Simulation sim(g, params, spec, init, make_rng(seed, 0, kChannelSystemK));
  Trajectory trajectory;
  trajectory.n_nodes = g.n_nodes();
  trajectory.records.reserve(t_steps + 1);
  const auto record = [&](int t) {
    TrajectoryRecord rec;
    rec.t = t;
    rec.s = sim.n_susceptible();
    rec.i = sim.n_infected();
    rec.r = sim.n_removed();
    trajectory.records.push_back(rec);
  };
  record(0);
  for (int t = 1; t <= t_steps; ++t) {
    sim.step();
    record(t);
  }
  return trajectory;
}

}  // namespace hc
