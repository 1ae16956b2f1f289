#include "hypercontagion/ode.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace hc {

void OdeParams::validate() const {
  if (!(beta >= 0.0)) throw std::invalid_argument("OdeParams: beta must be >= 0");
  if (!(mu >= 0.0)) throw std::invalid_argument("OdeParams: mu must be >= 0");
  if (!(alpha >= 0.0)) throw std::invalid_argument("OdeParams: alpha must be >= 0");
  if (n < 1) throw std::invalid_argument("OdeParams: population must be >= 1");
}

OdeState ode_rhs(const OdeState& state, const OdeParams& params) {
  const double infections = params.beta * state.s * state.i;
  return {
      -infections + params.mu * state.i,
      infections - params.mu * state.i - params.alpha * state.i,
      params.alpha * state.i,
  };
}

namespace {

OdeState axpy(const OdeState& x, double a, const OdeState& d) {
  return {x.s + a * d.s, x.i + a * d.i, x.r + a * d.r};
}

}  // namespace

std::vector<OdePoint> integrate(const OdeParams& params, const OdeState& init,
                                double t_end, double dt) {
  params.validate();
  if (!(dt > 0.0)) throw std::invalid_argument("integrate: dt must be > 0");
  if (!(t_end > 0.0)) throw std::invalid_argument("integrate: t_end must be > 0");
  const auto n_steps = static_cast<std::int64_t>(std::llround(t_end / dt));
  if (n_steps < 1) throw std::invalid_argument("integrate: t_end shorter than one step");

  const double population = static_cast<double>(params.n);
  const double tolerance = 1e-9 * population;
  const auto check = [&](const OdeState& x, double t) {
    if (std::abs(x.s + x.i + x.r - population) > tolerance)
      throw std::runtime_error("integrate: conservation violated at t = " + std::to_string(t));
    if (x.s < -tolerance || x.i < -tolerance || x.r < -tolerance)
      throw std::runtime_error("integrate: negative population at t = " + std::to_string(t));
  };

  std::vector<OdePoint> series;
  series.reserve(n_steps + 1);
  OdeState x = init;
  check(x, 0.0);
  series.push_back({0.0, x});
  for (std::int64_t step = 1; step <= n_steps; ++step) {
    const OdeState k1 = ode_rhs(x, params);
    const OdeState k2 = ode_rhs(axpy(x, dt / 2, k1), params);
    const OdeState k3 = ode_rhs(axpy(x, dt / 2, k2), params);
    const OdeState k4 = ode_rhs(axpy(x, dt, k3), params);
    x = {x.s + dt / 6 * (k1.s + 2 * k2.s + 2 * k3.s + k4.s),
         x.i + dt / 6 * (k1.i + 2 * k2.i + 2 * k3.i + k4.i),
         x.r + dt / 6 * (k1.r + 2 * k2.r + 2 * k3.r + k4.r)};
    const double t = static_cast<double>(step) * dt;
    check(x, t);
    series.push_back({t, x});
  }
  return series;
}

DiseaseParams abm_params_from_ode(const OdeParams& params, int m, double k_gamma) {
  params.validate();
  if (m < 1) throw std::invalid_argument("abm_params_from_ode: m must be >= 1");
  const double dt = 1.0 / m;
  const double pairs = static_cast<double>(params.n) * (params.n - 1.0) / 2.0;

  DiseaseParams abm;
  abm.beta = pairs * params.beta * dt;
  abm.mu = params.mu * dt;
  abm.alpha = params.alpha * dt;
  abm.k_gamma = k_gamma;
  abm.m = m;
  if (abm.beta > 1.0 || abm.mu > 1.0 || abm.alpha > 1.0 || abm.mu + abm.alpha > 1.0)
    throw std::invalid_argument(
        "abm_params_from_ode: resolution too coarse, probabilities exceed 1; increase m");
  abm.validate();
  return abm;
}

double kgamma_from_scm(double beta, double beta_delta) {
  if (!(beta > 0.0)) throw std::invalid_argument("kgamma_from_scm: beta must be > 0");
  if (!(beta_delta >= 0.0))
    throw std::invalid_argument("kgamma_from_scm: beta_delta must be >= 0");
  return (beta + beta_delta) / (2.0 * beta);
}

}  // namespace hc
