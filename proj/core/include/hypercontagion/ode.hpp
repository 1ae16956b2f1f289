#pragma once

#include <cstdint>
#include <vector>

#include "hypercontagion/contagion.hpp"

namespace hc {

/// Homogeneous-mixing compartmental model rates (per unit time).
struct OdeParams {
  double beta = 3e-4;
  double mu = 0.075;
  double alpha = 0.006;
  std::uint32_t n = 500;

  void validate() const;
};

struct OdeState {
  double s = 0.0;
  double i = 0.0;
  double r = 0.0;
};

struct OdePoint {
  double t;
  OdeState state;
};

/// dS = -beta*S*I + mu*I, dI = beta*S*I - mu*I - alpha*I, dR = alpha*I.
OdeState ode_rhs(const OdeState& state, const OdeParams& params);

/// Fixed-step RK4 from t = 0 to t_end. Conservation |S+I+R - N| <= 1e-9 N is
/// enforced at every output point.
std::vector<OdePoint> integrate(const OdeParams& params, const OdeState& init,
                                double t_end, double dt);

/// Discretization of the ODE rates onto per-iteration probabilities with
/// resolution m: beta_abm = N(N-1)/2 * beta * dt, mu_abm = mu * dt,
/// alpha_abm = alpha * dt, dt = 1/m. Throws if any probability exceeds 1.
DiseaseParams abm_params_from_ode(const OdeParams& params, int m, double k_gamma = 0.0);

/// Simplicial-contagion equivalence: k_gamma = (beta + beta_delta) / (2 beta).
double kgamma_from_scm(double beta, double beta_delta);

}  // namespace hc
