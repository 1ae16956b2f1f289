#pragma once

#include <cmath>
#include <stdexcept>

namespace hc {

enum class ScalingKind { TrueForm, ScaleMisspec, FormMisspec };

/// Selects the amplification curve used when evaluating hyperedge infection
/// probabilities: the true piecewise-linear form, a scale-misspecified
/// variant (eta) or a form-misspecified variant (exponent n).
struct ScalingSpec {
  ScalingKind kind = ScalingKind::TrueForm;
  double eta = 1.0;  // ScaleMisspec only, > 0
  int n = 1;         // FormMisspec only, >= 1

  static ScalingSpec true_form() { return {}; }
  static ScalingSpec scale_misspec(double eta) {
    return {ScalingKind::ScaleMisspec, eta, 1};
  }
  static ScalingSpec form_misspec(int n) { return {ScalingKind::FormMisspec, 1.0, n}; }

  void validate() const {
    if (kind == ScalingKind::ScaleMisspec && !(eta > 0.0))
      throw std::invalid_argument("ScalingSpec: eta must be > 0");
    if (kind == ScalingKind::FormMisspec && n < 1)
      throw std::invalid_argument("ScalingSpec: n must be >= 1");
  }

  bool operator==(const ScalingSpec&) const = default;
};

/// Amplification factor f(p) for infected fraction p among an edge's other
/// members. k_gamma caps the amplification: f(1) = 1 + 2 k_gamma.
inline double scaling_f(double p, double k_gamma, const ScalingSpec& spec = {}) {
  if (!(p >= 0.0 && p <= 1.0))
    throw std::domain_error("scaling_f: p must lie in [0, 1]");
  switch (spec.kind) {
    case ScalingKind::TrueForm:
      return p < 0.5 ? 2.0 * p : 1.0 + 2.0 * k_gamma * (2.0 * p - 1.0);
    case ScalingKind::ScaleMisspec:
      return p < 0.5 ? 2.0 * p : 1.0 + 2.0 * k_gamma * spec.eta * (2.0 * p - 1.0);
    case ScalingKind::FormMisspec:
      return p < 0.5 ? std::pow(2.0 * p, 1.0 / spec.n)
                     : 1.0 + 2.0 * k_gamma * std::pow(2.0 * p - 1.0, spec.n);
  }
  return 0.0;  // unreachable
}

}  // namespace hc
