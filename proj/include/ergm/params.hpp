#pragma once

#include <cmath>

#include "ergm/errors.hpp"

namespace ergm {

// Couplings of the two-parameter model
//   P(G) ~ exp(n^2 [beta1 t(edge, G) + beta2 t(H2, G)])
// with t the homomorphism density. beta2 < 0 is the repulsive regime.
struct Params {
  double beta1 = 0.0;
  double beta2 = 0.0;

  void validate() const {
    if (!std::isfinite(beta1) || !std::isfinite(beta2))
      throw ValidationError("parameters must be finite");
  }
  friend bool operator==(const Params&, const Params&) = default;
};

// Converts couplings written against the Strauss densities e = E/n^2 and
// t = T/n^3 (E edges, T triangles) to the homomorphism-density convention
// used everywhere else. t(edge, G) = 2e and t(triangle, G) = 6t.
inline Params from_strauss_densities(double beta1_strauss, double beta2_strauss) {
  return {beta1_strauss / 2.0, beta2_strauss / 6.0};
}

// Same, starting from the raw per-edge and per-triangle weights
// alpha1 * E + alpha2 * T on n nodes.
inline Params from_strauss_counts(double alpha1, double alpha2, int n) {
  return from_strauss_densities(alpha1, alpha2 * n);
}

inline double logistic(double x) {
  if (x >= 0) return 1.0 / (1.0 + std::exp(-x));
  const double e = std::exp(x);
  return e / (1.0 + e);
}

}  // namespace ergm
