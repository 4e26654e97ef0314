#pragma once

#include <cmath>
#include <vector>

#include "errors.hpp"

namespace gradflow {

// Gauss-Legendre rule mapped to [0,1].  Nodes lie in (0,1), weights sum to 1.
struct GaussLegendre01 {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// Nodes via Newton iteration on the Legendre recurrence.
inline GaussLegendre01 gauss_legendre_01(int n) {
  if (n < 1) throw InvalidArgumentError("gauss_legendre_01: node count must be >= 1");
  GaussLegendre01 rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  const int half = (n + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
    double dp = 1.0;
    for (int it = 0; it < 64; ++it) {
      double p0 = 1.0, p1 = t;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (t * p1 - p0) / (t * t - 1.0);
      const double step = p1 / dp;
      t -= step;
      if (std::abs(step) < 1e-15) break;
    }
    // root t in (0,1]; mirror to fill both halves (descending from +1)
    const double w = 2.0 / ((1.0 - t * t) * dp * dp);
    rule.nodes[i] = 0.5 * (1.0 - t);
    rule.nodes[n - 1 - i] = 0.5 * (1.0 + t);
    rule.weights[i] = 0.5 * w;
    rule.weights[n - 1 - i] = 0.5 * w;
  }
  return rule;
}

}  // namespace gradflow
