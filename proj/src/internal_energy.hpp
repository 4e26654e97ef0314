#pragma once

#include <cmath>

#include "errors.hpp"

namespace gradflow {

// Internal-energy density H:  f log f (entropy) or f^m/(m-1), m > 1.
class InternalEnergy {
 public:
  static InternalEnergy log_entropy() { return InternalEnergy(true, 0.0); }

  static InternalEnergy power_law(double m) {
    if (!(m > 1.0) || !std::isfinite(m))
      throw InvalidArgumentError("internal energy: power-law exponent must be > 1");
    return InternalEnergy(false, m);
  }

  bool is_log_entropy() const { return log_; }
  double exponent() const { return m_; }

  // H(g); the g -> 0 limit of g log g is 0
  double density_energy(double g) const {
    if (log_) return g > 0.0 ? g * std::log(g) : 0.0;
    return std::pow(g, m_) / (m_ - 1.0);
  }

  // scalar multiplying the whole h-field sum: 1 for entropy, m/(m-1) for power law
  double field_prefactor() const { return log_ ? 1.0 : m_ / (m_ - 1.0); }

  // per-cell factor inside the h-field sum: log g, or g^(m-1)
  double field_weight_from_density(double g) const {
    return std::pow(g, m_ - 1.0);  // power-law branch only
  }

 private:
  InternalEnergy(bool log, double m) : log_(log), m_(m) {}
  bool log_;
  double m_;
};

}  // namespace gradflow
