#pragma once

#include <functional>
#include <string>

#include "errors.hpp"
#include "vec.hpp"

namespace gradflow {

// Scalar potential with its gradient.  Interaction potentials must be even,
// W(-x) = W(x), which makes the gradient odd with grad W(0) = 0.
template <std::size_t D>
struct Potential {
  std::function<double(const Vec<D>&)> value;
  std::function<Vec<D>(const Vec<D>&)> gradient;
};

template <std::size_t D>
Potential<D> quadratic_potential() {
  return Potential<D>{
      [](const Vec<D>& x) { return 0.5 * norm_sq(x); },
      [](const Vec<D>& x) { return x; },
  };
}

template <std::size_t D>
Potential<D> zero_potential() {
  return Potential<D>{
      [](const Vec<D>&) { return 0.0; },
      [](const Vec<D>&) { return Vec<D>{}; },
  };
}

// Registry used by the scenario layer.
template <std::size_t D>
Potential<D> make_potential(const std::string& name) {
  if (name == "zero") return zero_potential<D>();
  if (name == "quadratic") return quadratic_potential<D>();
  throw InvalidArgumentError("unknown potential: " + name);
}

}  // namespace gradflow
