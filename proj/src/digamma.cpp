#include "cefacies/digamma.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace cefacies {

double digamma(double x) {
  if (!(x > 0.0) || std::isinf(x)) {
    throw std::domain_error("digamma: argument must be positive and finite, got " +
                            std::to_string(x));
  }
  // psi(x) = psi(x + m) - sum_{i<m} 1/(x + i); shift until the asymptotic
  // series is accurate to well under 1e-12.
  double shift = 0.0;
  while (x < 6.0) {
    shift += 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  // Bernoulli terms B_2j / (2j x^2j), j = 1..7, Horner in 1/x^2.
  const double series =
      inv2 * (1.0 / 12 -
              inv2 * (1.0 / 120 -
                      inv2 * (1.0 / 252 -
                              inv2 * (1.0 / 240 -
                                      inv2 * (1.0 / 132 -
                                              inv2 * (691.0 / 32760 - inv2 * (1.0 / 12)))))));
  return std::log(x) - 0.5 * inv - series - shift;
}

}  // namespace cefacies
