#pragma once

namespace cefacies {

// Digamma function for x > 0, absolute error below 1e-10.
// Throws std::domain_error for x <= 0 or NaN.
double digamma(double x);

}  // namespace cefacies
