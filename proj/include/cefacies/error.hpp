#pragma once

#include <stdexcept>
#include <string>

namespace cefacies {

// Malformed input: bad schema, unparseable cells, unknown column names.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Well-formed input that admits no meaningful answer (constant label,
// single well, empty selection, k too large for the sample).
class DegenerateError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cefacies
