#pragma once

#include <cstddef>
#include <cstdint>

#include "cefacies/dataset.hpp"

namespace cefacies {

struct FixtureConfig {
  std::size_t rows = 1000;
  std::size_t wells = 4;
  std::size_t informative = 3;
  std::size_t noise = 5;
  int classes = 3;
  std::uint64_t seed = 1;
};

/// Labeled table where columns inf_1..inf_m are the class code plus
/// Gaussian noise (noise scale grows with the column index) and columns
/// noise_1..noise_q are drawn independently of the label. Rows are split
/// into contiguous wells W1..Wk with increasing depth; class codes run
/// 1..classes and are drawn uniformly.
FaciesDataset make_informative_fixture(const FixtureConfig& config);

}  // namespace cefacies
