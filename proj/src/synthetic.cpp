#include "cefacies/synthetic.hpp"

#include <cmath>
#include <random>
#include <string>

#include "cefacies/error.hpp"

namespace cefacies {

FaciesDataset make_informative_fixture(const FixtureConfig& config) {
  if (config.rows < 2 || config.wells < 1 || config.wells > config.rows || config.classes < 2 ||
      config.informative + config.noise == 0) {
    throw DegenerateError("fixture: invalid size configuration");
  }
  std::mt19937_64 rng(config.seed);
  std::uniform_int_distribution<int> pick_class(1, config.classes);
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  const std::size_t n = config.rows;
  std::vector<int> labels(n);
  for (auto& c : labels) c = pick_class(rng);

  std::vector<std::string> wells(n);
  std::vector<double> depth(n);
  const std::size_t per_well = (n + config.wells - 1) / config.wells;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t w = i / per_well;
    wells[i] = "W" + std::to_string(w + 1);
    depth[i] = 1000.0 + 0.5 * static_cast<double>(i - w * per_well);
  }

  std::vector<std::string> names;
  std::vector<std::vector<double>> columns;
  for (std::size_t j = 0; j < config.informative; ++j) {
    const double sigma = 0.2 + 0.1 * static_cast<double>(j);
    std::vector<double> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = labels[i] + sigma * gauss(rng);
    names.push_back("inf_" + std::to_string(j + 1));
    columns.push_back(std::move(col));
  }
  for (std::size_t j = 0; j < config.noise; ++j) {
    std::vector<double> col(n);
    // Alternate marginal shapes; none depends on the label.
    for (std::size_t i = 0; i < n; ++i) {
      switch (j % 3) {
        case 0: col[i] = uniform(rng); break;
        case 1: col[i] = gauss(rng); break;
        default: col[i] = std::exp(gauss(rng)); break;
      }
    }
    names.push_back("noise_" + std::to_string(j + 1));
    columns.push_back(std::move(col));
  }
  return FaciesDataset(std::move(wells), std::move(depth),
                       DataMatrix(std::move(names), std::move(columns)), std::move(labels));
}

}  // namespace cefacies
