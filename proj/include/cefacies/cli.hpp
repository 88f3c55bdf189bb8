#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cefacies/classifier.hpp"
#include "cefacies/dataset.hpp"
#include "cefacies/selection.hpp"
#include "json.hpp"

namespace cefacies::cli {

enum class Command { Rank, Select, Evaluate, Compare };

struct RunConfig {
  Command command = Command::Rank;
  std::string input;        // CSV path; ignored when `synthetic` is set
  bool synthetic = false;   // use the informative-vs-noise fixture, seeded per run
  std::size_t synthetic_rows = 1000;
  CsvSchema schema{"well", "depth", "facies", {}, MissingPolicy::DropRow, ""};
  std::string adjacency;    // sidecar JSON path, optional
  int k_ce = 3;
  std::optional<SelectionRule> rule;
  ClassifierConfig classifier;
  std::uint64_t seed = 0;
  int seeds = 1;
  bool jitter_label = false;
  std::string out_dir = ".";
  // Execution only: never embedded in reports and never changes results.
  unsigned threads = 1;
};

/// Every report field that can influence results. `threads` is left out so
/// reports are byte-identical across parallelism settings.
nlohmann::json to_json(const RunConfig& config);

std::string command_name(Command command);

/// Each command writes its files into config.out_dir and returns the main
/// JSON document it wrote. Progress text goes to `log` when non-null.
/// Errors surface as InputError (exit 2), DegenerateError (exit 3) or any
/// other exception (exit 1); see exit_code_for().
nlohmann::json cmd_rank(const RunConfig& config, std::ostream* log = nullptr);
nlohmann::json cmd_select(const RunConfig& config, std::ostream* log = nullptr);
nlohmann::json cmd_evaluate(const RunConfig& config, std::ostream* log = nullptr);
nlohmann::json cmd_compare(const RunConfig& config, std::ostream* log = nullptr);

nlohmann::json run(const RunConfig& config, std::ostream* log = nullptr);

int exit_code_for(const std::exception& error);

}  // namespace cefacies::cli
