// Command-line front end: rank / select / evaluate / compare, plus `synth`
// to write the informative-vs-noise fixture as CSV.

#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "cefacies/cli.hpp"
#include "cefacies/error.hpp"
#include "cefacies/synthetic.hpp"

using cefacies::cli::Command;
using cefacies::cli::RunConfig;

namespace {

struct RuleFlags {
  std::optional<std::size_t> top_k;
  std::optional<double> threshold;
};

void add_run_options(CLI::App* sub, RunConfig& cfg, RuleFlags& rule, bool needs_rule) {
  static const std::map<std::string, cefacies::MissingPolicy> kMissing{
      {"drop", cefacies::MissingPolicy::DropRow},
      {"median", cefacies::MissingPolicy::MedianImputePerWell}};
  static const std::map<std::string, cefacies::Weighting> kWeighting{
      {"uniform", cefacies::Weighting::Uniform},
      {"distance", cefacies::Weighting::InverseDistance}};

  auto* input = sub->add_option("--input", cfg.input, "Well-log CSV file");
  auto* synthetic =
      sub->add_flag("--synthetic", cfg.synthetic, "Use the seeded informative-vs-noise fixture");
  input->excludes(synthetic);
  sub->add_option("--synthetic-rows", cfg.synthetic_rows, "Rows in the synthetic fixture")
      ->check(CLI::Range(std::size_t{2}, std::size_t{10000000}));
  sub->add_option("--well-col", cfg.schema.well_col, "Well id column")->capture_default_str();
  sub->add_option("--depth-col", cfg.schema.depth_col, "Depth column")->capture_default_str();
  sub->add_option("--label-col", cfg.schema.label_col, "Integer facies column")
      ->capture_default_str();
  sub->add_option("--features", cfg.schema.feature_cols,
                  "Comma-separated feature columns (default: all remaining columns)")
      ->delimiter(',');
  sub->add_option("--missing", cfg.schema.missing, "Missing-value policy")
      ->transform(CLI::CheckedTransformer(kMissing, CLI::ignore_case));
  sub->add_option("--missing-token", cfg.schema.missing_token,
                  "Extra token treated as missing (empty cells always are)");
  sub->add_option("--adjacency", cfg.adjacency, "Sidecar JSON with class_names and adjacency")
      ->check(CLI::ExistingFile);
  sub->add_option("--k-ce", cfg.k_ce, "Neighbor order for copula entropy")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--knn", cfg.classifier.k_neighbors, "Neighbors for the facies classifier")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_option("--weighting", cfg.classifier.weighting, "Classifier vote weighting")
      ->transform(CLI::CheckedTransformer(kWeighting, CLI::ignore_case));
  sub->add_option("--seed", cfg.seed, "Seed for every randomized step")->capture_default_str();
  sub->add_option("--seeds", cfg.seeds, "Number of consecutive seeds to run and average")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sub->add_flag("--jitter-label", cfg.jitter_label,
                "Break label ties with seeded noise before ranking");
  sub->add_option("--out-dir", cfg.out_dir, "Directory for reports")->capture_default_str();
  sub->add_option("--threads", cfg.threads, "Worker threads (0 = all cores)")
      ->capture_default_str();
  if (needs_rule) {
    auto* top = sub->add_option("--top-k", rule.top_k, "Keep the m most negative-CE variables")
                    ->check(CLI::PositiveNumber);
    auto* thr = sub->add_option("--threshold", rule.threshold, "Keep variables with CE <= t");
    top->excludes(thr);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Copula-entropy variable ranking and facies classification"};
  app.require_subcommand(1);

  RunConfig cfg;
  RuleFlags rule;
  struct Sub {
    const char* name;
    const char* help;
    Command command;
    bool needs_rule;
  };
  const Sub subs[] = {
      {"rank", "Rank variables by CE against the facies label", Command::Rank, false},
      {"select", "Rank and apply a selection rule", Command::Select, true},
      {"evaluate", "Leave-one-well-out classification with all given features", Command::Evaluate,
       false},
      {"compare", "Classification with all vs CE-selected variables", Command::Compare, true},
  };
  std::map<CLI::App*, Command> commands;
  for (const auto& s : subs) {
    auto* sub = app.add_subcommand(s.name, s.help);
    add_run_options(sub, cfg, rule, s.needs_rule);
    commands[sub] = s.command;
  }

  cefacies::FixtureConfig fixture;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth", "Write the synthetic informative-vs-noise fixture CSV");
  synth->add_option("--out", synth_out, "Output CSV path")->required();
  synth->add_option("--rows", fixture.rows)->capture_default_str();
  synth->add_option("--wells", fixture.wells)->capture_default_str();
  synth->add_option("--informative", fixture.informative)->capture_default_str();
  synth->add_option("--noise", fixture.noise)->capture_default_str();
  synth->add_option("--classes", fixture.classes)->capture_default_str();
  synth->add_option("--seed", fixture.seed)->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (synth->parsed()) {
      const auto data = cefacies::make_informative_fixture(fixture);
      cefacies::write_csv(data, synth_out, cfg.schema);
      std::cout << "wrote " << data.rows() << " rows to " << synth_out << '\n';
      return 0;
    }
    for (const auto& [sub, command] : commands) {
      if (sub->parsed()) cfg.command = command;
    }
    if (rule.top_k) cfg.rule = cefacies::TopK{*rule.top_k};
    if (rule.threshold) cfg.rule = cefacies::Threshold{*rule.threshold};
    cefacies::cli::run(cfg, &std::cout);
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cefacies::cli::exit_code_for(e);
  }
}
