#include "cefacies/cli.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cefacies/cross_validation.hpp"
#include "cefacies/error.hpp"
#include "cefacies/synthetic.hpp"

namespace cefacies::cli {

namespace {

struct Source {
  FaciesDataset data;
  std::optional<LoadReport> load;
};

ClassMetadata metadata_for(const RunConfig& config) {
  return config.adjacency.empty() ? ClassMetadata{} : load_class_metadata(config.adjacency);
}

Source load_source(const RunConfig& config, std::uint64_t run_seed) {
  const auto meta = metadata_for(config);
  if (config.synthetic) {
    FixtureConfig fixture;
    fixture.rows = config.synthetic_rows;
    fixture.seed = run_seed;
    auto data = make_informative_fixture(fixture);
    if (!meta.class_names.empty() || meta.adjacency) {
      data = FaciesDataset(data.wells(), data.depth(), data.features(), data.labels(),
                           meta.class_names, meta.adjacency);
    }
    if (!config.schema.feature_cols.empty()) data = restrict_features(data, config.schema.feature_cols);
    return {std::move(data), std::nullopt};
  }
  if (config.input.empty()) throw InputError("no input: pass --input <csv> or --synthetic");
  auto loaded = load_csv(config.input, config.schema, meta);
  return {std::move(loaded.data), loaded.report};
}

RankOptions rank_options(const RunConfig& config, std::uint64_t run_seed) {
  RankOptions options;
  options.k = config.k_ce;
  if (config.jitter_label) options.jitter_seed = run_seed;
  options.threads = config.threads;
  return options;
}

nlohmann::json to_json(const std::optional<LoadReport>& report) {
  if (!report) return nullptr;
  return {{"rows_read", report->rows_read},
          {"rows_dropped", report->rows_dropped},
          {"cells_imputed", report->cells_imputed}};
}

std::filesystem::path prepare_out_dir(const RunConfig& config) {
  std::filesystem::path dir(config.out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw InputError("cannot create output directory '" + config.out_dir + "': " + ec.message());
  return dir;
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  out << text;
  if (!out) throw InputError("failed writing '" + path.string() + "'");
}

void write_json(const std::filesystem::path& path, const nlohmann::json& doc) {
  write_text(path, doc.dump(2) + "\n");
}

std::string format_ce(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

void print_ranking(const VariableRanking& ranking, std::ostream* log) {
  if (!log) return;
  std::size_t width = 4;
  for (const auto& e : ranking.entries()) width = std::max(width, e.name.size());
  *log << "rank  " << std::string(width - 4, ' ') << "name  ce(nats)\n";
  std::size_t pos = 1;
  for (const auto& e : ranking.entries()) {
    char idx[16];
    std::snprintf(idx, sizeof(idx), "%4zu  ", pos++);
    *log << idx << std::string(width - e.name.size(), ' ') << e.name << "  " << format_ce(e.ce)
         << '\n';
  }
}

const SelectionRule& require_rule(const RunConfig& config) {
  if (!config.rule) throw InputError("a selection rule is required: pass --top-k or --threshold");
  return *config.rule;
}

}  // namespace

std::string command_name(Command command) {
  switch (command) {
    case Command::Rank: return "rank";
    case Command::Select: return "select";
    case Command::Evaluate: return "evaluate";
    case Command::Compare: return "compare";
  }
  return "unknown";
}

nlohmann::json to_json(const RunConfig& config) {
  const auto& s = config.schema;
  return {
      {"command", command_name(config.command)},
      {"input", config.synthetic ? nlohmann::json(nullptr) : nlohmann::json(config.input)},
      {"synthetic", config.synthetic},
      {"synthetic_rows", config.synthetic ? nlohmann::json(config.synthetic_rows) : nlohmann::json(nullptr)},
      {"schema",
       {{"well_col", s.well_col},
        {"depth_col", s.depth_col},
        {"label_col", s.label_col},
        {"feature_cols", s.feature_cols},
        {"missing", s.missing == MissingPolicy::DropRow ? "drop" : "median"},
        {"missing_token", s.missing_token}}},
      {"adjacency", config.adjacency.empty() ? nlohmann::json(nullptr) : nlohmann::json(config.adjacency)},
      {"k_ce", config.k_ce},
      {"rule", config.rule ? cefacies::to_json(*config.rule) : nlohmann::json(nullptr)},
      {"classifier", cefacies::to_json(config.classifier)},
      {"seed", config.seed},
      {"seeds", config.seeds},
      {"jitter_label", config.jitter_label},
      {"out_dir", config.out_dir},
  };
}

nlohmann::json cmd_rank(const RunConfig& config, std::ostream* log) {
  const auto source = load_source(config, config.seed);
  const auto ranking = rank_variables(source.data, rank_options(config, config.seed));

  const auto dir = prepare_out_dir(config);
  nlohmann::json doc = {{"config", to_json(config)},
                        {"load", to_json(source.load)},
                        {"ranking", cefacies::to_json(ranking)}};
  write_json(dir / "ranking.json", doc);
  std::ostringstream csv;
  csv << "name,ce\n";
  for (const auto& e : ranking.entries()) csv << e.name << ',' << nlohmann::json(e.ce).dump() << '\n';
  write_text(dir / "ranking.csv", csv.str());

  print_ranking(ranking, log);
  return doc;
}

nlohmann::json cmd_select(const RunConfig& config, std::ostream* log) {
  const auto& rule = require_rule(config);
  const auto source = load_source(config, config.seed);
  const auto ranking = rank_variables(source.data, rank_options(config, config.seed));
  const auto selected = select(ranking, rule);

  const auto dir = prepare_out_dir(config);
  nlohmann::json doc = {{"config", to_json(config)},
                        {"load", to_json(source.load)},
                        {"ranking", cefacies::to_json(ranking)},
                        {"selected", selected}};
  write_json(dir / "selection.json", doc);

  print_ranking(ranking, log);
  if (log) {
    *log << "selected (" << selected.size() << "):";
    for (const auto& name : selected) *log << ' ' << name;
    *log << (selected.empty() ? " none (empty selection)\n" : "\n");
  }
  return doc;
}

nlohmann::json cmd_evaluate(const RunConfig& config, std::ostream* log) {
  const auto source = load_source(config, config.seed);
  const auto report = grouped_cv(source.data, config.classifier, std::nullopt, {config.threads});

  const auto dir = prepare_out_dir(config);
  nlohmann::json doc = {{"config", to_json(config)},
                        {"load", to_json(source.load)},
                        {"features", source.data.features().column_names()},
                        {"report", cefacies::to_json(report)}};
  write_json(dir / "evaluate.json", doc);
  if (log) {
    *log << "leave-one-well-out accuracy " << report.accuracy << ", macro-F1 " << report.macro_f1
         << " over " << report.fold_breakdown.size() << " wells\n";
  }
  return doc;
}

nlohmann::json cmd_compare(const RunConfig& config, std::ostream* log) {
  const auto& rule = require_rule(config);
  if (config.seeds < 1) throw DegenerateError("--seeds must be at least 1");

  std::optional<Source> file_source;
  if (!config.synthetic) file_source = load_source(config, config.seed);

  auto runs = nlohmann::json::array();
  std::ostringstream csv;
  csv << "seed,accuracy_all,accuracy_selected,macro_f1_all,macro_f1_selected,n_selected\n";
  double delta_sum = 0.0;
  for (int s = 0; s < config.seeds; ++s) {
    const std::uint64_t run_seed = config.seed + static_cast<std::uint64_t>(s);
    const Source source = file_source ? *file_source : load_source(config, run_seed);
    const auto ranking = rank_variables(source.data, rank_options(config, run_seed));
    const auto selected = select(ranking, rule);
    if (selected.empty()) {
      throw DegenerateError("empty selection: no variable satisfies the rule (seed " +
                            std::to_string(run_seed) + ")");
    }
    const CvOptions cv{config.threads};
    const auto all = grouped_cv(source.data, config.classifier, std::nullopt, cv);
    const auto subset = grouped_cv(source.data, config.classifier, selected, cv);
    const double delta = subset.accuracy - all.accuracy;
    delta_sum += delta;

    runs.push_back({{"seed", run_seed},
                    {"load", to_json(source.load)},
                    {"ranking", cefacies::to_json(ranking)},
                    {"selected", selected},
                    {"all_features", cefacies::to_json(all)},
                    {"selected_features", cefacies::to_json(subset)},
                    {"accuracy_delta", delta}});
    csv << run_seed << ',' << nlohmann::json(all.accuracy).dump() << ','
        << nlohmann::json(subset.accuracy).dump() << ',' << nlohmann::json(all.macro_f1).dump()
        << ',' << nlohmann::json(subset.macro_f1).dump() << ',' << selected.size() << '\n';
    if (log) {
      *log << "seed " << run_seed << ": " << selected.size() << "/" << ranking.size()
           << " variables, accuracy all " << all.accuracy << " selected " << subset.accuracy
           << " delta " << delta << '\n';
    }
  }

  const auto dir = prepare_out_dir(config);
  const double mean_delta = delta_sum / config.seeds;
  nlohmann::json doc = {{"config", to_json(config)},
                        {"runs", runs},
                        {"mean_accuracy_delta", mean_delta}};
  write_json(dir / "compare.json", doc);
  write_text(dir / "compare.csv", csv.str());
  if (log) *log << "mean accuracy delta (selected - all): " << mean_delta << '\n';
  return doc;
}

nlohmann::json run(const RunConfig& config, std::ostream* log) {
  switch (config.command) {
    case Command::Rank: return cmd_rank(config, log);
    case Command::Select: return cmd_select(config, log);
    case Command::Evaluate: return cmd_evaluate(config, log);
    case Command::Compare: return cmd_compare(config, log);
  }
  throw std::logic_error("unknown command");
}

int exit_code_for(const std::exception& error) {
  if (dynamic_cast<const InputError*>(&error)) return 2;
  if (dynamic_cast<const DegenerateError*>(&error)) return 3;
  return 1;
}

}  // namespace cefacies::cli
