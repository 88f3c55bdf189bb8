#include "cefacies/dataset.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <unordered_map>

#include "json.hpp"

#include "cefacies/error.hpp"

namespace cefacies {

FaciesDataset::FaciesDataset(std::vector<std::string> wells, std::vector<double> depth,
                             DataMatrix features, std::vector<int> labels,
                             std::map<int, std::string> class_names,
                             std::optional<Adjacency> adjacency)
    : wells_(std::move(wells)),
      depth_(std::move(depth)),
      features_(std::move(features)),
      labels_(std::move(labels)),
      class_names_(std::move(class_names)),
      adjacency_(std::move(adjacency)) {
  const std::size_t n = labels_.size();
  if (wells_.size() != n || depth_.size() != n || features_.rows() != n) {
    throw InputError("dataset fields disagree on row count: wells=" + std::to_string(wells_.size()) +
                     " depth=" + std::to_string(depth_.size()) +
                     " features=" + std::to_string(features_.rows()) +
                     " labels=" + std::to_string(n));
  }
  if (class_names_.empty()) {
    for (int c : labels_) class_names_.emplace(c, std::to_string(c));
  }
  for (int c : labels_) {
    if (!class_names_.contains(c)) {
      throw InputError("label " + std::to_string(c) + " has no entry in class_names");
    }
  }
  if (adjacency_) {
    for (const auto& [from, tos] : *adjacency_) {
      for (int to : tos) {
        auto back = adjacency_->find(to);
        if (back == adjacency_->end() || !back->second.contains(from)) {
          throw InputError("adjacency is not symmetric: " + std::to_string(from) + " -> " +
                           std::to_string(to) + " has no reverse entry");
        }
      }
    }
  }
}

std::vector<int> FaciesDataset::classes() const {
  std::set<int> seen(labels_.begin(), labels_.end());
  return {seen.begin(), seen.end()};
}

FaciesDataset FaciesDataset::select_rows(std::span<const std::size_t> rows) const {
  std::vector<std::string> wells;
  std::vector<double> depth;
  std::vector<int> labels;
  wells.reserve(rows.size());
  depth.reserve(rows.size());
  labels.reserve(rows.size());
  for (std::size_t r : rows) {
    wells.push_back(wells_[r]);
    depth.push_back(depth_[r]);
    labels.push_back(labels_[r]);
  }
  return FaciesDataset(std::move(wells), std::move(depth), features_.select_rows(rows),
                       std::move(labels), class_names_, adjacency_);
}

FaciesDataset restrict_features(const FaciesDataset& data, std::span<const std::string> names) {
  if (names.empty()) throw DegenerateError("cannot restrict to an empty variable list");
  std::set<std::string_view> seen;
  for (const auto& name : names) {
    if (!seen.insert(name).second) throw InputError("variable '" + name + "' listed twice");
  }
  return FaciesDataset(data.wells(), data.depth(), data.features().select_columns(names),
                       data.labels(), data.class_names(), data.adjacency());
}

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

// One CSV record, RFC 4180 quoting. Embedded newlines in quoted fields are
// not supported.
std::vector<std::string> split_record(std::string_view line, std::size_t line_no) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char ch = line[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          current.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        current.push_back(ch);
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      fields.push_back(std::move(current));
      current.clear();
    } else {
      current.push_back(ch);
    }
  }
  if (quoted) throw InputError("line " + std::to_string(line_no) + ": unterminated quote");
  fields.push_back(std::move(current));
  return fields;
}

std::string quote_if_needed(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out.push_back('"');
    out.push_back(ch);
  }
  out.push_back('"');
  return out;
}

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  return {buf, end};
}

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t m = values.size() / 2;
  return values.size() % 2 == 1 ? values[m] : 0.5 * (values[m - 1] + values[m]);
}

struct Cell {
  std::optional<double> value;  // nullopt: missing
};

}  // namespace

ClassMetadata load_class_metadata(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open class metadata file '" + path + "'");
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw InputError("class metadata '" + path + "': " + e.what());
  }
  auto code_of = [&](const std::string& key) {
    int code = 0;
    auto [ptr, ec] = std::from_chars(key.data(), key.data() + key.size(), code);
    if (ec != std::errc() || ptr != key.data() + key.size()) {
      throw InputError("class metadata '" + path + "': class code '" + key + "' is not an integer");
    }
    return code;
  };
  ClassMetadata meta;
  try {
    if (doc.contains("class_names")) {
      for (const auto& [key, name] : doc.at("class_names").items()) {
        meta.class_names[code_of(key)] = name.get<std::string>();
      }
    }
    if (doc.contains("adjacency")) {
      Adjacency adjacency;
      for (const auto& [key, codes] : doc.at("adjacency").items()) {
        auto& set = adjacency[code_of(key)];
        for (const auto& c : codes) set.insert(c.get<int>());
      }
      meta.adjacency = std::move(adjacency);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError("class metadata '" + path + "': " + e.what());
  }
  return meta;
}

LoadedDataset load_csv(const std::string& path, const CsvSchema& schema,
                       const ClassMetadata& metadata) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open '" + path + "'");

  std::string line;
  std::size_t line_no = 0;
  if (!std::getline(in, line)) throw InputError("'" + path + "' is empty; a header row is required");
  ++line_no;
  if (line.starts_with("\xEF\xBB\xBF")) line.erase(0, 3);
  std::vector<std::string> header = split_record(line, line_no);
  for (auto& h : header) h = std::string(trim(h));

  auto column_of = [&](const std::string& name, const char* role) {
    auto it = std::find(header.begin(), header.end(), name);
    if (name.empty() || it == header.end()) {
      throw InputError(std::string(role) + " column '" + name + "' not found in header of '" +
                       path + "'");
    }
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t well_idx = column_of(schema.well_col, "well");
  const std::size_t depth_idx = column_of(schema.depth_col, "depth");
  const std::size_t label_idx = column_of(schema.label_col, "label");

  std::vector<std::string> feature_names = schema.feature_cols;
  if (feature_names.empty()) {
    for (const auto& h : header) {
      if (h != schema.well_col && h != schema.depth_col && h != schema.label_col) {
        feature_names.push_back(h);
      }
    }
    if (feature_names.empty()) throw InputError("'" + path + "' has no feature columns");
  }
  std::vector<std::size_t> feature_idx;
  for (const auto& name : feature_names) feature_idx.push_back(column_of(name, "feature"));

  auto is_missing = [&](std::string_view cell) {
    return cell.empty() || (!schema.missing_token.empty() && cell == schema.missing_token);
  };
  auto parse_number = [&](std::string_view cell, const std::string& col) {
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(cell.data(), cell.data() + cell.size(), v);
    if (ec != std::errc() || ptr != cell.data() + cell.size() || !std::isfinite(v)) {
      throw InputError("line " + std::to_string(line_no) + ", column '" + col +
                       "': cannot parse '" + std::string(cell) + "' as a number");
    }
    return v;
  };

  LoadReport report;
  std::vector<std::string> wells;
  std::vector<int> labels;
  // numeric[0] is depth, numeric[1..] are features.
  std::vector<std::vector<Cell>> numeric(1 + feature_idx.size());

  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    ++report.rows_read;
    const auto fields = split_record(line, line_no);
    if (fields.size() != header.size()) {
      throw InputError("line " + std::to_string(line_no) + ": expected " +
                       std::to_string(header.size()) + " fields, found " +
                       std::to_string(fields.size()));
    }
    const auto well = trim(fields[well_idx]);
    const auto label_cell = trim(fields[label_idx]);
    if (is_missing(well) || is_missing(label_cell)) {
      ++report.rows_dropped;
      continue;
    }
    int label = 0;
    auto [ptr, ec] = std::from_chars(label_cell.data(), label_cell.data() + label_cell.size(), label);
    if (ec != std::errc() || ptr != label_cell.data() + label_cell.size()) {
      throw InputError("line " + std::to_string(line_no) + ", column '" + schema.label_col +
                       "': cannot parse '" + std::string(label_cell) + "' as an integer class code");
    }

    std::vector<Cell> row(numeric.size());
    bool any_missing = false;
    for (std::size_t c = 0; c < numeric.size(); ++c) {
      const std::size_t idx = c == 0 ? depth_idx : feature_idx[c - 1];
      const std::string& name = c == 0 ? schema.depth_col : feature_names[c - 1];
      const auto cell = trim(fields[idx]);
      if (is_missing(cell)) {
        any_missing = true;
      } else {
        row[c].value = parse_number(cell, name);
      }
    }
    if (any_missing && schema.missing == MissingPolicy::DropRow) {
      ++report.rows_dropped;
      continue;
    }
    wells.emplace_back(well);
    labels.push_back(label);
    for (std::size_t c = 0; c < numeric.size(); ++c) numeric[c].push_back(row[c]);
  }

  if (labels.empty()) {
    throw InputError("'" + path + "': no rows left after applying the missing-value policy");
  }

  std::vector<std::vector<double>> columns(numeric.size(), std::vector<double>(labels.size()));
  for (std::size_t c = 0; c < numeric.size(); ++c) {
    const std::string& name = c == 0 ? schema.depth_col : feature_names[c - 1];
    std::unordered_map<std::string, std::vector<double>> per_well;
    std::vector<double> all;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (numeric[c][i].value) {
        per_well[wells[i]].push_back(*numeric[c][i].value);
        all.push_back(*numeric[c][i].value);
      }
    }
    std::unordered_map<std::string, double> well_median;
    for (auto& [w, values] : per_well) well_median[w] = median(std::move(values));
    std::optional<double> global;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (numeric[c][i].value) {
        columns[c][i] = *numeric[c][i].value;
        continue;
      }
      auto it = well_median.find(wells[i]);
      if (it != well_median.end()) {
        columns[c][i] = it->second;
      } else {
        // The well never records this log: fall back to the median over all wells.
        if (all.empty()) throw InputError("column '" + name + "' has no observed values");
        if (!global) global = median(all);
        columns[c][i] = *global;
      }
      ++report.cells_imputed;
    }
  }

  std::vector<double> depth = std::move(columns.front());
  columns.erase(columns.begin());
  DataMatrix features(std::move(feature_names), std::move(columns));

  std::map<int, std::string> class_names = metadata.class_names;
  if (class_names.empty()) {
    for (int c : labels) class_names.emplace(c, std::to_string(c));
  }
  return {FaciesDataset(std::move(wells), std::move(depth), std::move(features), std::move(labels),
                        std::move(class_names), metadata.adjacency),
          report};
}

void write_csv(const FaciesDataset& data, const std::string& path, const CsvSchema& schema) {
  std::ofstream out(path);
  if (!out) throw InputError("cannot write '" + path + "'");
  const auto& names = data.features().column_names();
  out << quote_if_needed(schema.well_col) << ',' << quote_if_needed(schema.depth_col) << ','
      << quote_if_needed(schema.label_col);
  for (const auto& name : names) out << ',' << quote_if_needed(name);
  out << '\n';
  for (std::size_t i = 0; i < data.rows(); ++i) {
    out << quote_if_needed(data.wells()[i]) << ',' << format_double(data.depth()[i]) << ','
        << data.labels()[i];
    for (std::size_t j = 0; j < names.size(); ++j) out << ',' << format_double(data.features()(i, j));
    out << '\n';
  }
  if (!out) throw InputError("failed writing '" + path + "'");
}

}  // namespace cefacies
