#include "imbeval/csv.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

#include "imbeval/detail/format.hpp"

namespace imbeval {

namespace {

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> cells;
  std::string cur;
  for (char c : line) {
    if (c == ',') {
      cells.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  cells.push_back(cur);
  return cells;
}

void strip_cr(std::string& line) {
  if (!line.empty() && line.back() == '\r') line.pop_back();
}

double parse_score_cell(const std::string& cell, std::size_t line, const std::string& column) {
  double value = 0.0;
  const char* begin = cell.data();
  const char* end = begin + cell.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    throw ParseError(line, column, "score cell '" + cell + "' is not a number");
  }
  if (!std::isfinite(value) || value < 0.0 || value > 1.0) {
    throw ParseError(line, column, "score " + cell + " outside [0,1]");
  }
  return value;
}

struct TaskColumns {
  std::string task;
  std::size_t label_index;
  std::size_t score_index;
  std::string label_column;
  std::string score_column;
};

constexpr std::string_view kLabelSuffix = "_label";
constexpr std::string_view kScoreSuffix = "_score";

std::vector<TaskColumns> resolve_columns(const std::vector<std::string>& header,
                                         const PredictionSchema& schema) {
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (!index.emplace(header[i], i).second) {
      throw SchemaError("duplicate column '" + header[i] + "' in header");
    }
  }

  std::vector<TaskColumns> out;
  if (!schema.tasks.empty()) {
    for (const auto& [task, cols] : schema.tasks) {
      auto label_it = index.find(cols.label_column);
      if (label_it == index.end()) {
        throw SchemaError("mapped label column '" + cols.label_column + "' for task '" + task +
                          "' not found in header");
      }
      auto score_it = index.find(cols.score_column);
      if (score_it == index.end()) {
        throw SchemaError("mapped score column '" + cols.score_column + "' for task '" + task +
                          "' not found in header");
      }
      out.push_back({task, label_it->second, score_it->second, cols.label_column,
                     cols.score_column});
    }
    return out;
  }

  // Derive tasks from "<task>_label" / "<task>_score" column pairs.
  for (std::size_t i = 0; i < header.size(); ++i) {
    const std::string& name = header[i];
    if (name.size() > kLabelSuffix.size() && name.ends_with(kLabelSuffix)) {
      std::string task = name.substr(0, name.size() - kLabelSuffix.size());
      std::string score_column = task + std::string(kScoreSuffix);
      auto score_it = index.find(score_column);
      if (score_it == index.end()) {
        throw SchemaError("score column '" + score_column + "' for task '" + task +
                          "' not found in header");
      }
      out.push_back({task, i, score_it->second, name, score_column});
    } else if (name.size() > kScoreSuffix.size() && name.ends_with(kScoreSuffix)) {
      std::string task = name.substr(0, name.size() - kScoreSuffix.size());
      if (index.find(task + std::string(kLabelSuffix)) == index.end()) {
        throw SchemaError("score column '" + name + "' has no matching label column '" + task +
                          std::string(kLabelSuffix) + "'");
      }
    }
  }
  if (out.empty()) {
    throw SchemaError("header declares no '<task>_label'/'<task>_score' column pairs");
  }
  std::sort(out.begin(), out.end(),
            [](const TaskColumns& a, const TaskColumns& b) { return a.task < b.task; });
  return out;
}

void check_tokens(const LabelTokens& t) {
  if (t.positive.empty() || t.negative.empty() || t.uncertain.empty()) {
    throw SchemaError("label tokens must be non-empty (empty cell already means Missing)");
  }
  if (t.positive == t.negative || t.positive == t.uncertain || t.negative == t.uncertain) {
    throw SchemaError("label tokens must be distinct");
  }
}

}  // namespace

RunData parse_predictions(std::istream& in, const PredictionSchema& schema, std::string run_id) {
  check_tokens(schema.tokens);

  std::string line;
  if (!std::getline(in, line)) {
    throw ParseError("input has no header row");
  }
  strip_cr(line);
  if (line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);  // UTF-8 BOM
  const std::vector<std::string> header = split_row(line);
  const std::vector<TaskColumns> columns = resolve_columns(header, schema);

  std::vector<std::vector<LabeledScore>> samples(columns.size());
  std::vector<ExclusionCounts> exclusions(columns.size());

  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    const std::vector<std::string> cells = split_row(line);
    if (cells.size() != header.size()) {
      throw ParseError(line_no, "",
                       "row has " + std::to_string(cells.size()) + " cells, header has " +
                           std::to_string(header.size()));
    }
    for (std::size_t t = 0; t < columns.size(); ++t) {
      const TaskColumns& tc = columns[t];
      const std::string& label_cell = cells[tc.label_index];
      const std::string& score_cell = cells[tc.score_index];

      Label label;
      if (label_cell.empty()) {
        label = Label::Missing;
      } else if (label_cell == schema.tokens.positive) {
        label = Label::Positive;
      } else if (label_cell == schema.tokens.negative) {
        label = Label::Negative;
      } else if (label_cell == schema.tokens.uncertain) {
        label = Label::Uncertain;
      } else {
        throw ParseError(line_no, tc.label_column, "unknown label token '" + label_cell + "'");
      }

      if (label == Label::Positive || label == Label::Negative) {
        if (score_cell.empty()) {
          throw ParseError(line_no, tc.score_column, "labeled row has an empty score cell");
        }
        samples[t].push_back({label, parse_score_cell(score_cell, line_no, tc.score_column)});
        exclusions[t].kept++;
      } else {
        if (!score_cell.empty()) {
          parse_score_cell(score_cell, line_no, tc.score_column);
        }
        if (label == Label::Uncertain) {
          exclusions[t].dropped_uncertain++;
        } else {
          exclusions[t].dropped_missing++;
        }
      }
    }
  }

  RunData run;
  run.run_id = std::move(run_id);
  for (std::size_t t = 0; t < columns.size(); ++t) {
    run.tasks.emplace(columns[t].task, TaskDataset(columns[t].task, samples[t]));
    run.exclusions.emplace(columns[t].task, exclusions[t]);
  }
  return run;
}

RunData parse_predictions_file(const std::filesystem::path& path, const PredictionSchema& schema,
                               std::string run_id) {
  std::ifstream in(path);
  if (!in) {
    throw IoError("cannot open prediction file '" + path.string() + "'");
  }
  if (run_id.empty()) run_id = path.stem().string();
  try {
    return parse_predictions(in, schema, std::move(run_id));
  } catch (const ParseError& e) {
    throw ParseError(std::string(e.what()) + " (in " + path.string() + ")");
  }
}

void write_predictions(const RunData& run, std::ostream& out) {
  std::size_t rows = 0;
  out << "id";
  for (const auto& [task, ds] : run.tasks) {
    if (task.find(',') != std::string::npos || task.find('\n') != std::string::npos) {
      throw ContractError("task name '" + task + "' is not representable in the canonical format");
    }
    out << ',' << task << "_label," << task << "_score";
    rows = std::max(rows, static_cast<std::size_t>(ds.n()));
  }
  out << '\n';

  for (std::size_t row = 0; row < rows; ++row) {
    out << row;
    for (const auto& [task, ds] : run.tasks) {
      if (static_cast<Eigen::Index>(row) < ds.n()) {
        const auto i = static_cast<Eigen::Index>(row);
        out << ',' << (ds.positive(i) ? '1' : '0') << ','
            << detail::format_double(ds.scores()[i]);
      } else {
        out << ",,";
      }
    }
    out << '\n';
  }
}

std::string write_predictions(const RunData& run) {
  std::ostringstream out;
  write_predictions(run, out);
  return out.str();
}

}  // namespace imbeval
