#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>

#include "imbeval/dataset.hpp"

namespace imbeval {

// Text forms accepted in label cells. An empty cell is always Missing.
struct LabelTokens {
  std::string positive = "1";
  std::string negative = "0";
  std::string uncertain = "-1";
};

struct ColumnPair {
  std::string label_column;
  std::string score_column;
};

// How to read a prediction table. With an empty task map the columns are
// derived from the header: every "<task>_label" column pairs with its
// "<task>_score" column.
struct PredictionSchema {
  std::map<std::string, ColumnPair> tasks;
  LabelTokens tokens;
};

// Parses a canonical prediction table (comma-separated, '.' decimal
// separator, UTF-8, header row first). Rows whose label cell is Uncertain
// or Missing for a task are excluded from that task's dataset but still
// counted in RunData::exclusions. Score cells are validated whenever
// non-empty; an empty score cell is only legal on excluded rows.
//
// Throws ParseError (bad cell, named by line and column), SchemaError
// (column mapping does not fit the header).
RunData parse_predictions(std::istream& in, const PredictionSchema& schema = {},
                          std::string run_id = {});

// Same, reading from a file; run_id defaults to the file stem.
// Throws IoError if the file cannot be opened.
RunData parse_predictions_file(const std::filesystem::path& path,
                               const PredictionSchema& schema = {},
                               std::string run_id = {});

// Emits the canonical form of a run: header "id,<task>_label,<task>_score,..."
// with tasks in name order, scores in shortest round-trip form, and tasks
// shorter than the longest one padded with empty (Missing) cells.
// parse_predictions() of the output reproduces the RunData exactly.
void write_predictions(const RunData& run, std::ostream& out);
std::string write_predictions(const RunData& run);

}  // namespace imbeval
