// Copyright 2026 The aggrcut Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "aggrcut/mps_io.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <unordered_map>
#include <vector>

#include "json.hpp"

namespace aggrcut {

namespace {

enum class Section {
  kNone,
  kName,
  kObjSense,
  kRows,
  kColumns,
  kRhs,
  kRanges,
  kBounds,
  kEnd,
};

std::vector<std::string> Tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream stream(line);
  std::string token;
  while (stream >> token) tokens.push_back(token);
  return tokens;
}

std::optional<double> ParseNumber(const std::string& text) {
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (begin != end && *begin == '+') ++begin;
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end) {
    // from_chars rejects "inf" spellings used by some writers.
    if (text == "inf" || text == "+inf" || text == "Inf" ||
        text == "Infinity") {
      return kInfinity;
    }
    if (text == "-inf" || text == "-Inf" || text == "-Infinity") {
      return -kInfinity;
    }
    return std::nullopt;
  }
  if (value >= 1e30) return kInfinity;
  if (value <= -1e30) return -kInfinity;
  return value;
}

class MpsReader {
 public:
  MilpInstance Read(std::istream& in) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_number_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '*') continue;
      std::vector<std::string> tokens = Tokenize(line);
      if (tokens.empty()) continue;
      if (!std::isspace(static_cast<unsigned char>(line[0]))) {
        StartSection(tokens);
        if (section_ == Section::kEnd) break;
        continue;
      }
      switch (section_) {
        case Section::kObjSense:
          ReadObjSense(tokens[0]);
          break;
        case Section::kRows:
          ReadRow(tokens);
          break;
        case Section::kColumns:
          ReadColumn(tokens);
          break;
        case Section::kRhs:
          ReadRhs(tokens);
          break;
        case Section::kRanges:
          ReadRange(tokens);
          break;
        case Section::kBounds:
          ReadBound(tokens);
          break;
        default:
          throw ParseError(line_number_, "data line outside of a section");
      }
    }
    if (!seen_rows_) throw ParseError(line_number_, "missing ROWS section");
    if (!seen_columns_) {
      throw ParseError(line_number_, "missing COLUMNS section");
    }
    return Build();
  }

 private:
  void StartSection(const std::vector<std::string>& tokens) {
    const std::string& head = tokens[0];
    if (head == "NAME") {
      section_ = Section::kName;
      if (tokens.size() > 1) name_ = tokens[1];
    } else if (head == "OBJSENSE") {
      section_ = Section::kObjSense;
      if (tokens.size() > 1) ReadObjSense(tokens[1]);
    } else if (head == "ROWS") {
      section_ = Section::kRows;
      seen_rows_ = true;
    } else if (head == "COLUMNS") {
      section_ = Section::kColumns;
      seen_columns_ = true;
    } else if (head == "RHS") {
      section_ = Section::kRhs;
    } else if (head == "RANGES") {
      section_ = Section::kRanges;
    } else if (head == "BOUNDS") {
      section_ = Section::kBounds;
    } else if (head == "ENDATA") {
      section_ = Section::kEnd;
    } else {
      throw ParseError(line_number_, "unknown section '" + head + "'");
    }
  }

  void ReadObjSense(const std::string& token) {
    if (token == "MAX" || token == "MAXIMIZE") {
      maximize_ = true;
    } else if (token == "MIN" || token == "MINIMIZE") {
      maximize_ = false;
    } else {
      throw ParseError(line_number_, "unknown objective sense '" + token + "'");
    }
  }

  void ReadRow(const std::vector<std::string>& tokens) {
    if (tokens.size() < 2) throw ParseError(line_number_, "malformed row line");
    const std::string& type = tokens[0];
    const std::string& name = tokens[1];
    if (row_lookup_.contains(name)) {
      throw ParseError(line_number_, "duplicate row name '" + name + "'");
    }
    if (type == "N") {
      row_lookup_[name] = objective_row_.empty() ? kObjective : kIgnored;
      if (objective_row_.empty()) objective_row_ = name;
      return;
    }
    RawRow row;
    row.name = name;
    if (type == "L") {
      row.sense = RowSense::kLessEqual;
    } else if (type == "G") {
      row.sense = RowSense::kGreaterEqual;
    } else if (type == "E") {
      row.sense = RowSense::kEqual;
    } else {
      throw ParseError(line_number_, "unknown row type '" + type + "'");
    }
    row_lookup_[name] = static_cast<int>(rows_.size());
    rows_.push_back(std::move(row));
  }

  int LookupRow(const std::string& name) const {
    auto it = row_lookup_.find(name);
    if (it == row_lookup_.end()) {
      throw ParseError(line_number_, "unknown row '" + name + "'");
    }
    return it->second;
  }

  double Number(const std::string& text) const {
    std::optional<double> value = ParseNumber(text);
    if (!value.has_value()) {
      throw ParseError(line_number_, "invalid number '" + text + "'");
    }
    return *value;
  }

  int LookupOrAddColumn(const std::string& name) {
    auto [it, inserted] =
        column_lookup_.try_emplace(name, static_cast<int>(variables_.size()));
    if (inserted) {
      Variable v;
      v.name = name;
      v.kind = in_integer_block_ ? VarKind::kInteger : VarKind::kContinuous;
      variables_.push_back(v);
    }
    return it->second;
  }

  void ReadColumn(const std::vector<std::string>& tokens) {
    if (tokens.size() >= 3 && tokens[1] == "'MARKER'") {
      if (tokens[2] == "'INTORG'") {
        in_integer_block_ = true;
      } else if (tokens[2] == "'INTEND'") {
        in_integer_block_ = false;
      } else {
        throw ParseError(line_number_, "unknown marker " + tokens[2]);
      }
      return;
    }
    if (tokens.size() != 3 && tokens.size() != 5) {
      throw ParseError(line_number_, "malformed COLUMNS line");
    }
    const int col = LookupOrAddColumn(tokens[0]);
    for (size_t k = 1; k + 1 < tokens.size(); k += 2) {
      const int row = LookupRow(tokens[k]);
      const double value = Number(tokens[k + 1]);
      if (row == kObjective) {
        variables_[col].objective += value;
      } else if (row >= 0) {
        rows_[row].coefficients.push_back({col, value});
      }
    }
  }

  // RHS and RANGES lines carry an optional leading set name.
  template <typename Fn>
  void ReadPairs(const std::vector<std::string>& tokens, Fn&& apply) {
    size_t start;
    if (tokens.size() == 2 || tokens.size() == 4) {
      start = 0;
    } else if (tokens.size() == 3 || tokens.size() == 5) {
      start = 1;
    } else {
      throw ParseError(line_number_, "malformed RHS/RANGES line");
    }
    for (size_t k = start; k + 1 < tokens.size(); k += 2) {
      apply(LookupRow(tokens[k]), Number(tokens[k + 1]));
    }
  }

  void ReadRhs(const std::vector<std::string>& tokens) {
    ReadPairs(tokens, [this](int row, double value) {
      if (row >= 0) rows_[row].rhs = value;
    });
  }

  void ReadRange(const std::vector<std::string>& tokens) {
    ReadPairs(tokens, [this](int row, double value) {
      if (row < 0) {
        throw ParseError(line_number_, "range on objective row");
      }
      ranges_[row] = value;
    });
  }

  void ReadBound(const std::vector<std::string>& tokens) {
    const std::string& type = tokens[0];
    const bool needs_value = type == "UP" || type == "LO" || type == "FX" ||
                             type == "LI" || type == "UI";
    const bool no_value =
        type == "FR" || type == "MI" || type == "PL" || type == "BV";
    if (!needs_value && !no_value) {
      throw ParseError(line_number_, "unsupported bound type '" + type + "'");
    }
    std::string column;
    double value = 0.0;
    if (needs_value) {
      if (tokens.size() == 4) {
        column = tokens[2];
        value = Number(tokens[3]);
      } else if (tokens.size() == 3) {
        column = tokens[1];
        value = Number(tokens[2]);
      } else {
        throw ParseError(line_number_, "malformed BOUNDS line");
      }
    } else {
      if (tokens.size() == 3 || tokens.size() == 4) {
        column = tokens[2];
      } else if (tokens.size() == 2) {
        column = tokens[1];
      } else {
        throw ParseError(line_number_, "malformed BOUNDS line");
      }
    }
    auto it = column_lookup_.find(column);
    if (it == column_lookup_.end()) {
      throw ParseError(line_number_, "bound on unknown column '" + column + "'");
    }
    Variable& v = variables_[it->second];
    if (type == "UP" || type == "UI") {
      v.upper = value;
      if (value < 0.0 && v.lower == 0.0) v.lower = -kInfinity;
      if (type == "UI") v.kind = VarKind::kInteger;
    } else if (type == "LO" || type == "LI") {
      v.lower = value;
      if (type == "LI") v.kind = VarKind::kInteger;
    } else if (type == "FX") {
      v.lower = value;
      v.upper = value;
    } else if (type == "FR") {
      v.lower = -kInfinity;
      v.upper = kInfinity;
    } else if (type == "MI") {
      v.lower = -kInfinity;
    } else if (type == "PL") {
      v.upper = kInfinity;
    } else if (type == "BV") {
      v.kind = VarKind::kInteger;
      v.lower = 0.0;
      v.upper = 1.0;
    }
  }

  MilpInstance Build() {
    for (const auto& [row, range] : ranges_) {
      RawRow& r = rows_[row];
      const double width = std::abs(range);
      if (r.sense == RowSense::kLessEqual) {
        r.lower = r.rhs - width;
      } else if (r.sense == RowSense::kGreaterEqual) {
        r.lower = r.rhs;
        r.rhs = r.rhs + width;
      } else if (range >= 0.0) {
        r.lower = r.rhs;
        r.rhs = r.rhs + width;
      } else {
        r.lower = r.rhs - width;
      }
      r.sense = RowSense::kRanged;
    }
    MilpInstance instance;
    instance.name = name_;
    instance.variables = std::move(variables_);
    if (maximize_) {
      for (Variable& v : instance.variables) v.objective = -v.objective;
    }
    normalize_variable_bounds(instance.variables);
    instance.rows = normalize_rows(rows_);
    instance.validate();
    mark_bound_rows(instance, detect_variable_bounds(instance));
    return instance;
  }

  static constexpr int kObjective = -1;
  static constexpr int kIgnored = -2;

  int line_number_ = 0;
  Section section_ = Section::kNone;
  bool seen_rows_ = false;
  bool seen_columns_ = false;
  bool maximize_ = false;
  bool in_integer_block_ = false;
  std::string name_;
  std::string objective_row_;
  std::vector<RawRow> rows_;
  std::vector<Variable> variables_;
  std::unordered_map<std::string, int> row_lookup_;
  std::unordered_map<std::string, int> column_lookup_;
  std::unordered_map<int, double> ranges_;
};

}  // namespace

MilpInstance parse_mps(std::istream& in) {
  MpsReader reader;
  return reader.Read(in);
}

MilpInstance read_mps_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
  return parse_mps(in);
}

PointAssignment parse_solution(std::istream& in, const MilpInstance& instance) {
  std::unordered_map<std::string, int> lookup;
  for (int j = 0; j < instance.num_variables(); ++j) {
    lookup.emplace(instance.variables[j].name, j);
  }
  PointAssignment point = PointAssignment::Zero(instance.num_variables());
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (auto hash = line.find('#'); hash != std::string::npos) {
      line.erase(hash);
    }
    std::vector<std::string> tokens = Tokenize(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "=obj=") continue;
    if (tokens.size() < 2) {
      throw ParseError(line_number, "expected '<variable> <value>'");
    }
    auto it = lookup.find(tokens[0]);
    if (it == lookup.end()) {
      throw ParseError(line_number, "unknown variable '" + tokens[0] + "'");
    }
    std::optional<double> value = ParseNumber(tokens[1]);
    if (!value.has_value() || !std::isfinite(*value)) {
      throw ParseError(line_number, "invalid value '" + tokens[1] + "'");
    }
    point(it->second) = *value;
  }
  return point;
}

PointAssignment read_solution_file(const std::string& path,
                                   const MilpInstance& instance) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file '" + path + "'");
  return parse_solution(in, instance);
}

std::string FormatDouble(double value) {
  char buffer[64];
  auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

void write_solution(const PointAssignment& point, const MilpInstance& instance,
                    std::ostream& out) {
  for (int j = 0; j < instance.num_variables(); ++j) {
    out << instance.variables[j].name << ' ' << FormatDouble(point(j)) << '\n';
  }
}

void write_cuts(std::span<const CutRecord> cuts, std::ostream& out) {
  using Json = nlohmann::ordered_json;
  for (const CutRecord& cut : cuts) {
    Json record;
    record["name"] = cut.name;
    record["sense"] = "<=";
    record["rhs"] = cut.rhs;
    record["violation"] = cut.violation;
    Json coefficients = Json::object();
    for (const auto& [var, value] : cut.coefficients) coefficients[var] = value;
    record["coefficients"] = std::move(coefficients);
    record["algorithm"] = AlgorithmName(cut.algorithm);
    record["starting_row"] = cut.starting_row;
    Json used = Json::array();
    for (const auto& [row, factor] : cut.used_rows) {
      used.push_back(Json{{"row", row}, {"factor", factor}});
    }
    record["used_rows"] = std::move(used);
    record["T"] = cut.uncomplemented;
    record["U"] = cut.complemented;
    record["delta"] = cut.delta;
    out << record.dump() << '\n';
  }
  if (!out) throw std::runtime_error("failed to write cut records");
}

}  // namespace aggrcut
