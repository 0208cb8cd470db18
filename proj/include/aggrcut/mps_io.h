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

#ifndef AGGRCUT_MPS_IO_H_
#define AGGRCUT_MPS_IO_H_

#include <istream>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>

#include "aggrcut/cut_record.h"
#include "aggrcut/instance.h"

namespace aggrcut {

class ParseError : public std::runtime_error {
 public:
  ParseError(int line, const std::string& message)
      : std::runtime_error("line " + std::to_string(line) + ": " + message),
        line_(line) {}

  int line() const { return line_; }

 private:
  int line_;
};

// Reads free-format MPS. Integer columns come from MARKER INTORG/INTEND
// blocks or BV/LI/UI bounds. OBJSENSE MAX negates the objective. The
// returned instance is normalized and has its bound rows marked.
MilpInstance parse_mps(std::istream& in);
MilpInstance read_mps_file(const std::string& path);

// Reads "<name> <value>" lines; '#' starts a comment; absent variables are 0.
PointAssignment parse_solution(std::istream& in, const MilpInstance& instance);
PointAssignment read_solution_file(const std::string& path,
                                   const MilpInstance& instance);

// Writes every variable as "<name> <value>" with round-trip precision.
void write_solution(const PointAssignment& point, const MilpInstance& instance,
                    std::ostream& out);

// One JSON object per line, fixed key order.
void write_cuts(std::span<const CutRecord> cuts, std::ostream& out);

// Shortest decimal text that reads back to the same double.
std::string FormatDouble(double value);

}  // namespace aggrcut

#endif  // AGGRCUT_MPS_IO_H_
