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

#ifndef AGGRCUT_CUT_RECORD_H_
#define AGGRCUT_CUT_RECORD_H_

#include <string>
#include <utility>
#include <vector>

namespace aggrcut {

enum class Algorithm { kMw, kLasso };

inline const char* AlgorithmName(Algorithm a) {
  return a == Algorithm::kMw ? "mw" : "lasso";
}

// A cut in original variable space, sense always <=.
struct CutRecord {
  std::string name;
  std::vector<std::pair<std::string, double>> coefficients;
  double rhs = 0.0;
  double violation = 0.0;

  Algorithm algorithm = Algorithm::kMw;
  std::string starting_row;
  std::vector<std::pair<std::string, double>> used_rows;
  std::vector<std::string> complemented;    // U
  std::vector<std::string> uncomplemented;  // T
  double delta = 1.0;
};

}  // namespace aggrcut

#endif  // AGGRCUT_CUT_RECORD_H_
