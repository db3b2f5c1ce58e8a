// Copyright 2026 The ogne Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef OGNE_CSV_H_
#define OGNE_CSV_H_

#include <string>
#include <string_view>
#include <vector>

namespace ogne {

// Shortest representation that parses back to the same double; "nan" and
// "inf"/"-inf" for non-finite values.
std::string FormatDouble(double v);
double ParseDouble(std::string_view s);

std::vector<std::string> SplitCsvLine(std::string_view line);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int Column(std::string_view name) const;  // -1 when absent
};

CsvTable ReadCsv(const std::string& path);

// Writes `contents` to a sibling temp file, then renames it over `path`.
void WriteFileAtomic(const std::string& path, const std::string& contents);

}  // namespace ogne

#endif  // OGNE_CSV_H_
