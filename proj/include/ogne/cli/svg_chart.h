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

#ifndef OGNE_CLI_SVG_CHART_H_
#define OGNE_CLI_SVG_CHART_H_

#include <span>
#include <string>
#include <vector>

namespace ogne::cli {

struct ChartSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;  // non-finite values break the line
};

// Static SVG line chart with axes, ticks and a legend.
std::string render_line_chart(const std::string& title, const std::string& x_label,
                              const std::string& y_label,
                              std::span<const ChartSeries> series);

}  // namespace ogne::cli

#endif  // OGNE_CLI_SVG_CHART_H_
