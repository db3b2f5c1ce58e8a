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

#ifndef OGNE_REPORT_H_
#define OGNE_REPORT_H_

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ogne/engine.h"
#include "ogne/metrics.h"
#include "ogne/vgne.h"

namespace ogne {

// Per-round lemma slacks (bound minus measured value, minimised over
// players). NaN marks a monitor that is disabled or not applicable.
struct MonitorSlacks {
  double lemma1;
  double lemma2_i;
  double lemma2_ii;
  double lemma2_iii;
  double lemma2_iv;
};

struct MonitorSettings {
  bool lemma1 = true;
  bool lemma2_i = true;
  bool lemma2_ii = true;
  bool lemma2_iii = true;
  bool lemma2_iv = true;
};

struct ReportRow {
  int t = 0;
  double gamma = 0.0;
  Vector actions;           // x(t), stacked
  Vector multiplier_norms;  // ||y_i(t)||
  Vector regret;            // cumulative R_i(t); NaN when unavailable
  double violation = 0.0;   // R_g(t)
  double deviation = 0.0;   // Theta_t; NaN without an oracle trace
  double max_estimate_error = 0.0;
  double max_multiplier_disagreement = 0.0;
  MonitorSlacks slack{};
};

struct MonitorEvent {
  std::string monitor;
  int t = 0;
  double slack = 0.0;
};

struct ReportSummary {
  int rounds = 0;
  int n = 0;
  int m = 0;
  int r = 0;
  std::string game;
  std::string rate;
  bool cheap_mode = true;
  std::vector<double> average_regret;  // R_i(T)/T
  double average_violation = 0.0;      // R_g(T)/T
  std::vector<double> regret_slope;    // NaN when not computable
  double violation_slope = 0.0;
  std::optional<double> theta;
  std::optional<double> theta_t;  // Theta_T
  Kappas kappas;
  double lambda = 0.0;
  double sigma2 = 0.0;
  bool sigma2_degenerate = false;
  std::optional<LemmaConstants> constants;
  std::optional<double> reference_deviation;  // Cournot only
  int monitor_violations = 0;
  bool hard_failure = false;
  bool lemma2_squared_applicable = true;
};

struct RunReport {
  std::vector<ReportRow> rows;
  ReportSummary summary;
  std::vector<MonitorEvent> monitor_failures;
  bool complete = true;
  std::string error;
};

struct RecorderOptions {
  Kappas kappas;
  MonitorSettings monitors;
  // False when the run starts from non-zero estimates or multipliers; the
  // squared Lemma 2 monitors assume zero estimates and are then disabled.
  bool zero_initial_estimates = true;
  std::shared_ptr<const VgneTrace> trace;  // null: cheap mode, no regret
};

// Observer that turns engine rounds into report rows and monitors the lemma
// bounds. Slacks below -1e-9 are recorded as monitor failures; they count as
// hard failures when the kappas are certified.
class ReportRecorder {
 public:
  static constexpr double kSlackTolerance = 1e-9;

  ReportRecorder(const EngineState& initial, RecorderOptions options);

  void Observe(const EngineState& before, double gamma, const EngineState& after);
  Observer AsObserver();
  RunReport Finish(const RunStatus& status) const;

 private:
  RecorderOptions options_;
  std::shared_ptr<const GameSpec> game_;
  std::shared_ptr<const CommGraph> graph_;
  std::string rate_;
  std::vector<double> initial_estimate_error_;
  double sum_lambda_ = 0.0;  // sum_{k=0}^{t-2} lambda^k gamma(t-1-k)
  double sum_sigma_ = 0.0;
  double lambda_power_ = 1.0;  // lambda^{t-1}
  Vector violation_sum_;
  Vector regret_;
  bool regret_available_;
  double deviation_ = 0.0;
  std::vector<ReportRow> rows_;
  std::vector<MonitorEvent> failures_;
};

// Runs T rounds from `state` with a ReportRecorder attached (plus any extra
// observers) and returns the assembled report.
RunReport simulate(EngineState state, int T, RecorderOptions options,
                   std::span<const Observer> extra = {});

// report.csv: one row per round, columns in the documented fixed order.
std::vector<std::string> report_columns(int n, int m);
std::string report_csv(const RunReport& report);
// summary.json contents.
std::string summary_json(const RunReport& report);

}  // namespace ogne

#endif  // OGNE_REPORT_H_
