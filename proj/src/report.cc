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

#include "ogne/report.h"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "ogne/benchmarks.h"
#include "ogne/csv.h"

namespace ogne {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();
constexpr double kInf = std::numeric_limits<double>::infinity();

double SlopeOrNaN(const std::vector<double>& series) {
  for (double v : series)
    if (!std::isfinite(v)) return kNaN;
  try {
    return sublinearity_slope(series);
  } catch (const std::invalid_argument&) {
    return kNaN;
  }
}

}  // namespace

ReportRecorder::ReportRecorder(const EngineState& initial, RecorderOptions options)
    : options_(std::move(options)),
      game_(initial.game),
      graph_(initial.graph),
      rate_(initial.rate.Describe()),
      violation_sum_(Vector::Zero(initial.game->r())),
      regret_(Vector::Zero(initial.n())),
      regret_available_(options_.trace != nullptr) {
  if (initial.t != 1) throw std::invalid_argument("ReportRecorder: run must start at round 1");
  initial_estimate_error_ = consensus_errors(initial).estimate;
}

void ReportRecorder::Observe(const EngineState& before, double gamma, const EngineState&) {
  const GameSpec& game = *game_;
  const int t = before.t;
  const int n = before.n();
  ReportRow row;
  row.t = t;
  row.gamma = gamma;
  row.actions = before.Actions();
  row.multiplier_norms.resize(n);
  for (int i = 0; i < n; ++i) row.multiplier_norms[i] = before.players[i].multiplier.norm();

  violation_sum_ += game.ConstraintSum(row.actions);
  row.violation = clamp_positive(violation_sum_).norm();

  const VgneTrace* trace = options_.trace.get();
  if (regret_available_ && t <= trace->length() && trace->at(t).converged()) {
    for (int i = 0; i < n; ++i)
      regret_[i] += *regret_increment(game, t, i, game.Block(row.actions, i), trace->at(t));
  } else {
    regret_available_ = false;
  }
  row.regret = regret_available_ ? regret_ : Vector::Constant(n, kNaN);
  if (trace && t <= trace->length()) {
    deviation_ += trace->displacement[t - 1];
    row.deviation = deviation_;
  } else {
    row.deviation = kNaN;
  }

  const ConsensusErrors err = consensus_errors(before);
  row.max_estimate_error = err.max_estimate();
  row.max_multiplier_disagreement = err.max_multiplier();

  row.slack = {kNaN, kNaN, kNaN, kNaN, kNaN};
  if (t >= 2) {
    const Kappas& k = options_.kappas;
    const double lambda = graph_->lambda();
    const double sigma2 = graph_->sigma2();
    const LemmaConstants c = lemma_constants(n, k, lambda, sigma2, 0.0, 0.0, 0.0);
    const double rn = std::sqrt(static_cast<double>(n));
    const MonitorSettings& on = options_.monitors;
    const bool squared = options_.zero_initial_estimates;
    double s1 = kInf, s2i = kInf, s2ii = kInf, s2iii = kInf, s2iv = kInf;
    for (int i = 0; i < n; ++i) {
      const double e = err.estimate[i], e1 = initial_estimate_error_[i];
      const double dy = err.multiplier[i];
      s1 = std::min(s1, rn * k.k2 - gamma * before.players[i].multiplier.norm());
      s2i = std::min(s2i, lambda_power_ * e1 + 2.0 * std::sqrt(n - 1.0) * k.k1 * sum_lambda_ - e);
      s2ii = std::min(s2ii, lambda_power_ * e1 * e1 + c.rho * sum_lambda_ - e * e);
      s2iii = std::min(s2iii, 2.0 * (n + rn) * k.k2 * sum_sigma_ - dy);
      s2iv = std::min(s2iv, c.varrho * sum_sigma_ - dy * dy);
    }
    row.slack = {on.lemma1 ? s1 : kNaN, on.lemma2_i ? s2i : kNaN,
                 on.lemma2_ii && squared ? s2ii : kNaN, on.lemma2_iii ? s2iii : kNaN,
                 on.lemma2_iv && squared ? s2iv : kNaN};
    const std::pair<const char*, double> checks[] = {
        {"lemma1", row.slack.lemma1},         {"lemma2_i", row.slack.lemma2_i},
        {"lemma2_ii", row.slack.lemma2_ii},   {"lemma2_iii", row.slack.lemma2_iii},
        {"lemma2_iv", row.slack.lemma2_iv}};
    for (auto [name, slack] : checks)
      if (slack < -kSlackTolerance) failures_.push_back({name, t, slack});
  }

  sum_lambda_ = graph_->lambda() * sum_lambda_ + gamma;
  sum_sigma_ = graph_->sigma2() * sum_sigma_ + gamma;
  lambda_power_ *= graph_->lambda();
  rows_.push_back(std::move(row));
}

Observer ReportRecorder::AsObserver() {
  return [this](const EngineState& b, double g, const EngineState& a) { Observe(b, g, a); };
}

RunReport ReportRecorder::Finish(const RunStatus& status) const {
  RunReport report;
  report.rows = rows_;
  report.monitor_failures = failures_;
  report.complete = status.complete;
  report.error = status.error;

  ReportSummary& s = report.summary;
  const int T = static_cast<int>(rows_.size());
  s.rounds = T;
  s.n = game_->n();
  s.m = game_->m();
  s.r = game_->r();
  s.game = game_->name();
  s.rate = rate_;
  s.cheap_mode = options_.trace == nullptr;
  s.kappas = options_.kappas;
  s.lambda = graph_->lambda();
  s.sigma2 = graph_->sigma2();
  s.sigma2_degenerate = graph_->sigma2_degenerate();
  s.lemma2_squared_applicable = options_.zero_initial_estimates;
  s.monitor_violations = static_cast<int>(failures_.size());
  s.hard_failure = options_.kappas.certified && !failures_.empty();

  s.average_regret.assign(s.n, kNaN);
  s.regret_slope.assign(s.n, kNaN);
  s.violation_slope = kNaN;
  if (T > 0) {
    const ReportRow& last = rows_.back();
    s.average_violation = last.violation / T;
    std::vector<double> series(T);
    for (int k = 0; k < T; ++k) series[k] = rows_[k].violation;
    s.violation_slope = SlopeOrNaN(series);
    for (int i = 0; i < s.n; ++i) {
      s.average_regret[i] = last.regret[i] / T;
      for (int k = 0; k < T; ++k) series[k] = rows_[k].regret[i];
      s.regret_slope[i] = SlopeOrNaN(series);
    }
  }

  double theta = 0.0;
  if (const VgneTrace* trace = options_.trace.get()) {
    const int upto = std::min(T, trace->length());
    for (int t = 1; t <= upto; ++t) theta = std::max(theta, trace->at(t).y_star.norm());
    s.theta = theta;
    if (T > 0) s.theta_t = rows_.back().deviation;
    if (game_->name() == "cournot-siv") {
      double worst = 0.0;
      for (int t = 1; t <= upto; ++t)
        worst = std::max(worst, (trace->at(t).x_star - cournot_reference_xi(t)).norm());
      s.reference_deviation = worst;
    }
  }
  s.constants = lemma_constants(s.n, s.kappas, s.lambda, s.sigma2,
                                game_->mu().value_or(0.0), game_->ell().value_or(0.0), theta);
  return report;
}

RunReport simulate(EngineState state, int T, RecorderOptions options,
                   std::span<const Observer> extra) {
  ReportRecorder recorder(state, std::move(options));
  std::vector<Observer> observers{recorder.AsObserver()};
  observers.insert(observers.end(), extra.begin(), extra.end());
  const RunStatus status = run(state, T, observers);
  return recorder.Finish(status);
}

std::vector<std::string> report_columns(int n, int m) {
  std::vector<std::string> cols{"t", "gamma"};
  for (int i = 1; i <= n; ++i)
    for (int k = 1; k <= m; ++k)
      cols.push_back(m == 1 ? "x_" + std::to_string(i)
                            : "x_" + std::to_string(i) + "_" + std::to_string(k));
  for (int i = 1; i <= n; ++i) cols.push_back("ynorm_" + std::to_string(i));
  for (int i = 1; i <= n; ++i) cols.push_back("R_" + std::to_string(i));
  for (const char* c : {"R_g", "Theta", "e_max", "ydis_max", "slack_lemma1",
                        "slack_lemma2i", "slack_lemma2ii", "slack_lemma2iii",
                        "slack_lemma2iv"})
    cols.emplace_back(c);
  return cols;
}

std::string report_csv(const RunReport& report) {
  const ReportSummary& s = report.summary;
  std::ostringstream os;
  const auto cols = report_columns(s.n, s.m);
  for (std::size_t k = 0; k < cols.size(); ++k) os << (k ? "," : "") << cols[k];
  os << '\n';
  for (const ReportRow& row : report.rows) {
    os << row.t << ',' << FormatDouble(row.gamma);
    for (double v : row.actions) os << ',' << FormatDouble(v);
    for (double v : row.multiplier_norms) os << ',' << FormatDouble(v);
    for (double v : row.regret) os << ',' << FormatDouble(v);
    for (double v : {row.violation, row.deviation, row.max_estimate_error,
                     row.max_multiplier_disagreement, row.slack.lemma1, row.slack.lemma2_i,
                     row.slack.lemma2_ii, row.slack.lemma2_iii, row.slack.lemma2_iv})
      os << ',' << FormatDouble(v);
    os << '\n';
  }
  return os.str();
}

namespace {

nlohmann::ordered_json Num(double v) {
  return std::isfinite(v) ? nlohmann::ordered_json(v) : nlohmann::ordered_json(nullptr);
}

nlohmann::ordered_json Nums(const std::vector<double>& vs) {
  auto arr = nlohmann::ordered_json::array();
  for (double v : vs) arr.push_back(Num(v));
  return arr;
}

}  // namespace

std::string summary_json(const RunReport& report) {
  const ReportSummary& s = report.summary;
  nlohmann::ordered_json j;
  j["game"] = s.game;
  j["rate"] = s.rate;
  j["rounds"] = s.rounds;
  j["n"] = s.n;
  j["m"] = s.m;
  j["r"] = s.r;
  j["complete"] = report.complete;
  if (!report.error.empty()) j["error"] = report.error;
  j["cheap_mode"] = s.cheap_mode;
  j["average_regret"] = Nums(s.average_regret);
  j["average_violation"] = Num(s.average_violation);
  j["regret_slope"] = Nums(s.regret_slope);
  j["violation_slope"] = Num(s.violation_slope);
  j["theta"] = s.theta ? Num(*s.theta) : nullptr;
  j["Theta_T"] = s.theta_t ? Num(*s.theta_t) : nullptr;
  j["kappas"] = {{"k0", s.kappas.k0}, {"k1", s.kappas.k1}, {"k2", s.kappas.k2},
                 {"k3", s.kappas.k3}, {"source", s.kappas.certified ? "certified" : "estimated"}};
  j["lambda"] = s.lambda;
  j["sigma2"] = s.sigma2;
  j["sigma2_degenerate"] = s.sigma2_degenerate;
  if (s.constants) {
    const LemmaConstants& c = *s.constants;
    j["constants"] = {{"rho", Num(c.rho)}, {"varrho", Num(c.varrho)}, {"pi1", Num(c.pi1)},
                      {"pi2", Num(c.pi2)}, {"tau", Num(c.tau)}, {"theta", Num(c.theta)}};
  }
  j["reference_deviation"] = s.reference_deviation ? Num(*s.reference_deviation) : nullptr;
  j["lemma2_squared_monitors"] = s.lemma2_squared_applicable ? "on" : "n/a";
  j["monitor_violations"] = s.monitor_violations;
  j["monitor_hard_failure"] = s.hard_failure;
  if (!report.monitor_failures.empty()) {
    const MonitorEvent& first = report.monitor_failures.front();
    j["first_monitor_violation"] = {{"monitor", first.monitor}, {"t", first.t},
                                    {"slack", first.slack}};
  }
  return j.dump(2) + "\n";
}

}  // namespace ogne
