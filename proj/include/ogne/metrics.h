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

#ifndef OGNE_METRICS_H_
#define OGNE_METRICS_H_

#include <optional>
#include <span>
#include <vector>

#include "ogne/engine.h"
#include "ogne/game.h"
#include "ogne/vgne.h"

namespace ogne {

// J_i^t(x_i, x*_{-i}(t)) - J_i^t(x*(t)): only player i's action is swapped
// into the equilibrium profile. nullopt when `vgne` did not converge.
std::optional<double> regret_increment(const GameSpec& game, int t, int i,
                                       const Vector& xi,
                                       const VgneSolution& vgne);

// ||[sum_t s(t)]_+|| for the per-round constraint sums s(t) = sum_i g_i(x_i(t)).
// The clamp is applied once, to the accumulated vector.
double violation(std::span<const Vector> round_constraint_sums);
// Same, from the raw stacked action trace x(1), x(2), ...
double violation(const GameSpec& game, std::span<const Vector> actions);

// sum_{t=1}^{T-1} ||x*(t+1) - x*(t)||; the round-0 term is zero.
double deviation(const VgneTrace& trace);

struct ConsensusErrors {
  // estimate[i] = ||e_i||, e_i stacking x_hi - x_i over h != i.
  std::vector<double> estimate;
  // multiplier[i] = ||y_i - mean_j y_j||.
  std::vector<double> multiplier;

  double max_estimate() const;
  double max_multiplier() const;
};

ConsensusErrors consensus_errors(const EngineState& state);

struct LemmaConstants {
  double rho = 0.0;     // 8 (n-1) k1^2 / (1 - lambda)
  double varrho = 0.0;  // 4 (n + sqrt n)^2 k2^2 / (1 - sigma2)
  double pi1 = 0.0;
  double pi2 = 0.0;     // 2 sqrt(n-1) ell (k1 + k3)
  double tau = 0.0;     // 4 n k0 theta (theta k0 + k1 + k3) + 4 n k3^2
  double theta = 0.0;
};

// Throws std::invalid_argument unless lambda, sigma2 lie in [0, 1) and the
// remaining inputs are nonnegative.
LemmaConstants lemma_constants(int n, const Kappas& kappas, double lambda,
                               double sigma2, double mu, double ell,
                               double theta);

// Least-squares slope of log(series(t) + 1) against log t over rounds
// t >= ceil(window_start * T) (1-based). Needs T >= 16 and a non-negative
// series; an all-zero series has slope 0.
double sublinearity_slope(std::span<const double> series,
                          double window_start = 0.5);

}  // namespace ogne

#endif  // OGNE_METRICS_H_
