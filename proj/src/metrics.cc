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

#include "ogne/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ogne {

std::optional<double> regret_increment(const GameSpec& game, int t, int i,
                                       const Vector& xi,
                                       const VgneSolution& vgne) {
  if (!vgne.converged()) return std::nullopt;
  Vector swapped = vgne.x_star;
  swapped.segment(i * game.m(), game.m()) = xi;
  return game.Cost(i, t, swapped) - game.Cost(i, t, vgne.x_star);
}

double violation(std::span<const Vector> sums) {
  if (sums.empty()) return 0.0;
  Vector total = Vector::Zero(sums.front().size());
  for (const Vector& s : sums) total += s;
  return clamp_positive(total).norm();
}

double violation(const GameSpec& game, std::span<const Vector> actions) {
  std::vector<Vector> sums;
  sums.reserve(actions.size());
  for (const Vector& x : actions) sums.push_back(game.ConstraintSum(x));
  return violation(sums);
}

double deviation(const VgneTrace& trace) {
  double total = 0.0;
  for (std::size_t k = 1; k < trace.rounds.size(); ++k)
    total += (trace.rounds[k].x_star - trace.rounds[k - 1].x_star).norm();
  return total;
}

double ConsensusErrors::max_estimate() const {
  return estimate.empty() ? 0.0 : *std::max_element(estimate.begin(), estimate.end());
}

double ConsensusErrors::max_multiplier() const {
  return multiplier.empty() ? 0.0
                            : *std::max_element(multiplier.begin(), multiplier.end());
}

ConsensusErrors consensus_errors(const EngineState& s) {
  ConsensusErrors out;
  const int n = s.n();
  Vector mean = Vector::Zero(s.game->r());
  for (const PlayerState& p : s.players) mean += p.multiplier;
  mean /= n;
  for (int i = 0; i < n; ++i) {
    double sq = 0.0;
    for (int h = 0; h < n; ++h)
      if (h != i) sq += (s.players[h].estimates.col(i) - s.players[i].action()).squaredNorm();
    out.estimate.push_back(std::sqrt(sq));
    out.multiplier.push_back((s.players[i].multiplier - mean).norm());
  }
  return out;
}

LemmaConstants lemma_constants(int n, const Kappas& k, double lambda,
                               double sigma2, double mu, double ell,
                               double theta) {
  if (n < 1) throw std::invalid_argument("lemma_constants: n must be >= 1");
  if (!(lambda >= 0.0 && lambda < 1.0) || !(sigma2 >= 0.0 && sigma2 < 1.0))
    throw std::invalid_argument("lemma_constants: lambda and sigma2 must lie in [0, 1)");
  if (k.k0 < 0 || k.k1 < 0 || k.k2 < 0 || k.k3 < 0 || mu < 0 || ell < 0 || theta < 0)
    throw std::invalid_argument("lemma_constants: inputs must be nonnegative");
  const double nn = n;
  const double rn = std::sqrt(nn);
  LemmaConstants c;
  c.theta = theta;
  c.rho = 8.0 * (nn - 1.0) * k.k1 * k.k1 / (1.0 - lambda);
  c.varrho = 4.0 * (nn + rn) * (nn + rn) * k.k2 * k.k2 / (1.0 - sigma2);
  c.tau = 4.0 * nn * k.k0 * theta * (theta * k.k0 + k.k1 + k.k3) +
          4.0 * nn * k.k3 * k.k3;
  c.pi1 = c.tau / 2.0 + nn * nn * (k.k0 * k.k0 + k.k0) * k.k2 * k.k2 +
          2.0 * k.k0 * k.k3 * k.k2 * nn * rn + nn * k.k0 * theta * theta;
  c.pi2 = 2.0 * std::sqrt(nn - 1.0) * ell * (k.k1 + k.k3);
  return c;
}

double sublinearity_slope(std::span<const double> series, double window_start) {
  const auto total = static_cast<long>(series.size());
  if (total < 16) throw std::invalid_argument("sublinearity_slope: need T >= 16");
  if (!(window_start >= 0.0 && window_start < 1.0))
    throw std::invalid_argument("sublinearity_slope: window start must lie in [0, 1)");
  bool all_zero = true;
  for (double v : series) {
    if (!(v >= 0.0)) throw std::invalid_argument("sublinearity_slope: series must be non-negative");
    all_zero = all_zero && v == 0.0;
  }
  if (all_zero) return 0.0;

  const long first = std::max(1L, static_cast<long>(std::ceil(window_start * total)));
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long count = 0;
  for (long t = first; t <= total; ++t) {
    const double lx = std::log(static_cast<double>(t));
    const double ly = std::log(series[t - 1] + 1.0);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
    ++count;
  }
  const double denom = count * sxx - sx * sx;
  if (denom <= 0.0) return 0.0;
  return (count * sxy - sx * sy) / denom;
}

}  // namespace ogne
