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

#ifndef OGNE_BENCHMARKS_H_
#define OGNE_BENCHMARKS_H_

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ogne/game.h"

namespace ogne {

// Five-firm online Nash-Cournot market. Firm i (1-based) has production cost
// sin(t/12) x_i and price 45 + 5i - 0.5 i sin(t/12) - sum_j x_j, capacity
// share l = (10, 15, 8, 8, 15) in sum_i x_i <= 56, and 0 <= x_i <= 30.
// Rounds are integers.
GameSpec cournot_game();

// The same market frozen at sin(t/12) = 0.
GameSpec static_cournot_game();

// Capacities l_i of the Cournot market.
Vector cournot_capacities();

// Published approximation of the Cournot equilibrium: P_[0,30](xi_i) with
// xi_i = 8 sin(t/12) / 3 - 5 + 5i. For comparison only.
Vector cournot_reference_xi(int t);
// Same, for a given value s of sin(t/12).
Vector cournot_reference_xi_at(double s);

// J_i = 1/2 x_i^T Q_i x_i + (sum_{j != i} x_j)^T R_i x_i + c_i^T x_i with
// linear blocks g_i(x_i) = G_i x_i - h_i and box private sets.
struct QuadraticGameParams {
  int n = 2;
  int m = 1;
  int r = 1;
  std::vector<Matrix> q;  // m x m, symmetric positive definite
  std::vector<Matrix> coupling;  // m x m (R_i)
  std::vector<Vector> c;  // m
  std::vector<Matrix> g;  // r x m
  std::vector<Vector> h;  // r
  std::vector<BoxSet> boxes;
  std::optional<Vector> feasible_point;  // default: first feasible of centre/lower/upper corners
};

struct KktSolution {
  Vector x;
  Vector y;
  // Per coordinate 'f' (free), 'l' (at lower), 'u' (at upper), then per
  // constraint row 'a' (active) or 'i' (inactive).
  std::string pattern;
};

class QuadraticTestGame {
 public:
  // Throws std::invalid_argument if some Q_i is not symmetric positive
  // definite or shapes disagree.
  explicit QuadraticTestGame(QuadraticGameParams params);

  const std::shared_ptr<const GameSpec>& spec() const { return spec_; }
  // F(x) = M x + offset.
  const Matrix& jacobian() const { return jacobian_; }
  const Vector& offset() const { return offset_; }
  // Stacked [G_1 ... G_n] and sum_i h_i.
  const Matrix& constraint_matrix() const { return big_g_; }
  const Vector& constraint_bound() const { return big_h_; }

  // Solves the linear KKT system for one activity pattern (format as in
  // KktSolution::pattern). Returns nullopt when the system is singular or
  // the solution violates the pattern's sign conditions.
  std::optional<KktSolution> SolvePattern(const std::string& pattern) const;
  // Enumerates all activity patterns (n*m <= 8, r <= 4).
  KktSolution ClosedForm() const;

 private:
  QuadraticGameParams params_;
  Matrix jacobian_;
  Vector offset_;
  Matrix big_g_;
  Vector big_h_;
  std::shared_ptr<const GameSpec> spec_;
};

// Seeded random instance behind the "quadratic(n,m,seed)" factory name:
// well-conditioned Q_i, weak coupling, one shared budget row, boxes [-10, 10].
QuadraticTestGame random_quadratic_game(int n, int m, std::uint64_t seed);

}  // namespace ogne

#endif  // OGNE_BENCHMARKS_H_
