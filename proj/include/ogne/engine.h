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

#ifndef OGNE_ENGINE_H_
#define OGNE_ENGINE_H_

#include <functional>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "ogne/game.h"
#include "ogne/graph.h"
#include "ogne/schedule.h"

namespace ogne {

// One player's local state. Column h of `estimates` is the player's estimate
// of x_h; column `index` is the player's own (real) action, so the two can
// never disagree.
struct PlayerState {
  int index = 0;
  Matrix estimates;   // m x n
  Vector multiplier;  // r, componentwise >= 0

  auto action() const { return estimates.col(index); }
  // The estimate profile stacked player by player (length n*m).
  Vector StackedEstimates() const;
};

// Round-t snapshot of the whole network. Copies share the immutable game and
// graph.
struct EngineState {
  int t = 1;
  std::vector<PlayerState> players;
  std::shared_ptr<const GameSpec> game;
  std::shared_ptr<const CommGraph> graph;
  LearningRate rate = LearningRate::Constant(0.0);

  int n() const { return static_cast<int>(players.size()); }
  Vector Actions() const;  // stacked real actions
};

// Starting point. Algorithm() gives zero estimates of others and zero
// multipliers; SectionIV() the published benchmark's 10 / 1 fill.
struct InitialCondition {
  Vector actions;  // stacked, length n*m
  double other_estimate = 0.0;
  double multiplier = 0.0;

  static InitialCondition Algorithm(Vector actions) {
    return {std::move(actions), 0.0, 0.0};
  }
  static InitialCondition SectionIV(Vector actions) {
    return {std::move(actions), 10.0, 1.0};
  }
};

class EngineError : public std::runtime_error {
 public:
  EngineError(int player, int round, const std::string& what);
  int player() const { return player_; }
  int round() const { return round_; }

 private:
  int player_;
  int round_;
};

// Throws std::invalid_argument when an initial action leaves its private set
// or dimensions disagree with the game.
EngineState init_state(std::shared_ptr<const GameSpec> game,
                       std::shared_ptr<const CommGraph> graph,
                       LearningRate rate, const InitialCondition& init);

// Estimate mixing: x_ih(t+1) = sum_{k in N_i, k != h} a_ik x_kh(t) + a_ih x_h(t)
// for h != i. Returns every player's new estimate matrix; the own column is
// left at x_i(t) for the primal update to overwrite.
std::vector<Matrix> consensus_estimates(const EngineState& state);

// (1 - g) x_i + g P[x_i - g (grad + g J^T y_i)].
Vector primal_kernel(const Vector& xi, const Vector& grad, const Matrix& jac,
                     const Vector& yi, double gamma, const ProjectableSet& set);
// [(1 - g^2) mixed + g g_i]_+ where mixed = sum_j a_ij y_j.
Vector dual_kernel(const Vector& mixed, const Vector& gi, double gamma);

Vector primal_update(const EngineState& state, int i);
Vector dual_update(const EngineState& state, int i);

// One synchronous round. Every per-player update reads only the round-t
// snapshot; `order` (a permutation of players, empty = natural order) only
// changes the evaluation order, never the result.
EngineState step(const EngineState& state, std::span<const int> order = {});

// Called after every step with the consumed round-t snapshot, the gamma(t)
// used and the resulting round-(t+1) state.
using Observer = std::function<void(const EngineState& before, double gamma,
                                    const EngineState& after)>;

struct RunStatus {
  int rounds_completed = 0;
  bool complete = true;
  std::string error;
};

// Advances `state` by T rounds. An exception from a step or an observer stops
// the run; the status then carries complete = false and the message.
RunStatus run(EngineState& state, int T, std::span<const Observer> observers);

}  // namespace ogne

#endif  // OGNE_ENGINE_H_
