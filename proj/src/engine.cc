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

#include "ogne/engine.h"

#include <cmath>
#include <numeric>

namespace ogne {

EngineError::EngineError(int player, int round, const std::string& what)
    : std::runtime_error("player " + std::to_string(player) + ", round " +
                         std::to_string(round) + ": " + what),
      player_(player),
      round_(round) {}

Vector PlayerState::StackedEstimates() const {
  return Eigen::Map<const Vector>(estimates.data(), estimates.size());
}

Vector EngineState::Actions() const {
  const int m = game->m();
  Vector x(n() * m);
  for (int i = 0; i < n(); ++i) x.segment(i * m, m) = players[i].action();
  return x;
}

EngineState init_state(std::shared_ptr<const GameSpec> game,
                       std::shared_ptr<const CommGraph> graph,
                       LearningRate rate, const InitialCondition& init) {
  if (!game || !graph) throw std::invalid_argument("init_state: null game or graph");
  const int n = game->n(), m = game->m(), r = game->r();
  if (graph->size() != n)
    throw std::invalid_argument("init_state: graph size differs from player count");
  if (init.actions.size() != n * m)
    throw std::invalid_argument("init_state: initial actions have wrong length");
  for (int i = 0; i < n; ++i)
    if (!game->private_set(i).Contains(init.actions.segment(i * m, m)))
      throw std::invalid_argument("init_state: initial action of player " +
                                  std::to_string(i) +
                                  " lies outside its private set");
  if (init.multiplier < 0.0)
    throw std::invalid_argument("init_state: multipliers must be nonnegative");

  EngineState s{1, {}, std::move(game), std::move(graph), rate};
  s.players.resize(n);
  for (int i = 0; i < n; ++i) {
    PlayerState& p = s.players[i];
    p.index = i;
    p.estimates = Matrix::Constant(m, n, init.other_estimate);
    p.estimates.col(i) = init.actions.segment(i * m, m);
    p.multiplier = Vector::Constant(r, init.multiplier);
  }
  return s;
}

std::vector<Matrix> consensus_estimates(const EngineState& s) {
  const CommGraph& g = *s.graph;
  std::vector<Matrix> next;
  next.reserve(s.n());
  for (int i = 0; i < s.n(); ++i) {
    Matrix e = s.players[i].estimates;
    for (int h = 0; h < s.n(); ++h) {
      if (h == i) continue;
      Vector mixed = g.weight(i, h) * s.players[h].action();
      for (int k : g.neighbors(i))
        if (k != h) mixed += g.weight(i, k) * s.players[k].estimates.col(h);
      e.col(h) = mixed;
    }
    next.push_back(std::move(e));
  }
  return next;
}

Vector primal_kernel(const Vector& xi, const Vector& grad, const Matrix& jac,
                     const Vector& yi, double gamma, const ProjectableSet& set) {
  const Vector inner = xi - gamma * (grad + gamma * (jac.transpose() * yi));
  return (1.0 - gamma) * xi + gamma * set.Project(inner);
}

Vector dual_kernel(const Vector& mixed, const Vector& gi, double gamma) {
  return clamp_positive((1.0 - gamma * gamma) * mixed + gamma * gi);
}

Vector primal_update(const EngineState& s, int i) {
  const GameSpec& game = *s.game;
  const PlayerState& p = s.players.at(i);
  const double gamma = s.rate(s.t);
  const Vector xi = p.action();
  Vector grad;
  Matrix jac;
  try {
    grad = game.Gradient(i, s.t, p.StackedEstimates());
    jac = game.ConstraintJacobian(i, xi);
  } catch (const std::exception& e) {
    throw EngineError(i, s.t, std::string("gradient oracle failed: ") + e.what());
  }
  if (grad.size() != game.m() || !grad.allFinite())
    throw EngineError(i, s.t, "gradient oracle returned a bad vector");
  if (jac.rows() != game.r() || jac.cols() != game.m() || !jac.allFinite())
    throw EngineError(i, s.t, "constraint jacobian has bad shape or values");
  return primal_kernel(xi, grad, jac, p.multiplier, gamma, game.private_set(i));
}

Vector dual_update(const EngineState& s, int i) {
  const CommGraph& g = *s.graph;
  const double gamma = s.rate(s.t);
  Vector mixed = Vector::Zero(s.game->r());
  for (int j : g.neighbors(i)) mixed += g.weight(i, j) * s.players[j].multiplier;
  const Vector gi = s.game->Constraint(i, s.players[i].action());
  if (gi.size() != s.game->r() || !gi.allFinite())
    throw EngineError(i, s.t, "constraint block returned a bad vector");
  return dual_kernel(mixed, gi, gamma);
}

EngineState step(const EngineState& s, std::span<const int> order) {
  std::vector<int> natural;
  if (order.empty()) {
    natural.resize(s.n());
    std::iota(natural.begin(), natural.end(), 0);
    order = natural;
  }
  if (static_cast<int>(order.size()) != s.n())
    throw std::invalid_argument("step: order must list every player once");

  std::vector<Matrix> estimates = consensus_estimates(s);
  std::vector<Vector> actions(s.n()), multipliers(s.n());
  std::vector<bool> done(s.n(), false);
  for (int i : order) {
    if (i < 0 || i >= s.n() || done[i])
      throw std::invalid_argument("step: order is not a permutation");
    done[i] = true;
    actions[i] = primal_update(s, i);
    multipliers[i] = dual_update(s, i);
  }

  EngineState next{s.t + 1, s.players, s.game, s.graph, s.rate};
  for (int i = 0; i < s.n(); ++i) {
    next.players[i].estimates = std::move(estimates[i]);
    next.players[i].estimates.col(i) = actions[i];
    next.players[i].multiplier = std::move(multipliers[i]);
  }
  return next;
}

RunStatus run(EngineState& state, int T, std::span<const Observer> observers) {
  if (T < 1) throw std::invalid_argument("run: T must be at least 1");
  RunStatus status;
  for (int k = 0; k < T; ++k) {
    try {
      const double gamma = state.rate(state.t);
      EngineState next = step(state);
      for (const Observer& obs : observers) obs(state, gamma, next);
      state = std::move(next);
    } catch (const std::exception& e) {
      status.complete = false;
      status.error = e.what();
      return status;
    }
    ++status.rounds_completed;
  }
  return status;
}

}  // namespace ogne
