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

#include "ogne/graph.h"

#include <algorithm>
#include <cmath>
#include <queue>
#include <set>
#include <stdexcept>
#include <string>

#include "ogne/jacobi.h"

namespace ogne {

namespace {
constexpr double kRowSumTol = 1e-12;
constexpr double kDegenerateSigma = 1e-12;
}  // namespace

bool is_connected(const Matrix& w) {
  const int n = static_cast<int>(w.rows());
  if (n == 0) return false;
  std::vector<bool> seen(n, false);
  std::queue<int> frontier;
  frontier.push(0);
  seen[0] = true;
  int visited = 1;
  while (!frontier.empty()) {
    const int u = frontier.front();
    frontier.pop();
    for (int v = 0; v < n; ++v) {
      if (v != u && w(u, v) > 0.0 && !seen[v]) {
        seen[v] = true;
        ++visited;
        frontier.push(v);
      }
    }
  }
  return visited == n;
}

CommGraph CommGraph::Metropolis(std::span<const Edge> edges, int n) {
  if (n < 2) throw std::invalid_argument("metropolis_graph: need n >= 2");
  std::set<Edge> seen;
  std::vector<int> degree(n, 0);
  for (auto [a, b] : edges) {
    if (a < 0 || b < 0 || a >= n || b >= n)
      throw std::invalid_argument("metropolis_graph: node index out of range");
    if (a == b)
      throw std::invalid_argument("metropolis_graph: self-loop on node " +
                                  std::to_string(a));
    if (!seen.insert(std::minmax(a, b)).second)
      throw std::invalid_argument("metropolis_graph: duplicate edge " +
                                  std::to_string(a) + "-" + std::to_string(b));
    ++degree[a];
    ++degree[b];
  }
  Matrix w = Matrix::Zero(n, n);
  for (auto [a, b] : seen) {
    const double v = 1.0 / (1.0 + std::max(degree[a], degree[b]));
    w(a, b) = v;
    w(b, a) = v;
  }
  if (!is_connected(w))
    throw std::invalid_argument("metropolis_graph: graph is disconnected");
  for (int i = 0; i < n; ++i) {
    double off = 0.0;
    for (int j = 0; j < n; ++j)
      if (j != i) off += w(i, j);
    w(i, i) = 1.0 - off;
  }
  return CommGraph(std::move(w));
}

CommGraph CommGraph::FromMatrix(Matrix weights) {
  return CommGraph(std::move(weights));
}

CommGraph::CommGraph(Matrix w) : weights_(std::move(w)) {
  const int n = static_cast<int>(weights_.rows());
  if (weights_.cols() != n || n < 2)
    throw std::invalid_argument("CommGraph: need a square matrix with n >= 2");
  for (int i = 0; i < n; ++i) {
    double row = 0.0;
    for (int j = 0; j < n; ++j) {
      const double a = weights_(i, j);
      if (!std::isfinite(a) || a < 0.0)
        throw std::invalid_argument("CommGraph: weights must be nonnegative");
      if (a != weights_(j, i))
        throw std::invalid_argument("CommGraph: weight matrix not symmetric");
      row += a;
    }
    if (std::abs(row - 1.0) > kRowSumTol)
      throw std::invalid_argument("CommGraph: row " + std::to_string(i) +
                                  " does not sum to 1");
    if (!(weights_(i, i) > 0.0 && weights_(i, i) < 1.0))
      throw std::invalid_argument("CommGraph: need 0 < a_ii < 1");
  }
  if (!is_connected(weights_))
    throw std::invalid_argument("CommGraph: graph is disconnected");

  neighbors_.resize(n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (weights_(i, j) > 0.0) neighbors_[i].push_back(j);

  lambda_ = spectral_lambda(weights_);
  sigma2_ = spectral_sigma2(weights_);
  if (!(lambda_ > 0.0 && lambda_ < 1.0))
    throw std::invalid_argument("CommGraph: lambda outside (0, 1)");
  if (!(sigma2_ < 1.0))
    throw std::invalid_argument("CommGraph: sigma2 must be below 1");
  sigma2_degenerate_ = sigma2_ <= kDegenerateSigma;
}

double spectral_lambda(const Matrix& w) {
  const int n = static_cast<int>(w.rows());
  double best = 0.0;
  for (int i = 0; i < n; ++i) {
    Matrix sub(n - 1, n - 1);
    for (int r = 0, rr = 0; r < n; ++r) {
      if (r == i) continue;
      for (int c = 0, cc = 0; c < n; ++c) {
        if (c == i) continue;
        sub(rr, cc++) = w(r, c);
      }
      ++rr;
    }
    const Vector ev = jacobi_eigen(sub).values;
    best = std::max(best, ev.cwiseAbs().maxCoeff());
  }
  return best;
}

double spectral_lambda(const CommGraph& g) { return g.lambda(); }

double spectral_sigma2(const Matrix& w) {
  // Singular values of the symmetric A are |eigenvalues|.
  Vector s = jacobi_eigen(w).values.cwiseAbs();
  std::sort(s.begin(), s.end(), std::greater<>());
  double sigma = s.size() > 1 ? s[1] : 0.0;
  return sigma <= kDegenerateSigma ? 0.0 : sigma;
}

double spectral_sigma2(const CommGraph& g) { return g.sigma2(); }

}  // namespace ogne
