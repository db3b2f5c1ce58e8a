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

#ifndef OGNE_GRAPH_H_
#define OGNE_GRAPH_H_

#include <span>
#include <utility>
#include <vector>

#include "ogne/game.h"

namespace ogne {

using Edge = std::pair<int, int>;

// Validated weight matrix A of an undirected connected communication graph:
// symmetric, nonnegative, rows summing to one and 0 < a_ii < 1.
class CommGraph {
 public:
  // a_ij = 1 / (1 + max(deg_i, deg_j)) on edges, a_ii fills the row to one.
  // Nodes are 0-based. Rejects self-loops, duplicate edges, out-of-range
  // nodes and disconnected graphs.
  static CommGraph Metropolis(std::span<const Edge> edges, int n);
  // Validates an arbitrary weight matrix against the invariants above.
  static CommGraph FromMatrix(Matrix weights);

  int size() const { return static_cast<int>(weights_.rows()); }
  const Matrix& weights() const { return weights_; }
  double weight(int i, int j) const { return weights_(i, j); }
  // Neighbours of i in increasing order, including i itself.
  const std::vector<int>& neighbors(int i) const { return neighbors_.at(i); }

  double lambda() const { return lambda_; }
  double sigma2() const { return sigma2_; }
  // sigma2 == 0: A has rank one (e.g. the uniform complete graph).
  bool sigma2_degenerate() const { return sigma2_degenerate_; }

 private:
  explicit CommGraph(Matrix weights);

  Matrix weights_;
  std::vector<std::vector<int>> neighbors_;
  double lambda_ = 0.0;
  double sigma2_ = 0.0;
  bool sigma2_degenerate_ = false;
};

// max over i, k of |lambda_k(A_i^-)|, A_i^- being A with row and column i
// removed.
double spectral_lambda(const Matrix& weights);
double spectral_lambda(const CommGraph& g);

// Second-largest singular value of A.
double spectral_sigma2(const Matrix& weights);
double spectral_sigma2(const CommGraph& g);

// Breadth-first connectivity of the graph with edges where a_ij > 0.
bool is_connected(const Matrix& weights);

}  // namespace ogne

#endif  // OGNE_GRAPH_H_
