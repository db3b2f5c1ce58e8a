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

#ifndef OGNE_VGNE_H_
#define OGNE_VGNE_H_

#include <optional>
#include <string>
#include <vector>

#include "ogne/game.h"

namespace ogne {

enum class VgneStatus { kConverged, kMaxIter, kInfeasible };

const char* ToString(VgneStatus s);

struct VgneSolution {
  Vector x_star;  // n*m, inside the private sets
  Vector y_star;  // r, >= 0
  double residual = 0.0;
  int iterations = 0;
  VgneStatus status = VgneStatus::kMaxIter;

  bool converged() const { return status == VgneStatus::kConverged; }
};

struct VgneOptions {
  double tol = 1e-8;
  int max_iter = 100000;
};

// Natural KKT residual of (x, y) at round t:
//   ||x - P_Omega[x - (F(x) + J_g(x)^T y)]|| + ||y - [y + sum_i g_i(x_i)]_+||.
double kkt_residual(const GameSpec& game, int t, const Vector& x,
                    const Vector& y);

// Extragradient on (x, y) -> (F(x) + J_g(x)^T y, -sum_i g_i(x_i)) over
// Omega x R^r_+, with the step shrunk whenever the local Lipschitz test
// fails. A warm start whose residual already meets tol is returned untouched.
VgneSolution solve_vgne(const GameSpec& game, int t,
                        const VgneSolution* warm_start = nullptr,
                        VgneOptions options = {});

struct VgneTrace {
  std::vector<VgneSolution> rounds;  // rounds[t - 1] solves round t
  double theta = 0.0;                // max_t ||y*(t)||
  // displacement[k] = ||x*(k+1) - x*(k)|| in 1-based rounds; displacement[0]
  // stands for the undefined round-0 term and is 0.
  std::vector<double> displacement;
  std::optional<int> first_failed_round;

  int length() const { return static_cast<int>(rounds.size()); }
  const VgneSolution& at(int t) const { return rounds.at(t - 1); }
};

// Rebuilds theta, displacement and first_failed_round from `rounds`.
void finalize_trace(VgneTrace& trace);

// Rounds 1..T, each warm-started from the previous one.
VgneTrace solve_trace(const GameSpec& game, int T, VgneOptions options = {});

// Test oracle for tiny games (n*m <= 4): the feasible grid point of Omega
// with the smallest VI gap max_y F(x)^T (x - y) over feasible grid points y.
// The multiplier is fitted by nonnegative least squares on the stationarity
// rows of the free coordinates. The search is exhaustive, so status is always
// kConverged; `residual` reports the KKT residual of the grid point.
VgneSolution brute_force_vgne(const GameSpec& game, int t,
                              int grid_points_per_dim);

// CSV columns: t, x*_1..x*_{nm}, y*_1..y*_r, residual. Values are written in
// shortest round-trip form so a reload reproduces the trace bit for bit.
void write_trace_csv(const VgneTrace& trace, const std::string& path);
// Rows whose residual exceeds `tol` load with status kMaxIter.
VgneTrace read_trace_csv(const std::string& path, int nm, int r,
                         double tol = VgneOptions{}.tol);

}  // namespace ogne

#endif  // OGNE_VGNE_H_
