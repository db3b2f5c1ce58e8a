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

#include "ogne/vgne.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>
#include <stdexcept>

#include "ogne/csv.h"

namespace ogne {

const char* ToString(VgneStatus s) {
  switch (s) {
    case VgneStatus::kConverged:
      return "converged";
    case VgneStatus::kMaxIter:
      return "max_iter";
    case VgneStatus::kInfeasible:
      return "infeasible";
  }
  return "unknown";
}

namespace {

constexpr double kUnboundedMultiplier = 1e12;
constexpr double kLipschitzFactor = 0.9;

struct Operator {
  Vector fx;  // F(x) + J_g(x)^T y
  Vector fy;  // -sum_i g_i(x_i)
};

Operator Evaluate(const GameSpec& game, int t, const Vector& x, const Vector& y) {
  Operator op{game.PseudoGradient(t, x), -game.ConstraintSum(x)};
  for (int i = 0; i < game.n(); ++i)
    op.fx.segment(i * game.m(), game.m()) +=
        game.ConstraintJacobian(i, game.Block(x, i)).transpose() * y;
  return op;
}

double Distance(const Vector& x1, const Vector& y1, const Vector& x2,
                const Vector& y2) {
  return std::sqrt((x1 - x2).squaredNorm() + (y1 - y2).squaredNorm());
}

// Largest sampled ratio ||Phi(u) - Phi(v)|| / ||u - v|| over Omega x [0, 1]^r.
double SampleLipschitz(const GameSpec& game, int t) {
  std::mt19937_64 rng(0x243F6A8885A308D3ull);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  auto draw = [&](Vector& x, Vector& y) {
    x.resize(game.dimension());
    for (int i = 0; i < game.n(); ++i) {
      const BoxSet& box = game.private_set(i);
      for (int k = 0; k < game.m(); ++k)
        x[i * game.m() + k] =
            box.lower()[k] + uniform() * (box.upper()[k] - box.lower()[k]);
    }
    y.resize(game.r());
    for (int k = 0; k < game.r(); ++k) y[k] = uniform();
  };
  double best = 0.0;
  Vector x1, y1, x2, y2;
  for (int s = 0; s < 32; ++s) {
    draw(x1, y1);
    draw(x2, y2);
    const double d = Distance(x1, y1, x2, y2);
    if (d == 0.0) continue;
    const Operator a = Evaluate(game, t, x1, y1);
    const Operator b = Evaluate(game, t, x2, y2);
    best = std::max(best, Distance(a.fx, a.fy, b.fx, b.fy) / d);
  }
  return best;
}

}  // namespace

double kkt_residual(const GameSpec& game, int t, const Vector& x,
                    const Vector& y) {
  const Operator op = Evaluate(game, t, x, y);
  const double primal = (x - game.ProjectPrivate(x - op.fx)).norm();
  const double dual = (y - clamp_positive(y - op.fy)).norm();
  return primal + dual;
}

VgneSolution solve_vgne(const GameSpec& game, int t,
                        const VgneSolution* warm_start, VgneOptions options) {
  if (!(options.tol > 0.0)) throw std::invalid_argument("solve_vgne: tol must be > 0");
  if (options.max_iter < 0)
    throw std::invalid_argument("solve_vgne: max_iter must be >= 0");

  Vector x = game.feasible_point();
  Vector y = Vector::Zero(game.r());
  if (warm_start) {
    if (warm_start->x_star.size() != game.dimension() ||
        warm_start->y_star.size() != game.r())
      throw std::invalid_argument("solve_vgne: warm start has wrong shape");
    x = game.ProjectPrivate(warm_start->x_star);
    y = clamp_positive(warm_start->y_star);
  }

  VgneSolution best{x, y, kkt_residual(game, t, x, y), 0, VgneStatus::kMaxIter};
  if (best.residual <= options.tol) {
    best.status = VgneStatus::kConverged;
    return best;
  }

  const double step_cap = std::min(kLipschitzFactor / std::max(SampleLipschitz(game, t), 1e-12), 1.0);
  double alpha = step_cap;
  for (int it = 1; it <= options.max_iter; ++it) {
    const Operator at = Evaluate(game, t, x, y);
    Vector xh, yh;
    Operator mid;
    while (true) {
      xh = game.ProjectPrivate(x - alpha * at.fx);
      yh = clamp_positive(y - alpha * at.fy);
      mid = Evaluate(game, t, xh, yh);
      const double moved = Distance(x, y, xh, yh);
      const double change = Distance(at.fx, at.fy, mid.fx, mid.fy);
      if (alpha * change <= kLipschitzFactor * moved || moved == 0.0) {
        if (alpha * change <= 0.5 * kLipschitzFactor * moved)
          alpha = std::min(alpha * 1.2, step_cap);
        break;
      }
      alpha *= 0.5;
      if (alpha < 1e-14) break;
    }
    x = game.ProjectPrivate(x - alpha * mid.fx);
    y = clamp_positive(y - alpha * mid.fy);

    if (!x.allFinite() || !y.allFinite() || y.norm() > kUnboundedMultiplier) {
      best.iterations = it;
      best.status = VgneStatus::kInfeasible;
      return best;
    }
    const double res = kkt_residual(game, t, x, y);
    if (res < best.residual) {
      best.x_star = x;
      best.y_star = y;
      best.residual = res;
    }
    best.iterations = it;
    if (res <= options.tol) {
      best.status = VgneStatus::kConverged;
      return best;
    }
  }
  return best;
}

void finalize_trace(VgneTrace& trace) {
  trace.theta = 0.0;
  trace.displacement.assign(trace.rounds.size(), 0.0);
  trace.first_failed_round.reset();
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    const VgneSolution& s = trace.rounds[k];
    trace.theta = std::max(trace.theta, s.y_star.norm());
    if (k > 0)
      trace.displacement[k] = (s.x_star - trace.rounds[k - 1].x_star).norm();
    if (!s.converged() && !trace.first_failed_round)
      trace.first_failed_round = static_cast<int>(k) + 1;
  }
}

VgneTrace solve_trace(const GameSpec& game, int T, VgneOptions options) {
  if (T < 1) throw std::invalid_argument("solve_trace: T must be >= 1");
  VgneTrace trace;
  trace.rounds.reserve(T);
  for (int t = 1; t <= T; ++t) {
    const VgneSolution* warm = trace.rounds.empty() ? nullptr : &trace.rounds.back();
    trace.rounds.push_back(solve_vgne(game, t, warm, options));
  }
  finalize_trace(trace);
  return trace;
}

namespace {

// Nonnegative least squares min_{y >= 0} ||a + B y|| by projected gradient.
Vector FitMultiplier(const Vector& a, const Matrix& b) {
  Vector y = Vector::Zero(b.cols());
  if (b.rows() == 0) return y;
  const double l = spectral_norm(b);
  if (l == 0.0) return y;
  const double step = 1.0 / (l * l);
  for (int it = 0; it < 5000; ++it) {
    const Vector next = clamp_positive(y - step * (b.transpose() * (a + b * y)));
    if ((next - y).norm() <= 1e-15 * (1.0 + y.norm())) return next;
    y = next;
  }
  return y;
}

}  // namespace

VgneSolution brute_force_vgne(const GameSpec& game, int t, int points) {
  const int d = game.dimension();
  if (d > 4) throw std::invalid_argument("brute_force_vgne: needs n*m <= 4");
  if (points < 2) throw std::invalid_argument("brute_force_vgne: need >= 2 points");
  const double total = std::pow(static_cast<double>(points), d);
  if (total > 2.5e5) throw std::invalid_argument("brute_force_vgne: grid too large");

  Vector lo(d), hi(d);
  for (int i = 0; i < game.n(); ++i) {
    lo.segment(i * game.m(), game.m()) = game.private_set(i).lower();
    hi.segment(i * game.m(), game.m()) = game.private_set(i).upper();
  }
  const Vector cell = (hi - lo) / (points - 1);

  // Feasible grid points, stored column-wise.
  std::vector<Vector> feasible;
  std::vector<int> idx(d, 0);
  const auto count = static_cast<long>(total);
  for (long k = 0; k < count; ++k) {
    long rem = k;
    Vector x(d);
    for (int j = 0; j < d; ++j) {
      idx[j] = static_cast<int>(rem % points);
      rem /= points;
      x[j] = idx[j] == points - 1 ? hi[j] : lo[j] + idx[j] * cell[j];
    }
    if (game.ConstraintSum(x).maxCoeff() <= 1e-12) feasible.push_back(std::move(x));
  }
  if (feasible.empty())
    return {game.feasible_point(), Vector::Zero(game.r()),
            std::numeric_limits<double>::infinity(), 0, VgneStatus::kInfeasible};

  Matrix pts(d, static_cast<long>(feasible.size()));
  for (std::size_t k = 0; k < feasible.size(); ++k) pts.col(static_cast<long>(k)) = feasible[k];

  double best_gap = std::numeric_limits<double>::infinity();
  long best = 0;
  for (long k = 0; k < pts.cols(); ++k) {
    const Vector f = game.PseudoGradient(t, pts.col(k));
    const double min_dot = (f.transpose() * pts).minCoeff();
    const double gap = f.dot(pts.col(k)) - min_dot;
    if (gap < best_gap) {
      best_gap = gap;
      best = k;
    }
  }

  const Vector x = pts.col(best);
  const Vector f = game.PseudoGradient(t, x);
  Matrix jt(d, game.r());  // stacked J_{g_i}(x_i)^T
  for (int i = 0; i < game.n(); ++i)
    jt.middleRows(i * game.m(), game.m()) =
        game.ConstraintJacobian(i, game.Block(x, i)).transpose();
  std::vector<int> free;
  for (int j = 0; j < d; ++j)
    if (x[j] > lo[j] && x[j] < hi[j]) free.push_back(j);
  Vector a(static_cast<long>(free.size()));
  Matrix b(static_cast<long>(free.size()), game.r());
  for (std::size_t k = 0; k < free.size(); ++k) {
    a[static_cast<long>(k)] = f[free[k]];
    b.row(static_cast<long>(k)) = jt.row(free[k]);
  }
  const Vector y = FitMultiplier(a, b);
  return {x, y, kkt_residual(game, t, x, y), static_cast<int>(pts.cols()),
          VgneStatus::kConverged};
}

void write_trace_csv(const VgneTrace& trace, const std::string& path) {
  std::ostringstream os;
  if (trace.rounds.empty()) throw std::invalid_argument("write_trace_csv: empty trace");
  const long nm = trace.rounds.front().x_star.size();
  const long r = trace.rounds.front().y_star.size();
  os << "t";
  for (long k = 1; k <= nm; ++k) os << ",x*_" << k;
  for (long k = 1; k <= r; ++k) os << ",y*_" << k;
  os << ",residual\n";
  for (std::size_t k = 0; k < trace.rounds.size(); ++k) {
    const VgneSolution& s = trace.rounds[k];
    os << (k + 1);
    for (long j = 0; j < nm; ++j) os << ',' << FormatDouble(s.x_star[j]);
    for (long j = 0; j < r; ++j) os << ',' << FormatDouble(s.y_star[j]);
    os << ',' << FormatDouble(s.residual) << '\n';
  }
  WriteFileAtomic(path, os.str());
}

VgneTrace read_trace_csv(const std::string& path, int nm, int r, double tol) {
  const CsvTable table = ReadCsv(path);
  if (static_cast<int>(table.header.size()) != nm + r + 2 || table.header[0] != "t")
    throw std::runtime_error(path + ": trace header does not match the game");
  VgneTrace trace;
  for (std::size_t k = 0; k < table.rows.size(); ++k) {
    const auto& row = table.rows[k];
    if (static_cast<std::size_t>(ParseDouble(row[0])) != k + 1)
      throw std::runtime_error(path + ": rounds must be 1, 2, ... in order");
    VgneSolution s;
    s.x_star.resize(nm);
    s.y_star.resize(r);
    for (int j = 0; j < nm; ++j) s.x_star[j] = ParseDouble(row[1 + j]);
    for (int j = 0; j < r; ++j) s.y_star[j] = ParseDouble(row[1 + nm + j]);
    s.residual = ParseDouble(row[1 + nm + r]);
    s.status = s.residual <= tol ? VgneStatus::kConverged : VgneStatus::kMaxIter;
    trace.rounds.push_back(std::move(s));
  }
  if (trace.rounds.empty()) throw std::runtime_error(path + ": trace has no rows");
  finalize_trace(trace);
  return trace;
}

}  // namespace ogne
