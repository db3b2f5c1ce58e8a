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

#include "ogne/benchmarks.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include "ogne/jacobi.h"

namespace ogne {

namespace {

constexpr int kFirms = 5;
constexpr double kCapacity[kFirms] = {10.0, 15.0, 8.0, 8.0, 15.0};

GameSpec MakeCournot(bool frozen) {
  GameDefinition def;
  def.name = frozen ? "cournot-static" : "cournot-siv";
  def.n = kFirms;
  def.m = 1;
  def.r = 1;
  auto phase = [frozen](int t) { return frozen ? 0.0 : std::sin(t / 12.0); };
  for (int i = 0; i < kFirms; ++i) {
    const double idx = i + 1;
    auto alpha = [phase](int t) { return phase(t); };
    auto beta = [phase, idx](int t) { return 45.0 + 5.0 * idx - 0.5 * idx * phase(t); };
    CostOracle cost;
    cost.eval = [=](int t, const Vector& x) {
      return alpha(t) * x[i] - x[i] * (beta(t) - x.sum());
    };
    cost.grad_own = [=](int t, int, const Vector& x) {
      return Vector::Constant(1, alpha(t) - beta(t) + x.sum() + x[i]);
    };
    def.costs.push_back(std::move(cost));

    const double cap = kCapacity[i];
    ConstraintBlock g;
    g.eval = [cap](const Vector& xi) { return Vector::Constant(1, xi[0] - cap); };
    g.jacobian = [](const Vector&) { return Matrix::Ones(1, 1); };
    def.constraints.push_back(std::move(g));
    def.private_sets.push_back(BoxSet::Uniform(1, 0.0, 30.0));
  }
  def.feasible_point = Vector::Zero(kFirms);
  // Pseudo-gradient Jacobian I + 11^T: smallest eigenvalue 1.
  def.mu = 1.0;
  def.ell = 1.0;
  // k0 = |dg| = 1, k1 = 30, k2 = max_i max(l_i, 30 - l_i) = 22. k3 is the
  // extreme of the affine gradient over the box and sin in [-1, 1]: at
  // x = 30 for firm 1 it reaches 130 + 1.5 = 131.5 (130 when frozen).
  def.kappa = Kappas{1.0, 30.0, 22.0, frozen ? 130.0 : 131.5, true};
  def.time_invariant = frozen;
  Vector init(kFirms);
  init << 0.0, 30.0, 10.0, 10.0, 30.0;
  def.default_initial_actions = init;
  return GameSpec(std::move(def));
}

bool IsSymmetric(const Matrix& a) {
  return a.rows() == a.cols() && (a - a.transpose()).cwiseAbs().maxCoeff() <= 1e-12;
}

}  // namespace

GameSpec cournot_game() { return MakeCournot(false); }

GameSpec static_cournot_game() { return MakeCournot(true); }

Vector cournot_capacities() {
  return Eigen::Map<const Vector>(kCapacity, kFirms);
}

Vector cournot_reference_xi(int t) { return cournot_reference_xi_at(std::sin(t / 12.0)); }

Vector cournot_reference_xi_at(double s) {
  Vector xi(kFirms);
  for (int i = 0; i < kFirms; ++i)
    xi[i] = std::clamp(8.0 * s / 3.0 - 5.0 + 5.0 * (i + 1), 0.0, 30.0);
  return xi;
}

QuadraticTestGame::QuadraticTestGame(QuadraticGameParams p) : params_(std::move(p)) {
  const int n = params_.n, m = params_.m, r = params_.r;
  const auto un = static_cast<std::size_t>(n);
  if (n < 2 || m < 1 || r < 1)
    throw std::invalid_argument("quadratic_test_game: bad n, m or r");
  if (params_.q.size() != un || params_.coupling.size() != un ||
      params_.c.size() != un || params_.g.size() != un || params_.h.size() != un ||
      params_.boxes.size() != un)
    throw std::invalid_argument("quadratic_test_game: need one block per player");
  for (int i = 0; i < n; ++i) {
    const Matrix& q = params_.q[i];
    if (q.rows() != m || !IsSymmetric(q))
      throw std::invalid_argument("quadratic_test_game: Q_i must be symmetric m x m");
    if (jacobi_eigen(q).values.minCoeff() <= 0.0)
      throw std::invalid_argument("quadratic_test_game: Q_" + std::to_string(i) +
                                  " is not positive definite");
    if (params_.coupling[i].rows() != m || params_.coupling[i].cols() != m ||
        params_.c[i].size() != m || params_.g[i].rows() != r ||
        params_.g[i].cols() != m || params_.h[i].size() != r)
      throw std::invalid_argument("quadratic_test_game: block shape mismatch");
  }

  const int d = n * m;
  jacobian_ = Matrix::Zero(d, d);
  offset_.resize(d);
  big_g_.resize(r, d);
  big_h_ = Vector::Zero(r);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j)
      jacobian_.block(i * m, j * m, m, m) =
          i == j ? params_.q[i] : Matrix(params_.coupling[i].transpose());
    offset_.segment(i * m, m) = params_.c[i];
    big_g_.middleCols(i * m, m) = params_.g[i];
    big_h_ += params_.h[i];
  }

  GameDefinition def;
  def.name = "quadratic";
  def.n = n;
  def.m = m;
  def.r = r;
  for (int i = 0; i < n; ++i) {
    const Matrix q = params_.q[i], rc = params_.coupling[i], gi = params_.g[i];
    const Vector c = params_.c[i], hi = params_.h[i];
    auto others = [i, m, n](const Vector& x) {
      Vector s = Vector::Zero(m);
      for (int j = 0; j < n; ++j)
        if (j != i) s += x.segment(j * m, m);
      return s;
    };
    CostOracle cost;
    cost.eval = [=](int, const Vector& x) {
      const Vector xi = x.segment(i * m, m);
      return 0.5 * xi.dot(q * xi) + others(x).dot(rc * xi) + c.dot(xi);
    };
    cost.grad_own = [=](int, int, const Vector& x) -> Vector {
      const Vector xi = x.segment(i * m, m);
      return q * xi + rc.transpose() * others(x) + c;
    };
    def.costs.push_back(std::move(cost));
    ConstraintBlock block;
    block.eval = [gi, hi](const Vector& xi) -> Vector { return gi * xi - hi; };
    block.jacobian = [gi](const Vector&) { return gi; };
    def.constraints.push_back(std::move(block));
    def.private_sets.push_back(params_.boxes[i]);
  }

  if (params_.feasible_point) {
    def.feasible_point = *params_.feasible_point;
  } else {
    Vector centre(d), lower(d), upper(d);
    for (int i = 0; i < n; ++i) {
      centre.segment(i * m, m) = params_.boxes[i].Center();
      lower.segment(i * m, m) = params_.boxes[i].lower();
      upper.segment(i * m, m) = params_.boxes[i].upper();
    }
    def.feasible_point = centre;
    for (const Vector* cand : {&centre, &lower, &upper}) {
      if ((big_g_ * *cand - big_h_).maxCoeff() <= 0.0) {
        def.feasible_point = *cand;
        break;
      }
    }
  }

  const double mu = jacobi_eigen(0.5 * (jacobian_ + jacobian_.transpose())).values.minCoeff();
  if (mu > 0.0) def.mu = mu;
  double ell = 0.0;
  for (const Matrix& rc : params_.coupling) ell = std::max(ell, spectral_norm(rc));
  if (ell > 0.0) def.ell = ell;
  def.time_invariant = true;
  spec_ = std::make_shared<const GameSpec>(std::move(def));
}

std::optional<KktSolution> QuadraticTestGame::SolvePattern(const std::string& pattern) const {
  constexpr double kTol = 1e-9;
  const int d = static_cast<int>(offset_.size());
  const int r = params_.r;
  if (static_cast<int>(pattern.size()) != d + r)
    throw std::invalid_argument("SolvePattern: pattern length must be n*m + r");
  Vector lo(d), hi(d);
  for (int i = 0; i < params_.n; ++i) {
    lo.segment(i * params_.m, params_.m) = params_.boxes[i].lower();
    hi.segment(i * params_.m, params_.m) = params_.boxes[i].upper();
  }

  Matrix sys = Matrix::Zero(d + r, d + r);
  Vector rhs = Vector::Zero(d + r);
  for (int k = 0; k < d; ++k) {
    switch (pattern[k]) {
      case 'f':
        sys.block(k, 0, 1, d) = jacobian_.row(k);
        sys.block(k, d, 1, r) = big_g_.col(k).transpose();
        rhs[k] = -offset_[k];
        break;
      case 'l':
      case 'u':
        sys(k, k) = 1.0;
        rhs[k] = pattern[k] == 'l' ? lo[k] : hi[k];
        break;
      default:
        throw std::invalid_argument("SolvePattern: bad coordinate code");
    }
  }
  for (int j = 0; j < r; ++j) {
    const char code = pattern[d + j];
    if (code == 'a') {
      sys.block(d + j, 0, 1, d) = big_g_.row(j);
      rhs[d + j] = big_h_[j];
    } else if (code == 'i') {
      sys(d + j, d + j) = 1.0;
    } else {
      throw std::invalid_argument("SolvePattern: bad constraint code");
    }
  }
  Eigen::FullPivLU<Matrix> lu(sys);
  if (!lu.isInvertible()) return std::nullopt;
  const Vector sol = lu.solve(rhs);
  const Vector x = sol.head(d), y = sol.tail(r);

  const Vector station = jacobian_ * x + offset_ + big_g_.transpose() * y;
  for (int k = 0; k < d; ++k) {
    if (x[k] < lo[k] - kTol || x[k] > hi[k] + kTol) return std::nullopt;
    if (pattern[k] == 'l' && station[k] < -kTol) return std::nullopt;
    if (pattern[k] == 'u' && station[k] > kTol) return std::nullopt;
  }
  const Vector slack = big_g_ * x - big_h_;
  for (int j = 0; j < r; ++j) {
    if (y[j] < -kTol) return std::nullopt;
    if (pattern[d + j] == 'i' && slack[j] > kTol) return std::nullopt;
  }
  return KktSolution{x, y.cwiseMax(0.0), pattern};
}

KktSolution QuadraticTestGame::ClosedForm() const {
  const int d = static_cast<int>(offset_.size());
  const int r = params_.r;
  if (d > 8 || r > 4)
    throw std::invalid_argument("ClosedForm: enumeration needs n*m <= 8, r <= 4");
  long patterns = 1;
  for (int k = 0; k < d; ++k) patterns *= 3;
  std::string p(d + r, 'f');
  for (long code = 0; code < patterns; ++code) {
    long rem = code;
    for (int k = 0; k < d; ++k) {
      p[k] = "flu"[rem % 3];
      rem /= 3;
    }
    for (int mask = 0; mask < (1 << r); ++mask) {
      for (int j = 0; j < r; ++j) p[d + j] = (mask >> j) & 1 ? 'a' : 'i';
      if (auto sol = SolvePattern(p)) return *sol;
    }
  }
  throw std::runtime_error("ClosedForm: no activity pattern satisfies the KKT system");
}

QuadraticTestGame random_quadratic_game(int n, int m, std::uint64_t seed) {
  if (n < 2 || m < 1) throw std::invalid_argument("random_quadratic_game: bad size");
  std::mt19937_64 rng(seed);
  auto uniform = [&rng](double a, double b) {
    return a + (b - a) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  QuadraticGameParams p;
  p.n = n;
  p.m = m;
  p.r = 1;
  for (int i = 0; i < n; ++i) {
    Matrix a(m, m);
    for (int k = 0; k < a.size(); ++k) a.data()[k] = uniform(-1.0, 1.0);
    p.q.push_back(a.transpose() * a + (1.0 + m) * Matrix::Identity(m, m));
    Matrix rc(m, m);
    for (int k = 0; k < rc.size(); ++k) rc.data()[k] = uniform(-0.2, 0.2) / n;
    p.coupling.push_back(rc);
    Vector c(m);
    for (int k = 0; k < m; ++k) c[k] = uniform(-5.0, 5.0);
    p.c.push_back(c);
    p.g.push_back(Matrix::Ones(1, m));
    p.h.push_back(Vector::Constant(1, uniform(0.0, 3.0)));
    p.boxes.push_back(BoxSet::Uniform(m, -10.0, 10.0));
  }
  p.feasible_point = Vector::Zero(n * m);
  return QuadraticTestGame(std::move(p));
}

}  // namespace ogne
