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

#ifndef OGNE_GAME_H_
#define OGNE_GAME_H_

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ogne {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

// Anything the engine can project onto. Boxes are the canonical private set;
// other convex sets only need to supply a Euclidean projection.
class ProjectableSet {
 public:
  virtual ~ProjectableSet() = default;
  virtual int dimension() const = 0;
  virtual Vector Project(const Vector& v) const = 0;
  virtual bool Contains(const Vector& v, double tol = 0.0) const = 0;
};

// Axis-aligned box [lower, upper]. Bounds must be finite.
class BoxSet final : public ProjectableSet {
 public:
  BoxSet(Vector lower, Vector upper);
  // Scalar convenience: the interval [lower, upper] repeated `dim` times.
  static BoxSet Uniform(int dim, double lower, double upper);

  int dimension() const override { return static_cast<int>(lower_.size()); }
  Vector Project(const Vector& v) const override;
  bool Contains(const Vector& v, double tol = 0.0) const override;

  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Vector Center() const { return 0.5 * (lower_ + upper_); }
  // Corner k, 0 <= k < 2^dim: bit j selects upper bound in coordinate j.
  Vector Corner(std::uint64_t k) const;

 private:
  Vector lower_;
  Vector upper_;
};

// Elementwise clamp to the box. Throws std::invalid_argument on dimension
// mismatch.
Vector project(const BoxSet& set, const Vector& v);

// Elementwise max(v_k, 0).
Vector clamp_positive(const Vector& v);

// Player i's time-varying cost J_i^t. Both callables receive the stacked
// action profile (length n*m); round indices start at 1.
struct CostOracle {
  std::function<double(int t, const Vector& x)> eval;
  std::function<Vector(int t, int i, const Vector& x)> grad_own;
};

// Player i's block g_i : R^m -> R^r of the shared constraint sum_i g_i <= 0.
struct ConstraintBlock {
  std::function<Vector(const Vector& xi)> eval;
  std::function<Matrix(const Vector& xi)> jacobian;  // r x m
};

// Bound constants: k0 = sup ||dg_i||, k1 = sup ||x_i||, k2 = sup ||g_i||,
// k3 = sup ||grad_i J_i^t||, each taken over the private sets (and rounds).
struct Kappas {
  double k0 = 0.0;
  double k1 = 0.0;
  double k2 = 0.0;
  double k3 = 0.0;
  bool certified = false;
};

struct GameDefinition {
  std::string name;
  int n = 0;
  int m = 0;
  int r = 0;
  std::vector<CostOracle> costs;
  std::vector<ConstraintBlock> constraints;
  std::vector<BoxSet> private_sets;
  // A point of the coupled feasible set; validated on construction.
  Vector feasible_point;
  std::optional<double> mu;
  std::optional<double> ell;
  std::optional<Kappas> kappa;
  // True when J^t does not depend on t.
  bool time_invariant = false;
  // Optional suggested starting actions (length n*m), e.g. a published setup.
  std::optional<Vector> default_initial_actions;
};

// The game Gamma(V, chi, J^t). Immutable once built.
class GameSpec {
 public:
  explicit GameSpec(GameDefinition def);

  const std::string& name() const { return def_.name; }
  int n() const { return def_.n; }
  int m() const { return def_.m; }
  int r() const { return def_.r; }
  int dimension() const { return def_.n * def_.m; }

  const BoxSet& private_set(int i) const { return def_.private_sets.at(i); }
  const std::vector<BoxSet>& private_sets() const { return def_.private_sets; }
  const Vector& feasible_point() const { return def_.feasible_point; }
  const std::optional<double>& mu() const { return def_.mu; }
  const std::optional<double>& ell() const { return def_.ell; }
  const std::optional<Kappas>& kappa() const { return def_.kappa; }
  bool time_invariant() const { return def_.time_invariant; }
  const std::optional<Vector>& default_initial_actions() const {
    return def_.default_initial_actions;
  }

  double Cost(int i, int t, const Vector& x) const;
  Vector Gradient(int i, int t, const Vector& x) const;
  Vector Constraint(int i, const Vector& xi) const;
  Matrix ConstraintJacobian(int i, const Vector& xi) const;

  // Stacked own-action gradients F^t(x).
  Vector PseudoGradient(int t, const Vector& x) const;
  // sum_i g_i(x_i).
  Vector ConstraintSum(const Vector& x) const;

  // x_i as a view into the stacked profile.
  auto Block(const Vector& x, int i) const { return x.segment(i * m(), m()); }
  bool InPrivateSets(const Vector& x, double tol = 0.0) const;
  Vector ProjectPrivate(const Vector& x) const;

 private:
  GameDefinition def_;
};

struct RoundRange {
  int first = 1;
  int last = 1;
};

// Estimates the kappa constants by deterministic Latin-hypercube sampling of
// the private sets plus every box corner (full-profile corners only when
// n*m <= 12). Samples come in fixed-size batches generated from
// (seed, batch index), so increasing `samples` only ever adds points.
Kappas estimate_kappas(const GameSpec& game, int samples, std::uint64_t seed,
                       RoundRange rounds);

// Largest singular value of a (small, dense) matrix.
double spectral_norm(const Matrix& a);

}  // namespace ogne

#endif  // OGNE_GAME_H_
