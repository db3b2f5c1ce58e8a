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

#include "ogne/game.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

#include "ogne/jacobi.h"

namespace ogne {

BoxSet::BoxSet(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() != upper_.size() || lower_.size() == 0)
    throw std::invalid_argument("BoxSet: bound dimensions differ or are empty");
  for (int k = 0; k < lower_.size(); ++k) {
    if (!std::isfinite(lower_[k]) || !std::isfinite(upper_[k]))
      throw std::invalid_argument("BoxSet: bounds must be finite");
    if (lower_[k] > upper_[k])
      throw std::invalid_argument("BoxSet: lower bound exceeds upper bound");
  }
}

BoxSet BoxSet::Uniform(int dim, double lower, double upper) {
  return BoxSet(Vector::Constant(dim, lower), Vector::Constant(dim, upper));
}

Vector BoxSet::Project(const Vector& v) const {
  if (v.size() != lower_.size())
    throw std::invalid_argument("project: dimension mismatch");
  return v.cwiseMax(lower_).cwiseMin(upper_);
}

bool BoxSet::Contains(const Vector& v, double tol) const {
  if (v.size() != lower_.size()) return false;
  for (int k = 0; k < v.size(); ++k)
    if (!(v[k] >= lower_[k] - tol && v[k] <= upper_[k] + tol)) return false;
  return true;
}

Vector BoxSet::Corner(std::uint64_t k) const {
  Vector c(lower_.size());
  for (int j = 0; j < c.size(); ++j)
    c[j] = ((k >> j) & 1u) ? upper_[j] : lower_[j];
  return c;
}

Vector project(const BoxSet& set, const Vector& v) { return set.Project(v); }

Vector clamp_positive(const Vector& v) { return v.cwiseMax(0.0); }

GameSpec::GameSpec(GameDefinition def) : def_(std::move(def)) {
  const auto n = static_cast<std::size_t>(def_.n);
  if (def_.n < 2) throw std::invalid_argument("GameSpec: need n >= 2 players");
  if (def_.m < 1 || def_.r < 1)
    throw std::invalid_argument("GameSpec: m and r must be positive");
  if (def_.costs.size() != n || def_.constraints.size() != n ||
      def_.private_sets.size() != n)
    throw std::invalid_argument("GameSpec: need one cost, constraint block "
                                "and private set per player");
  for (const auto& c : def_.costs)
    if (!c.eval || !c.grad_own)
      throw std::invalid_argument("GameSpec: empty cost oracle");
  for (const auto& g : def_.constraints)
    if (!g.eval || !g.jacobian)
      throw std::invalid_argument("GameSpec: empty constraint block");
  for (const auto& s : def_.private_sets)
    if (s.dimension() != def_.m)
      throw std::invalid_argument("GameSpec: private set dimension != m");
  if (def_.mu && !(*def_.mu > 0.0))
    throw std::invalid_argument("GameSpec: mu must be positive");
  if (def_.ell && !(*def_.ell > 0.0))
    throw std::invalid_argument("GameSpec: ell must be positive");

  if (def_.feasible_point.size() != dimension())
    throw std::invalid_argument("GameSpec: feasible point has wrong length");
  if (!InPrivateSets(def_.feasible_point))
    throw std::invalid_argument(
        "GameSpec: feasible point lies outside the private sets");
  const Vector g = ConstraintSum(def_.feasible_point);
  if (g.size() != def_.r)
    throw std::invalid_argument("GameSpec: constraint block returned wrong length");
  if (g.maxCoeff() > 1e-12)
    throw std::invalid_argument(
        "GameSpec: feasible point violates the shared constraint");
  if (def_.default_initial_actions &&
      (def_.default_initial_actions->size() != dimension() ||
       !InPrivateSets(*def_.default_initial_actions)))
    throw std::invalid_argument("GameSpec: default initial actions infeasible");
}

double GameSpec::Cost(int i, int t, const Vector& x) const {
  return def_.costs.at(i).eval(t, x);
}

Vector GameSpec::Gradient(int i, int t, const Vector& x) const {
  return def_.costs.at(i).grad_own(t, i, x);
}

Vector GameSpec::Constraint(int i, const Vector& xi) const {
  return def_.constraints.at(i).eval(xi);
}

Matrix GameSpec::ConstraintJacobian(int i, const Vector& xi) const {
  return def_.constraints.at(i).jacobian(xi);
}

Vector GameSpec::PseudoGradient(int t, const Vector& x) const {
  Vector f(dimension());
  for (int i = 0; i < n(); ++i) f.segment(i * m(), m()) = Gradient(i, t, x);
  return f;
}

Vector GameSpec::ConstraintSum(const Vector& x) const {
  Vector s = Vector::Zero(r());
  for (int i = 0; i < n(); ++i) s += Constraint(i, Block(x, i));
  return s;
}

bool GameSpec::InPrivateSets(const Vector& x, double tol) const {
  if (x.size() != dimension()) return false;
  for (int i = 0; i < n(); ++i)
    if (!private_set(i).Contains(Block(x, i), tol)) return false;
  return true;
}

Vector GameSpec::ProjectPrivate(const Vector& x) const {
  Vector out(dimension());
  for (int i = 0; i < n(); ++i)
    out.segment(i * m(), m()) = private_set(i).Project(Block(x, i));
  return out;
}

double spectral_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  const Matrix gram = a.rows() >= a.cols() ? Matrix(a.transpose() * a)
                                           : Matrix(a * a.transpose());
  return std::sqrt(std::max(0.0, jacobi_eigen(gram).values[0]));
}

namespace {

constexpr int kBatch = 16;
constexpr int kMaxCornerDim = 12;

double UnitDouble(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// One Latin-hypercube batch of kBatch points in `box`, fully determined by
// (seed, batch).
std::vector<Vector> LatinBatch(const BoxSet& box, std::uint64_t seed,
                               std::uint64_t batch) {
  std::mt19937_64 rng(seed ^ (0x9E3779B97F4A7C15ull * (batch + 1)));
  const int d = box.dimension();
  std::vector<Vector> pts(kBatch, Vector(d));
  std::vector<int> strata(kBatch);
  for (int j = 0; j < d; ++j) {
    std::iota(strata.begin(), strata.end(), 0);
    for (int k = kBatch - 1; k > 0; --k)
      std::swap(strata[k], strata[rng() % static_cast<std::uint64_t>(k + 1)]);
    const double width = box.upper()[j] - box.lower()[j];
    for (int k = 0; k < kBatch; ++k)
      pts[k][j] = box.lower()[j] + width * (strata[k] + UnitDouble(rng)) / kBatch;
  }
  return pts;
}

std::vector<Vector> SamplePoints(const BoxSet& box, int samples,
                                 std::uint64_t seed) {
  std::vector<Vector> pts;
  pts.push_back(box.Center());
  if (box.dimension() <= kMaxCornerDim)
    for (std::uint64_t k = 0; k < (1ull << box.dimension()); ++k)
      pts.push_back(box.Corner(k));
  for (int b = 0; b * kBatch < samples; ++b) {
    auto batch = LatinBatch(box, seed, static_cast<std::uint64_t>(b));
    const int take = std::min(kBatch, samples - b * kBatch);
    pts.insert(pts.end(), batch.begin(), batch.begin() + take);
  }
  return pts;
}

BoxSet ProfileBox(const GameSpec& game) {
  Vector lo(game.dimension()), hi(game.dimension());
  for (int i = 0; i < game.n(); ++i) {
    lo.segment(i * game.m(), game.m()) = game.private_set(i).lower();
    hi.segment(i * game.m(), game.m()) = game.private_set(i).upper();
  }
  return BoxSet(lo, hi);
}

}  // namespace

Kappas estimate_kappas(const GameSpec& game, int samples, std::uint64_t seed,
                       RoundRange rounds) {
  if (samples < 0) throw std::invalid_argument("estimate_kappas: samples < 0");
  if (rounds.first < 1 || rounds.last < rounds.first)
    throw std::invalid_argument("estimate_kappas: bad round range");
  Kappas k;
  for (int i = 0; i < game.n(); ++i) {
    const auto& box = game.private_set(i);
    for (const Vector& xi : SamplePoints(box, samples, seed + i)) {
      k.k1 = std::max(k.k1, xi.norm());
      k.k2 = std::max(k.k2, game.Constraint(i, xi).norm());
      k.k0 = std::max(k.k0, spectral_norm(game.ConstraintJacobian(i, xi)));
    }
  }
  const BoxSet profile = ProfileBox(game);
  const auto points = SamplePoints(profile, samples, seed ^ 0x5bd1e995ull);
  const int last = game.time_invariant() ? rounds.first : rounds.last;
  for (int t = rounds.first; t <= last; ++t)
    for (const Vector& x : points)
      for (int i = 0; i < game.n(); ++i)
        k.k3 = std::max(k.k3, game.Gradient(i, t, x).norm());
  k.certified = false;
  return k;
}

}  // namespace ogne
