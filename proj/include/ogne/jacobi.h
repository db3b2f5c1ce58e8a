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

#ifndef OGNE_JACOBI_H_
#define OGNE_JACOBI_H_

#include <stdexcept>

#include "ogne/game.h"

namespace ogne {

class EigenSolverError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SymmetricEigen {
  Vector values;   // non-increasing
  Matrix vectors;  // column k pairs with values[k]
  int sweeps = 0;
};

// Cyclic Jacobi rotations for a dense symmetric matrix. Stops once the
// off-diagonal Frobenius norm drops to tol * max(1, ||A||_F); throws
// EigenSolverError after max_sweeps full sweeps.
SymmetricEigen jacobi_eigen(const Matrix& a, double tol = 1e-12,
                            int max_sweeps = 100);

}  // namespace ogne

#endif  // OGNE_JACOBI_H_
