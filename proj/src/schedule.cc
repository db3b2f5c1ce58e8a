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

#include "ogne/schedule.h"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace ogne {

LearningRate LearningRate::Constant(double c) {
  if (!(c >= 0.0 && c <= 1.0))
    throw std::invalid_argument("constant learning rate must lie in [0, 1]");
  return LearningRate(Kind::kConstant, c, 0.0, 0.0);
}

LearningRate LearningRate::Power(double c, double d, double eta) {
  if (!(c > 0.0 && d > 0.0 && eta > 0.0) || !std::isfinite(c) ||
      !std::isfinite(d) || !std::isfinite(eta))
    throw std::invalid_argument("power learning rate needs C, D, eta > 0");
  return LearningRate(Kind::kPower, c, d, eta);
}

LearningRate LearningRate::PaperCuberoot(double c, double d) {
  if (!(c > 0.0 && d > 0.0) || !std::isfinite(c) || !std::isfinite(d))
    throw std::invalid_argument("cube-root learning rate needs c, d > 0");
  return LearningRate(Kind::kPaperCuberoot, c, d, 1.0 / 3.0);
}

double LearningRate::operator()(int t) const {
  if (t < 1) throw std::invalid_argument("learning rate: rounds start at 1");
  switch (kind_) {
    case Kind::kConstant:
      return c_;
    case Kind::kPower:
      return std::pow(c_ / (d_ * t + c_), eta_);
    case Kind::kPaperCuberoot:
      return std::cbrt(c_ / (d_ * t + c_));
  }
  return 0.0;
}

std::string LearningRate::Describe() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::kConstant:
      os << "constant(" << c_ << ")";
      break;
    case Kind::kPower:
      os << "power(C=" << c_ << ", D=" << d_ << ", eta=" << eta_ << ")";
      break;
    case Kind::kPaperCuberoot:
      os << "cuberoot(c=" << c_ << ", d=" << d_ << ")";
      break;
  }
  return os.str();
}

}  // namespace ogne
