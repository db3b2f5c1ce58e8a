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

#ifndef OGNE_SCHEDULE_H_
#define OGNE_SCHEDULE_H_

#include <string>

namespace ogne {

// Non-increasing learning rate gamma(t) in [0, 1], t >= 1.
class LearningRate {
 public:
  enum class Kind { kConstant, kPower, kPaperCuberoot };

  // gamma(t) = c, 0 <= c <= 1.
  static LearningRate Constant(double c);
  // gamma(t) = C^eta (D t + C)^(-eta); C, D > 0, eta > 0. Regret bounds need
  // eta < 1/2, which is checked by config validation rather than here.
  static LearningRate Power(double c, double d, double eta);
  // gamma(t) = cbrt(c / (d t + c)); c, d > 0.
  static LearningRate PaperCuberoot(double c, double d);

  double operator()(int t) const;

  Kind kind() const { return kind_; }
  double c() const { return c_; }
  double d() const { return d_; }
  double eta() const { return eta_; }
  std::string Describe() const;

 private:
  LearningRate(Kind kind, double c, double d, double eta)
      : kind_(kind), c_(c), d_(d), eta_(eta) {}

  Kind kind_;
  double c_;
  double d_;
  double eta_;
};

}  // namespace ogne

#endif  // OGNE_SCHEDULE_H_
