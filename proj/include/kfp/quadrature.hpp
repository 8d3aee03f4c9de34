/*
   Copyright 2026 The kinetic-fp Authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

       http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#pragma once

#include <vector>

namespace kfp {

/// Nodes and weights of an n-point Gauss rule.
struct GaussRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss-Hermite rule for the weight exp(-x^2) on the real line.
GaussRule gauss_hermite(int n);

/// Gauss-Legendre rule on [-1, 1].
GaussRule gauss_legendre(int n);

/// Gauss rule for the Gegenbauer weight (1 - t^2)^alpha on [-1, 1], alpha > -1.
GaussRule gauss_gegenbauer(int n, double alpha);

/// Gauss rule for the probabilists' normal weight exp(-z^2/2)/sqrt(2 pi);
/// weights sum to one.
GaussRule gauss_normal(int n);

}  // namespace kfp
