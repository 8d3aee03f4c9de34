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

namespace kfp {

/// Physicists' Hermite polynomial H_k(x) (leading coefficient 2^k), by the
/// recurrence H_{k+1} = 2x H_k - 2k H_{k-1}.
double hermite(int k, double x);

/// Gamma(x) / Gamma(x + a) for x > 0, a >= 0.
double gamma_ratio(double x, double a);

/// Natural log of gamma_ratio.
double log_gamma_ratio(double x, double a);

/// Associated Legendre function of degree s and order r in q dimensions,
/// normalised so that its large-q limit at t = w / sqrt(2 N eps0),
/// q = 3N - p, is a scaled Hermite polynomial:
///
///   P_s^r(t;q) = sqrt(q)^{s+r} (s!/2^r) sum_l (-1/4)^l (1-t^2)^{l+r/2}
///                t^{s-r-2l} / (l! (s-r-2l)!) * Gamma((q-1)/2)/Gamma(l+r+(q-1)/2)
///
/// Each term is accumulated from its logarithm, so no intermediate factor
/// overflows even for q ~ 1e6. Requires 0 <= r <= s, |t| <= 1, q >= 2.
double assoc_legendre_qdim(int s, int r, double t, double q);

/// Pointwise N -> infinity limit of assoc_legendre_qdim(s, r, w/sqrt(2N eps0), 3N-p):
///
///   2^{(r-s)/2} * s!/(s-r)! * H_{s-r}(sqrt(3/(4 eps0)) w).
double legendre_limit(int s, int r, double w, double eps0);

/// |assoc_legendre_qdim(s, r, w/sqrt(2 N eps0), 3N - p) - legendre_limit(s, r, w, eps0)|.
/// Requires N > max(p/3, w^2/(2 eps0)).
double asymptotic_error(int s, int r, double w, double eps0, int p, long long n_particles);

/// log(k!) for k >= 0.
double log_factorial(int k);

}  // namespace kfp
