// Copyright 2026 The cxrlabel Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef CXRLABEL_SPECIAL_FUNCTIONS_HPP_
#define CXRLABEL_SPECIAL_FUNCTIONS_HPP_

namespace cxrlabel {

// Regularized lower and upper incomplete gamma, P(a,x) and Q(a,x) = 1 - P.
// Requires a > 0 and x >= 0; returns NaN otherwise.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Regularized incomplete beta I_x(a,b) for a, b > 0 and 0 <= x <= 1.
double regularized_beta(double a, double b, double x);

// Upper tail of the chi-square distribution, P(X >= x).
double chi_square_sf(double x, double dof);

// Two-sided Student-t tail, P(|T| >= |t|).
double student_t_two_sided(double t, double dof);

}  // namespace cxrlabel

#endif  // CXRLABEL_SPECIAL_FUNCTIONS_HPP_
