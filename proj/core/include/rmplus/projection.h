// Copyright 2026 The rmplus Authors.
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

#ifndef RMPLUS_PROJECTION_H_
#define RMPLUS_PROJECTION_H_

// Euclidean projections used by the lifted solvers.

#include <span>

#include "rmplus/types.h"

namespace rmplus {

// [y]+ componentwise.
Vec project_orthant(std::span<const double> y);

// Projection onto {r >= 0, 1^T r = radius} by descending sort and
// cumulative threshold, O(d log d).
Vec project_scaled_simplex(std::span<const double> y, double radius);

// Projection onto the probability simplex.
Strategy project_simplex(std::span<const double> y);

// Projection onto the chopped orthant {r >= 0, 1^T r >= floor}: [y]+ when
// that already has enough mass, otherwise the scaled-simplex projection.
Vec project_chopped(std::span<const double> y, double floor = 1.0);

// Membership in the chopped orthant, with an absolute slack on the mass.
bool in_chopped_orthant(std::span<const double> r, double floor = 1.0,
                        double slack = 1e-12);

}  // namespace rmplus

#endif  // RMPLUS_PROJECTION_H_
