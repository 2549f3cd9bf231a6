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

#include "rmplus/projection.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>
#include <string>

namespace rmplus {

namespace {

void require_finite(std::span<const double> y, const char* who) {
  if (y.empty()) throw std::invalid_argument(std::string(who) + ": empty input");
  if (!all_finite(y)) {
    throw std::invalid_argument(std::string(who) + ": non-finite input");
  }
}

}  // namespace

Vec project_orthant(std::span<const double> y) {
  require_finite(y, "project_orthant");
  Vec out(y.begin(), y.end());
  for (double& v : out) v = std::max(v, 0.0);
  return out;
}

Vec project_scaled_simplex(std::span<const double> y, double radius) {
  require_finite(y, "project_simplex");
  if (!(radius > 0.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("project_simplex: radius must be positive");
  }
  Vec sorted(y.begin(), y.end());
  std::sort(sorted.begin(), sorted.end(), std::greater<>());
  double cumulative = 0.0;
  double theta = 0.0;
  for (std::size_t j = 0; j < sorted.size(); ++j) {
    cumulative += sorted[j];
    const double candidate = (cumulative - radius) / static_cast<double>(j + 1);
    if (sorted[j] - candidate > 0.0) theta = candidate;
  }
  Vec out(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) out[i] = std::max(y[i] - theta, 0.0);
  return out;
}

Strategy project_simplex(std::span<const double> y) {
  Vec p = project_scaled_simplex(y, 1.0);
  // Absorb the last ulp of rounding so the Strategy sum check is exact-ish.
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return Strategy(std::move(p));
}

Vec project_chopped(std::span<const double> y, double floor) {
  Vec positive = project_orthant(y);
  if (!(floor > 0.0) || !std::isfinite(floor)) {
    throw std::invalid_argument("project_chopped: floor must be positive");
  }
  double mass = 0.0;
  for (double v : positive) mass += v;
  if (mass >= floor) return positive;
  return project_scaled_simplex(y, floor);
}

bool in_chopped_orthant(std::span<const double> r, double floor, double slack) {
  double mass = 0.0;
  for (double v : r) {
    if (!std::isfinite(v) || v < 0.0) return false;
    mass += v;
  }
  return mass >= floor - slack;
}

}  // namespace rmplus
