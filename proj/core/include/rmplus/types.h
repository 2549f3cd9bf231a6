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

#ifndef RMPLUS_TYPES_H_
#define RMPLUS_TYPES_H_

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace rmplus {

using Vec = std::vector<double>;

// Thrown when a non-finite value shows up in an iterate. Carries the
// iteration at which it was detected so drivers can report it.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, long iteration)
      : std::runtime_error(what), iteration_(iteration) {}
  long iteration() const { return iteration_; }

 private:
  long iteration_;
};

// A point of the probability simplex. Construction validates the simplex
// invariant: entries >= 0 and sum within 1e-12 of one.
class Strategy {
 public:
  static constexpr double kSumTolerance = 1e-12;

  Strategy() = default;
  explicit Strategy(Vec probs);

  static Strategy uniform(std::size_t d);
  static Strategy pure(std::size_t d, std::size_t action);

  std::size_t size() const { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  const Vec& probs() const { return probs_; }
  std::span<const double> view() const { return probs_; }

  friend bool operator==(const Strategy&, const Strategy&) = default;

 private:
  Vec probs_;
};

// Per-action loss; entries must be finite wherever a solver consumes it.
struct LossVector {
  Vec values;

  std::size_t size() const { return values.size(); }
  double operator[](std::size_t i) const { return values[i]; }
};

bool all_finite(std::span<const double> v);
double dot(std::span<const double> a, std::span<const double> b);
double l1_norm(std::span<const double> v);
double l2_norm(std::span<const double> v);
double l2_distance(std::span<const double> a, std::span<const double> b);
double squared_distance(std::span<const double> a, std::span<const double> b);

}  // namespace rmplus

#endif  // RMPLUS_TYPES_H_
