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

#ifndef RMPLUS_RNG_H_
#define RMPLUS_RNG_H_

#include <cstdint>
#include <optional>
#include <random>

namespace rmplus {

// Seeded, portable generator for game instances.
//
// Raw bits come from std::mt19937_64, whose output sequence is fixed by the
// C++ standard. Derived variates use explicit transforms so that other
// implementations can reproduce instances bit-for-bit:
//   uniform()  = (next_u64() >> 11) * 2^-53                  in [0, 1)
//   normal()   = Box-Muller on u1 = 1 - uniform(), u2 = uniform():
//                r = sqrt(-2 ln u1); returns r cos(2 pi u2), then on the
//                following call the cached r sin(2 pi u2).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }
  double uniform();
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double normal();

 private:
  std::mt19937_64 engine_;
  std::optional<double> cached_normal_;
};

}  // namespace rmplus

#endif  // RMPLUS_RNG_H_
