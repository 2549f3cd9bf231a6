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

#ifndef RMPLUS_DETAIL_REGRET_KERNELS_H_
#define RMPLUS_DETAIL_REGRET_KERNELS_H_

// Scalar-generic forms of the RM+ family updates. The double API in
// core_regret.h and the exact rational replay both instantiate these, so the
// two arithmetic modes cannot drift apart.

#include <cstddef>
#include <vector>

namespace rmplus::detail {

template <class S>
std::vector<S> normalize(const std::vector<S>& r) {
  S total = S(0);
  for (const S& v : r) total += v;
  std::vector<S> out(r.size());
  if (total > S(0)) {
    for (std::size_t i = 0; i < r.size(); ++i) out[i] = r[i] / total;
  } else {
    const S u = S(1) / S(static_cast<long>(r.size()));
    for (auto& v : out) v = u;
  }
  return out;
}

// f(x, l) = l - <x, l> 1
template <class S>
std::vector<S> regret_loss(const std::vector<S>& x, const std::vector<S>& loss) {
  S inner = S(0);
  for (std::size_t i = 0; i < x.size(); ++i) inner += x[i] * loss[i];
  std::vector<S> f(loss.size());
  for (std::size_t i = 0; i < loss.size(); ++i) f[i] = loss[i] - inner;
  return f;
}

template <class S>
std::vector<S> positive_part(std::vector<S> v) {
  for (auto& e : v) {
    if (e < S(0)) e = S(0);
  }
  return v;
}

template <class S>
struct KernelStep {
  std::vector<S> x;           // strategy played this round
  std::vector<S> lifted;      // the point x was normalized from
  std::vector<S> r_next;      // aggregate payoff after the update
  std::vector<S> prediction;  // prediction for the next round
};

template <class S>
KernelStep<S> rm_plus(const std::vector<S>& r, const std::vector<S>& loss) {
  KernelStep<S> out;
  out.lifted = r;
  out.x = normalize(r);
  const auto f = regret_loss(out.x, loss);
  out.r_next.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out.r_next[i] = r[i] - f[i];
  out.r_next = positive_part(std::move(out.r_next));
  out.prediction.assign(r.size(), S(0));
  return out;
}

// Predictive RM+: plays g([R + m]+), then R <- [R - f]+ and m <- -f.
template <class S>
KernelStep<S> prm_plus(const std::vector<S>& r, const std::vector<S>& m,
                       const std::vector<S>& loss) {
  KernelStep<S> out;
  out.lifted.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) out.lifted[i] = r[i] + m[i];
  out.lifted = positive_part(std::move(out.lifted));
  out.x = normalize(out.lifted);
  const auto f = regret_loss(out.x, loss);
  out.r_next.resize(r.size());
  out.prediction.resize(r.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    out.r_next[i] = r[i] - f[i];
    out.prediction[i] = -f[i];
  }
  out.r_next = positive_part(std::move(out.r_next));
  return out;
}

}  // namespace rmplus::detail

#endif  // RMPLUS_DETAIL_REGRET_KERNELS_H_
