// Copyright 2026 The qvtlab Authors
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

#include "qvt/combinatorics.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <set>
#include <shared_mutex>
#include <utility>

namespace qvt {

namespace {

BigInt binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  BigInt r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

// Read-mostly memo shared by all callers.
class Memo {
 public:
  template <class Fn>
  BigInt get(std::pair<int, int> key, Fn&& compute) {
    {
      std::shared_lock lock(mutex_);
      if (auto it = table_.find(key); it != table_.end()) return it->second;
    }
    BigInt value = compute();
    std::unique_lock lock(mutex_);
    return table_.emplace(key, std::move(value)).first->second;
  }

 private:
  std::shared_mutex mutex_;
  std::map<std::pair<int, int>, BigInt> table_;
};

Memo& memo() {
  static Memo m;
  return m;
}

}  // namespace

BigInt f_arrangements(int n) {
  if (n < 0) throw InvalidArgument("f_arrangements: N must be >= 0");
  return memo().get({0, n}, [n] {
    // N! / (2^floor(N/2) floor(N/2)!) = product of odd numbers below 2*ceil(N/2)
    BigInt r = 1;
    const int m = n % 2 ? n + 1 : n;
    for (int k = m - 1; k > 1; k -= 2) r *= k;
    return r;
  });
}

BigInt g_no_repeats(int n) {
  if (n < 0) throw InvalidArgument("g_no_repeats: N must be >= 0");
  return memo().get({1, n}, [n] {
    const int half = n / 2;
    BigInt s = 0;
    for (int k = 0; k <= half; ++k) {
      BigInt term = binomial(half, k) * f_arrangements(n - 2 * k);
      if (k % 2)
        s -= term;
      else
        s += term;
    }
    return s;
  });
}

BigInt h_exact_repeats(int n, int m) {
  if (n < 0) throw InvalidArgument("h_exact_repeats: N must be >= 0");
  if (m < 0 || m > n / 2) throw InvalidArgument("h_exact_repeats: M must be in [0, floor(N/2)]");
  return binomial(n / 2, m) * g_no_repeats(n - 2 * m);
}

double expected_tq_gates(int n) {
  if (n < 2) throw InvalidArgument("expected_tq_gates: N must be >= 2");
  const int half = n / 2;
  BigInt s = 0;
  for (int k = 0; k <= half; ++k) s += h_exact_repeats(n, k) * (half - k);
  const double ratio = static_cast<double>(s) / static_cast<double>(f_arrangements(n));
  return 3.0 * half + 3.0 * (n - 1) * ratio;
}

double expected_rounds(int n) { return expected_tq_gates(n) / (3.0 * (n / 2)); }

SavingsSample monte_carlo_savings(int n, int trials, Rng& rng) {
  if (n < 2) throw InvalidArgument("monte_carlo_savings: N must be >= 2");
  if (trials < 1) throw InvalidArgument("monte_carlo_savings: trials must be >= 1");
  auto key = [](const QubitPair& p) { return std::minmax(p.first, p.second); };
  double sum = 0, sum2 = 0;
  for (int t = 0; t < trials; ++t) {
    Arrangement prev = nearest_neighbor_arrangement(n);
    long blocks = static_cast<long>(prev.pairs.size());
    for (int r = 1; r < n; ++r) {
      Arrangement cur = random_arrangement(n, rng);
      std::set<std::pair<int, int>> before;
      for (const auto& p : prev.pairs) before.insert(key(p));
      for (const auto& p : cur.pairs) blocks += before.count(key(p)) ? 0 : 1;
      prev = std::move(cur);
    }
    const double tq = 3.0 * static_cast<double>(blocks);
    sum += tq;
    sum2 += tq * tq;
  }
  SavingsSample s;
  s.mean = sum / trials;
  s.std_dev = trials > 1 ? std::sqrt(std::max(0.0, (sum2 - sum * sum / trials) / (trials - 1))) : 0.0;
  return s;
}

GateCountReport gate_count_report(int n, int trials, Rng& rng) {
  GateCountReport r;
  r.n = n;
  r.f = f_arrangements(n);
  r.expected_tq = expected_tq_gates(n);
  r.expected_rounds = expected_rounds(n);
  const double full = 3.0 * (n / 2) * n;
  r.savings_ratio = r.expected_tq / full;
  r.std_dev = monte_carlo_savings(n, trials, rng).std_dev / full;
  return r;
}

}  // namespace qvt
