// Copyright 2026 The Confset Authors.
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

#include "confset/confidence.h"

#include <algorithm>
#include <cmath>
#include <exception>
#include <thread>

#include "confset/error.h"

namespace confset {

ConfidenceEstimate EstimateConfidenceSet(const ReplicationModel& model, int n,
                                         const EstimateOptions& options) {
  const int reps = options.replications;
  if (reps < 1) throw InputError("estimate_confidence_set: R must be >= 1");
  if (n < model.MinN()) {
    throw InputError("estimate_confidence_set: n too small for the scenario");
  }
  int threads = options.threads;
  if (threads <= 0) {
    threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  }
  threads = std::min(threads, reps);

  std::vector<Outcome> outcomes(reps);
  std::vector<std::exception_ptr> errors(threads);
  auto work = [&](int worker) {
    try {
      for (int r = worker; r < reps; r += threads) {
        RngStream rng = ReplicationStream(options.master_seed, r);
        outcomes[r] = model.Replicate(n, rng);
      }
    } catch (...) {
      errors[worker] = std::current_exception();
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }

  ConfidenceEstimate est;
  est.n = n;
  est.replications = reps;
  est.master_seed = options.master_seed;
  est.stat_names = model.StatNames();
  const std::size_t ns = est.stat_names.size();
  std::vector<double> sum(ns, 0.0);
  long weak = 0;
  long strong = 0;
  long indeterminate = 0;
  long mismatch = 0;
  for (const Outcome& o : outcomes) {
    if (o.strong && !o.weak) {
      throw DomainError("replication reported strong without weak");
    }
    if (o.stats.size() != ns) {
      throw DomainError("replication returned the wrong number of statistics");
    }
    weak += o.weak;
    strong += o.strong;
    indeterminate += o.indeterminate;
    mismatch += o.mismatch;
    for (std::size_t k = 0; k < ns; ++k) {
      sum[k] += o.stats[k];
    }
  }
  const double r = reps;
  est.p_lower_hat = strong / r;
  est.p_upper_hat = weak / r;
  est.se_lower = std::sqrt(est.p_lower_hat * (1.0 - est.p_lower_hat) / r);
  est.se_upper = std::sqrt(est.p_upper_hat * (1.0 - est.p_upper_hat) / r);
  est.indeterminate_rate = indeterminate / r;
  est.mismatch_rate = mismatch / r;
  for (std::size_t k = 0; k < ns; ++k) {
    const double mean = sum[k] / r;
    double ss = 0.0;
    for (const Outcome& o : outcomes) ss += (o.stats[k] - mean) * (o.stats[k] - mean);
    est.stat_means.push_back(mean);
    est.stat_ses.push_back(reps > 1 ? std::sqrt(ss / (r - 1.0) / r) : 0.0);
  }
  return est;
}

}  // namespace confset
