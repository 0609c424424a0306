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

#ifndef CONFSET_CONFIDENCE_H_
#define CONFSET_CONFIDENCE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "confset/rng.h"

namespace confset {

// Result of one simulated dataset.
struct Outcome {
  // The action is weakly (resp. certified strongly) B(z_n)-rationalizable.
  bool weak = false;
  bool strong = false;
  // The strong test could neither certify nor refute.
  bool indeterminate = false;
  // Cross-check mode: the exact checker and the solver disagreed.
  bool mismatch = false;
  // Per-dataset statistics named by ReplicationModel::StatNames(); NaN when
  // not available.
  std::vector<double> stats;
};

// A scenario packaged for Monte Carlo: draws one dataset of size n from the
// stream and evaluates it. Implementations must be safe to call
// concurrently.
class ReplicationModel {
 public:
  virtual ~ReplicationModel() = default;
  virtual Outcome Replicate(int n, RngStream& rng) const = 0;
  virtual std::vector<std::string> StatNames() const { return {}; }
  // Smallest admissible dataset size.
  virtual int MinN() const { return 1; }
};

// The stream for replication `index`.
inline RngStream ReplicationStream(std::uint64_t master_seed,
                                   std::uint64_t index) {
  return RngStream(DeriveReplicationSeed(master_seed, index));
}

struct ConfidenceEstimate {
  int n = 0;
  int replications = 0;
  std::uint64_t master_seed = 0;
  double p_lower_hat = 0.0;
  double p_upper_hat = 0.0;
  // sqrt(p (1 - p) / R).
  double se_lower = 0.0;
  double se_upper = 0.0;
  double indeterminate_rate = 0.0;
  double mismatch_rate = 0.0;
  std::vector<std::string> stat_names;
  std::vector<double> stat_means;
  // Standard errors of the means (sample standard deviation / sqrt(R)).
  std::vector<double> stat_ses;
};

struct EstimateOptions {
  int replications = 1000;
  std::uint64_t master_seed = 0;
  // 0 picks the hardware concurrency. Results do not depend on it.
  int threads = 1;
};

// Runs replications 0..R-1, each on its own derived stream, and reduces the
// outcomes in index order. Throws InputError on R < 1 or n below the
// model's minimum, and DomainError if a replication reports strong without
// weak.
ConfidenceEstimate EstimateConfidenceSet(const ReplicationModel& model, int n,
                                         const EstimateOptions& options);

}  // namespace confset

#endif  // CONFSET_CONFIDENCE_H_
