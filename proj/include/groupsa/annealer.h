// Copyright 2026 The groupsa Authors
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

// Simulated annealing over group partitions.
//
// Each iteration proposes a neighbor, scores it, and moves to it when the
// score does not decrease or, for a worse neighbor, when
//
//   A = exp((score_new - score_old) / T)
//
// exceeds a uniform draw u in [0, 1). The temperature then cools
// geometrically, T *= alpha. A run stops at the first of: T <= t_min,
// max_iterations steps, or max_runtime elapsed (checked once per iteration).
//
// A geometric schedule from t0 reaches t_min after
//
//   K = ceil((log(t_min) - log(t0)) / log(alpha))
//
// steps; see CoolingSteps().

#ifndef GROUPSA_ANNEALER_H_
#define GROUPSA_ANNEALER_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <span>
#include <string_view>
#include <vector>

#include "groupsa/cohort.h"
#include "groupsa/objective.h"
#include "groupsa/random.h"

namespace groupsa {

struct Schedule {
  double t0 = 10.0;
  double alpha = 0.7;
  double t_min = 0.0001;
  std::uint64_t max_iterations = 100000;
  std::chrono::duration<double> max_runtime = std::chrono::seconds(60);

  // Throws Error(kConfiguration) unless 0 < alpha < 1, 0 < t_min < t0 and
  // max_runtime > 0. max_iterations = 0 is allowed and means "no steps".
  void Validate() const;
};

enum class StopReason { kTemperatureFloor, kIterationCap, kRuntimeCap };

std::string_view StopReasonName(StopReason reason);

struct TraceEntry {
  std::uint64_t iteration = 0;
  double temperature = 0.0;  // temperature used for this step's decision
  double candidate_score = 0.0;
  double current_score = 0.0;  // after the decision
  double best_score = 0.0;
  bool accepted = false;

  friend bool operator==(const TraceEntry&, const TraceEntry&) = default;
};

struct RestartSummary {
  std::size_t index = 0;
  double initial_score = 0.0;
  double best_score = 0.0;
  StopReason stop_reason = StopReason::kIterationCap;
  std::vector<TraceEntry> trace;
};

struct AnnealResult {
  Partition best_partition;  // canonical labels
  double best_score = 0.0;
  double initial_score = 0.0;
  StopReason stop_reason = StopReason::kIterationCap;
  std::vector<TraceEntry> trace;
  // Filled by AnnealWithRestarts(); empty for a single Anneal() run.
  std::vector<RestartSummary> restarts;
  std::size_t best_restart = 0;
};

// exp((score_new - score_old) / temperature). May exceed 1. Throws
// Error(kDomain) unless temperature is positive and finite.
double AcceptanceProbability(double score_new, double score_old,
                             double temperature);

// Metropolis-style decision: a candidate that does not lower the score is
// always taken; otherwise it is taken when AcceptanceProbability() exceeds a
// uniform draw from `rng`. Only the second case consumes randomness.
bool AcceptMove(double score_new, double score_old, double temperature, Rng& rng);

// Smallest K with t0 * alpha^K <= t_min under repeated multiplication
// (the cooling the annealer performs). Equals the ceiling of the closed
// form up to floating-point rounding at exact boundaries. Throws
// Error(kDomain) on t_min >= t0, non-positive temperatures, or alpha
// outside (0, 1).
std::uint64_t CoolingSteps(double t0, double t_min, double alpha);

// Called after every step with the trace entry and the current partition.
using StepObserver = std::function<void(const TraceEntry&, const Partition&)>;

AnnealResult Anneal(const Cohort& cohort, const Partition& initial,
                    const ObjectiveSpec& spec, const Schedule& schedule,
                    std::uint64_t seed, const StepObserver& observer = {});

struct RestartSeeds {
  std::uint64_t initial_partition = 0;
  std::uint64_t anneal = 0;
};

// Seeds used by restart `index` under `master_seed`.
RestartSeeds SeedsForRestart(std::uint64_t master_seed, std::size_t index);

struct BestRestart {
  std::size_t index = 0;
  double score = 0.0;
};

// Maximum of `restart_bests`, ties resolved to the lowest index. Throws
// Error(kConfiguration) on an empty input.
BestRestart SelectBestRestart(std::span<const double> restart_bests);

// Runs `n_restarts` independent anneals, each from a fresh InitialPartition,
// and keeps the best. `parallel` runs restarts on worker threads; the result
// is identical to the serial run.
AnnealResult AnnealWithRestarts(const Cohort& cohort, const ObjectiveSpec& spec,
                                const Schedule& schedule, std::size_t n_restarts,
                                int max_group_size, std::uint64_t master_seed,
                                bool parallel = false);

// Delimited trace: iteration,temperature,current_score,best_score,accepted.
void WriteTrace(std::ostream& out, std::span<const TraceEntry> trace);

}  // namespace groupsa

#endif  // GROUPSA_ANNEALER_H_
