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

#include "groupsa/annealer.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <optional>
#include <ostream>
#include <thread>

#include "groupsa/error.h"
#include "groupsa/format.h"
#include "groupsa/random.h"

namespace groupsa {
namespace {

// Above this many steps CoolingSteps() skips the simulated correction.
constexpr double kMaxSimulatedSteps = 1e8;

void CheckCoolingDomain(double t0, double t_min, double alpha) {
  if (!(t0 > 0.0) || !std::isfinite(t0) || !(t_min > 0.0)) {
    throw Error(ErrorCode::kDomain, "temperatures must be positive and finite");
  }
  if (!(t_min < t0)) {
    throw Error(ErrorCode::kDomain, "t_min must be below the initial temperature");
  }
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kDomain, "alpha must be in (0, 1)");
  }
}

}  // namespace

void Schedule::Validate() const {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw Error(ErrorCode::kConfiguration, "alpha must be in (0, 1)");
  }
  if (!(t0 > 0.0) || !std::isfinite(t0)) {
    throw Error(ErrorCode::kConfiguration,
                "initial temperature must be positive and finite");
  }
  if (!(t_min > 0.0 && t_min < t0)) {
    throw Error(ErrorCode::kConfiguration,
                "t_min must be positive and below the initial temperature");
  }
  if (!(max_runtime.count() > 0.0)) {
    throw Error(ErrorCode::kConfiguration, "max runtime must be positive");
  }
}

std::string_view StopReasonName(StopReason reason) {
  switch (reason) {
    case StopReason::kTemperatureFloor:
      return "temperature_floor";
    case StopReason::kIterationCap:
      return "iteration_cap";
    case StopReason::kRuntimeCap:
      return "runtime_cap";
  }
  return "unknown";
}

double AcceptanceProbability(double score_new, double score_old,
                             double temperature) {
  if (!(temperature > 0.0) || !std::isfinite(temperature)) {
    throw Error(ErrorCode::kDomain, "temperature must be positive and finite");
  }
  return std::exp((score_new - score_old) / temperature);
}

bool AcceptMove(double score_new, double score_old, double temperature,
                Rng& rng) {
  if (score_new >= score_old) return true;
  return AcceptanceProbability(score_new, score_old, temperature) > rng.Uniform01();
}

std::uint64_t CoolingSteps(double t0, double t_min, double alpha) {
  CheckCoolingDomain(t0, t_min, alpha);
  const double real = (std::log(t_min) - std::log(t0)) / std::log(alpha);
  const double rounded_up = std::max(1.0, std::ceil(real));
  if (rounded_up > kMaxSimulatedSteps) {
    return static_cast<std::uint64_t>(rounded_up);
  }
  auto k = static_cast<std::uint64_t>(rounded_up);
  // The closed form can land one step off when t0 * alpha^K sits on t_min.
  // Settle K against the cooling loop itself.
  double before = t0;  // temperature after k - 1 steps
  for (std::uint64_t i = 0; i + 1 < k; ++i) before *= alpha;
  double after = before * alpha;  // after k steps
  if (after > t_min) return k + 1;
  if (k > 1 && before <= t_min) return k - 1;
  return k;
}

AnnealResult Anneal(const Cohort& cohort, const Partition& initial,
                    const ObjectiveSpec& spec, const Schedule& schedule,
                    std::uint64_t seed, const StepObserver& observer) {
  schedule.Validate();
  spec.Validate();
  if (initial.size() != cohort.size()) {
    throw Error(ErrorCode::kConfiguration,
                "initial partition size does not match cohort size");
  }
  const auto start = std::chrono::steady_clock::now();
  Rng rng(seed);

  Partition current = initial;
  double current_score = Evaluate(cohort, current, spec);
  AnnealResult result{current.Relabeled(), current_score, current_score,
                      StopReason::kIterationCap, {}, {}, 0};
  if (current.n_groups() < 2) return result;

  double temperature = schedule.t0;
  for (std::uint64_t iteration = 0;; ++iteration) {
    if (temperature <= schedule.t_min) {
      result.stop_reason = StopReason::kTemperatureFloor;
      break;
    }
    if (iteration >= schedule.max_iterations) {
      result.stop_reason = StopReason::kIterationCap;
      break;
    }
    if (std::chrono::steady_clock::now() - start >= schedule.max_runtime) {
      result.stop_reason = StopReason::kRuntimeCap;
      break;
    }

    auto [move, candidate] = ProposeNeighbor(current, rng);
    const double candidate_score = Evaluate(cohort, candidate, spec);
    const bool accepted =
        AcceptMove(candidate_score, current_score, temperature, rng);
    if (accepted) {
      current = std::move(candidate);
      current_score = candidate_score;
    }
    if (current_score > result.best_score) {
      result.best_partition = current.Relabeled();
      result.best_score = current_score;
    }
    result.trace.push_back({iteration, temperature, candidate_score,
                            current_score, result.best_score, accepted});
    if (observer) observer(result.trace.back(), current);
    temperature *= schedule.alpha;
  }
  return result;
}

RestartSeeds SeedsForRestart(std::uint64_t master_seed, std::size_t index) {
  return {DeriveSeed(master_seed, 2 * static_cast<std::uint64_t>(index)),
          DeriveSeed(master_seed, 2 * static_cast<std::uint64_t>(index) + 1)};
}

BestRestart SelectBestRestart(std::span<const double> restart_bests) {
  if (restart_bests.empty()) {
    throw Error(ErrorCode::kConfiguration, "no restarts to select from");
  }
  BestRestart best{0, restart_bests[0]};
  for (std::size_t i = 1; i < restart_bests.size(); ++i) {
    if (restart_bests[i] > best.score) best = {i, restart_bests[i]};
  }
  return best;
}

AnnealResult AnnealWithRestarts(const Cohort& cohort, const ObjectiveSpec& spec,
                                const Schedule& schedule, std::size_t n_restarts,
                                int max_group_size, std::uint64_t master_seed,
                                bool parallel) {
  if (n_restarts == 0) {
    throw Error(ErrorCode::kConfiguration, "at least one restart is required");
  }
  schedule.Validate();
  spec.Validate();

  std::vector<std::optional<AnnealResult>> runs(n_restarts);
  auto run_one = [&](std::size_t r) {
    const RestartSeeds seeds = SeedsForRestart(master_seed, r);
    runs[r] = Anneal(cohort,
                     InitialPartition(cohort.size(), max_group_size,
                                      seeds.initial_partition),
                     spec, schedule, seeds.anneal);
  };

  const std::size_t workers =
      parallel ? std::min<std::size_t>(
                     n_restarts, std::max(1u, std::thread::hardware_concurrency()))
               : 1;
  if (workers <= 1) {
    for (std::size_t r = 0; r < n_restarts; ++r) run_one(r);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(n_restarts);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t r = next++; r < n_restarts; r = next++) {
          try {
            run_one(r);
          } catch (...) {
            failures[r] = std::current_exception();
          }
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& f : failures) {
      if (f) std::rethrow_exception(f);
    }
  }

  std::vector<double> bests;
  bests.reserve(n_restarts);
  for (const auto& run : runs) bests.push_back(run->best_score);
  const BestRestart winner = SelectBestRestart(bests);

  std::vector<RestartSummary> summaries;
  summaries.reserve(n_restarts);
  for (std::size_t r = 0; r < n_restarts; ++r) {
    summaries.push_back({r, runs[r]->initial_score, runs[r]->best_score,
                         runs[r]->stop_reason, runs[r]->trace});
  }
  AnnealResult result = std::move(*runs[winner.index]);
  result.restarts = std::move(summaries);
  result.best_restart = winner.index;
  return result;
}

void WriteTrace(std::ostream& out, std::span<const TraceEntry> trace) {
  out << "iteration,temperature,current_score,best_score,accepted\n";
  for (const auto& e : trace) {
    out << e.iteration << ',' << FormatDouble(e.temperature) << ','
        << FormatDouble(e.current_score) << ',' << FormatDouble(e.best_score)
        << ',' << (e.accepted ? 1 : 0) << '\n';
  }
}

}  // namespace groupsa
