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

// Partition objectives. Every objective returns a score in [0, 1] that the
// annealer maximizes; a loss-like criterion has to be mapped into that range
// (negated and rescaled) before it can be plugged in here.
//
// Both objectives work on the canonical relabeling of the partition, so a
// score never depends on which integer label a group carries.

#ifndef GROUPSA_OBJECTIVE_H_
#define GROUPSA_OBJECTIVE_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "groupsa/cohort.h"

namespace groupsa {

enum class ObjectiveKind { kSeparability, kBalance };

// Throws Error(kConfiguration) on anything but "separability" or "balance".
ObjectiveKind ParseObjectiveKind(std::string_view name);
std::string_view ObjectiveKindName(ObjectiveKind kind);

struct ObjectiveSpec {
  ObjectiveKind kind = ObjectiveKind::kSeparability;
  double test_fraction = 0.2;
  std::uint64_t split_seed = 0;
  // Per-feature weights in FeatureVector::Values() order.
  std::array<double, kFeatureCount> feature_weights = {1.0, 1.0, 0.0, 0.0};

  // Throws Error(kConfiguration) unless test_fraction is in (0, 1) and the
  // weights are non-negative with at least one positive.
  void Validate() const;
};

struct TrainTestSplit {
  std::vector<std::size_t> train;
  std::vector<std::size_t> test;
};

// Seeded split with ceil(test_fraction * n) test students, clamped to
// [1, n - 1]. When every group has at least two members the split is
// stratified: groups are visited round-robin and a group never gives up its
// last training member. Otherwise it is a plain shuffle.
TrainTestSplit SplitTrainTest(const Partition& partition, double test_fraction,
                              std::uint64_t seed);

// Held-out accuracy of a nearest-centroid classifier that predicts each test
// student's group from the weighted features, centroids fitted on the
// training students. A group without training members uses its full-group
// mean. Distance ties go to the lowest (canonical) group index.
double SeparabilityScore(const Cohort& cohort, const Partition& partition,
                         const ObjectiveSpec& spec);

// 1 - stddev(group means) / stddev(sorted-fill group means), clamped to
// [0, 1], over the scalar weighted feature sum of each student. The sorted
// fill deals sorted students into the balanced size profile for this group
// count. One group, or a zero normalizer, scores 1.
double BalanceScore(const Cohort& cohort, const Partition& partition,
                    const ObjectiveSpec& spec);

double Evaluate(const Cohort& cohort, const Partition& partition,
                const ObjectiveSpec& spec);

}  // namespace groupsa

#endif  // GROUPSA_OBJECTIVE_H_
