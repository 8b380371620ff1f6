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

#include "groupsa/objective.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "groupsa/error.h"
#include "groupsa/random.h"

namespace groupsa {
namespace {

using Point = std::array<double, kFeatureCount>;

Point Weighted(const FeatureVector& f, const ObjectiveSpec& spec) {
  Point p = f.Values();
  for (std::size_t k = 0; k < kFeatureCount; ++k) p[k] *= spec.feature_weights[k];
  return p;
}

double WeightedSum(const FeatureVector& f, const ObjectiveSpec& spec) {
  const Point p = Weighted(f, spec);
  return std::accumulate(p.begin(), p.end(), 0.0);
}

double SquaredDistance(const Point& a, const Point& b) {
  double d = 0.0;
  for (std::size_t k = 0; k < kFeatureCount; ++k) {
    d += (a[k] - b[k]) * (a[k] - b[k]);
  }
  return d;
}

double PopulationStddev(const std::vector<double>& values) {
  const double mean =
      std::accumulate(values.begin(), values.end(), 0.0) / values.size();
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return std::sqrt(ss / values.size());
}

void CheckSizes(const Cohort& cohort, const Partition& partition) {
  if (cohort.size() != partition.size()) {
    throw Error(ErrorCode::kConfiguration,
                "partition size does not match cohort size");
  }
}

}  // namespace

ObjectiveKind ParseObjectiveKind(std::string_view name) {
  if (name == "separability") return ObjectiveKind::kSeparability;
  if (name == "balance") return ObjectiveKind::kBalance;
  throw Error(ErrorCode::kConfiguration,
              "unknown objective '" + std::string(name) +
                  "' (expected separability or balance)");
}

std::string_view ObjectiveKindName(ObjectiveKind kind) {
  switch (kind) {
    case ObjectiveKind::kSeparability:
      return "separability";
    case ObjectiveKind::kBalance:
      return "balance";
  }
  return "unknown";
}

void ObjectiveSpec::Validate() const {
  if (!(test_fraction > 0.0 && test_fraction < 1.0)) {
    throw Error(ErrorCode::kConfiguration, "test fraction must be in (0, 1)");
  }
  bool any_positive = false;
  for (double w : feature_weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw Error(ErrorCode::kConfiguration,
                  "feature weights must be finite and non-negative");
    }
    any_positive = any_positive || w > 0.0;
  }
  if (!any_positive) {
    throw Error(ErrorCode::kConfiguration,
                "at least one feature weight must be positive");
  }
}

TrainTestSplit SplitTrainTest(const Partition& partition, double test_fraction,
                              std::uint64_t seed) {
  const Partition canonical = partition.Relabeled();
  const std::size_t n = canonical.size();
  auto n_test = static_cast<std::size_t>(
      std::ceil(test_fraction * static_cast<double>(n)));
  n_test = std::clamp<std::size_t>(n_test, 1, n - 1);

  Rng rng(seed);
  std::vector<bool> is_test(n, false);
  const auto& sizes = canonical.group_sizes();
  const bool stratified = std::all_of(sizes.begin(), sizes.end(),
                                      [](int s) { return s >= 2; });
  if (stratified) {
    auto groups = canonical.Groups();
    for (auto& g : groups) rng.Shuffle(std::span(g));
    std::vector<std::size_t> visit(groups.size());
    std::iota(visit.begin(), visit.end(), std::size_t{0});
    rng.Shuffle(std::span(visit));
    std::vector<std::size_t> taken(groups.size(), 0);
    std::size_t chosen = 0;
    bool progress = true;
    while (chosen < n_test && progress) {
      progress = false;
      for (std::size_t g : visit) {
        if (chosen == n_test) break;
        if (groups[g].size() - taken[g] < 2) continue;
        is_test[groups[g][taken[g]++]] = true;
        ++chosen;
        progress = true;
      }
    }
  } else {
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    rng.Shuffle(std::span(order));
    for (std::size_t i = 0; i < n_test; ++i) is_test[order[i]] = true;
  }

  TrainTestSplit split;
  for (std::size_t i = 0; i < n; ++i) {
    (is_test[i] ? split.test : split.train).push_back(i);
  }
  return split;
}

double SeparabilityScore(const Cohort& cohort, const Partition& partition,
                         const ObjectiveSpec& spec) {
  CheckSizes(cohort, partition);
  const Partition canonical = partition.Relabeled();
  const auto& features = cohort.features();
  const TrainTestSplit split =
      SplitTrainTest(canonical, spec.test_fraction, spec.split_seed);

  const auto n_groups = static_cast<std::size_t>(canonical.n_groups());
  std::vector<Point> centroids(n_groups, Point{});
  std::vector<int> counts(n_groups, 0);
  for (std::size_t i : split.train) {
    const int g = canonical.group_of(i);
    const Point p = Weighted(features[i], spec);
    for (std::size_t k = 0; k < kFeatureCount; ++k) centroids[g][k] += p[k];
    ++counts[g];
  }
  for (std::size_t g = 0; g < n_groups; ++g) {
    if (counts[g] > 0) continue;
    // No training member: fall back to the full-group mean.
    for (std::size_t i = 0; i < canonical.size(); ++i) {
      if (canonical.group_of(i) != static_cast<int>(g)) continue;
      const Point p = Weighted(features[i], spec);
      for (std::size_t k = 0; k < kFeatureCount; ++k) centroids[g][k] += p[k];
      ++counts[g];
    }
  }
  for (std::size_t g = 0; g < n_groups; ++g) {
    for (double& c : centroids[g]) c /= counts[g];
  }

  std::size_t correct = 0;
  for (std::size_t i : split.test) {
    const Point p = Weighted(features[i], spec);
    int best = 0;
    double best_distance = std::numeric_limits<double>::infinity();
    for (std::size_t g = 0; g < n_groups; ++g) {
      const double d = SquaredDistance(p, centroids[g]);
      if (d < best_distance) {
        best_distance = d;
        best = static_cast<int>(g);
      }
    }
    if (best == canonical.group_of(i)) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(split.test.size());
}

double BalanceScore(const Cohort& cohort, const Partition& partition,
                    const ObjectiveSpec& spec) {
  CheckSizes(cohort, partition);
  if (partition.n_groups() == 1) return 1.0;
  const Partition canonical = partition.Relabeled();
  const auto& features = cohort.features();
  const std::size_t n = canonical.size();
  const auto n_groups = static_cast<std::size_t>(canonical.n_groups());

  std::vector<double> values(n);
  for (std::size_t i = 0; i < n; ++i) values[i] = WeightedSum(features[i], spec);

  std::vector<double> means(n_groups, 0.0);
  for (std::size_t i = 0; i < n; ++i) means[canonical.group_of(i)] += values[i];
  for (std::size_t g = 0; g < n_groups; ++g) {
    means[g] /= canonical.group_size(static_cast<int>(g));
  }

  std::vector<double> sorted = values;
  std::sort(sorted.begin(), sorted.end());
  std::vector<double> worst(n_groups, 0.0);
  std::size_t next = 0;
  for (std::size_t g = 0; g < n_groups; ++g) {
    const std::size_t size = n / n_groups + (g < n % n_groups ? 1 : 0);
    for (std::size_t j = 0; j < size; ++j) worst[g] += sorted[next++];
    worst[g] /= static_cast<double>(size);
  }

  const double normalizer = PopulationStddev(worst);
  const double scale = std::max(1.0, std::max(std::abs(sorted.front()),
                                              std::abs(sorted.back())));
  if (normalizer <= 1e-12 * scale) return 1.0;
  return std::clamp(1.0 - PopulationStddev(means) / normalizer, 0.0, 1.0);
}

double Evaluate(const Cohort& cohort, const Partition& partition,
                const ObjectiveSpec& spec) {
  spec.Validate();
  switch (spec.kind) {
    case ObjectiveKind::kSeparability:
      return SeparabilityScore(cohort, partition, spec);
    case ObjectiveKind::kBalance:
      return BalanceScore(cohort, partition, spec);
  }
  throw Error(ErrorCode::kConfiguration, "unsupported objective kind");
}

}  // namespace groupsa
