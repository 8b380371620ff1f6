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

#include <algorithm>
#include <set>

#include "doctest.h"
#include "groupsa/error.h"
#include "groupsa/objective.h"
#include "test_util.h"

namespace groupsa {
namespace {

using testing::CohortFromMarks;

ObjectiveSpec Spec(ObjectiveKind kind, std::uint64_t split_seed = 0) {
  ObjectiveSpec spec;
  spec.kind = kind;
  spec.split_seed = split_seed;
  return spec;
}

Cohort RandomCohort(Rng& rng, std::size_t n) {
  std::vector<std::string> students;
  std::vector<FeatureVector> features;
  for (std::size_t i = 0; i < n; ++i) {
    students.push_back(testing::StudentName(i));
    FeatureVector f;
    f.prereq_marks_mean = 40.0 + 60.0 * rng.Uniform01();
    f.current_marks = 40.0 + 60.0 * rng.Uniform01();
    f.credits = static_cast<double>(1 + rng.Index(3));
    f.semester_index = static_cast<int>(rng.Index(8));
    features.push_back(f);
  }
  return Cohort("C", "s", std::move(students), std::move(features));
}

TEST_CASE("Separability of widely separated groups is 1") {
  const Cohort cohort =
      CohortFromMarks({40, 41, 42, 43, 44, 45, 95, 96, 97, 98, 99, 100});
  const Partition p({0, 0, 0, 0, 0, 0, 1, 1, 1, 1, 1, 1}, 2, 6);
  for (std::uint64_t seed = 0; seed < 50; ++seed) {
    CHECK(SeparabilityScore(cohort, p, Spec(ObjectiveKind::kSeparability, seed)) == 1.0);
  }
}

TEST_CASE("Separability of identical students averages one half") {
  // Every distance ties, so every test student is predicted as group 0.
  const Cohort cohort = CohortFromMarks(std::vector<double>(10, 70.0));
  const Partition p({0, 1, 0, 1, 0, 1, 0, 1, 0, 1}, 2, 5);
  double sum = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    const double s = SeparabilityScore(cohort, p, Spec(ObjectiveKind::kSeparability, seed));
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    sum += s;
  }
  CHECK(std::abs(sum / 1000.0 - 0.5) <= 0.05);

  // Unstratified split (singleton group) still scores in [0,1].
  const Cohort small = CohortFromMarks(std::vector<double>(5, 70.0));
  const Partition q({0, 0, 0, 0, 1}, 2, 4);
  double sum_small = 0.0;
  for (std::uint64_t seed = 0; seed < 1000; ++seed) {
    sum_small += SeparabilityScore(small, q, Spec(ObjectiveKind::kSeparability, seed));
  }
  // One test student, group 0 predicted: hit rate is the share of group 0.
  CHECK(std::abs(sum_small / 1000.0 - 0.8) <= 0.05);
}

TEST_CASE("SplitTrainTest") {
  const Partition p = InitialPartition(30, 3, 9);
  const TrainTestSplit split = SplitTrainTest(p, 0.2, 4);
  CHECK(split.test.size() == 6);
  CHECK(split.train.size() == 24);
  std::vector<int> train_per_group(10, 0);
  for (auto i : split.train) ++train_per_group[p.Relabeled().group_of(i)];
  for (int c : train_per_group) CHECK(c >= 1);
  CHECK(SplitTrainTest(p, 0.2, 4).test == split.test);

  // Clamped to at least one test and one training student.
  CHECK(SplitTrainTest(Partition({0, 1}, 2, 1), 0.01, 0).test.size() == 1);
  CHECK(SplitTrainTest(Partition({0, 1, 0, 1}, 2, 2), 0.99, 0).train.size() >= 1);
}

TEST_CASE("Objectives are invariant under group relabeling") {
  Rng rng(5);
  for (int trial = 0; trial < 30; ++trial) {
    const Cohort cohort = RandomCohort(rng, 9);
    const Partition base = InitialPartition(9, 3, rng.Next());
    for (auto kind : {ObjectiveKind::kSeparability, ObjectiveKind::kBalance}) {
      const ObjectiveSpec spec = Spec(kind, rng.Next());
      const double reference = Evaluate(cohort, base, spec);
      std::vector<int> perm = {0, 1, 2};
      do {
        std::vector<int> relabeled;
        for (int g : base.assignment()) relabeled.push_back(perm[g]);
        CHECK(Evaluate(cohort, Partition(relabeled, 3, 3), spec) == reference);
      } while (std::next_permutation(perm.begin(), perm.end()));
    }
  }
}

TEST_CASE("Separability is unchanged by reciprocal feature and weight scaling") {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Cohort cohort = RandomCohort(rng, 12);
    const double c = 0.25 + 4.0 * rng.Uniform01();
    std::vector<FeatureVector> scaled = cohort.features();
    for (auto& f : scaled) {
      f.prereq_marks_mean *= c;
      f.current_marks *= c;
    }
    const Cohort scaled_cohort("C", "s", cohort.students(), scaled);
    ObjectiveSpec spec = Spec(ObjectiveKind::kSeparability, rng.Next());
    ObjectiveSpec inverse = spec;
    inverse.feature_weights = {1.0 / c, 1.0 / c, 0.0, 0.0};
    const Partition p = InitialPartition(12, 3, rng.Next());
    CHECK(SeparabilityScore(cohort, p, spec) ==
          SeparabilityScore(scaled_cohort, p, inverse));
  }
}

TEST_CASE("Balance score on the 6-student fixture") {
  const Cohort cohort = CohortFromMarks({40, 40, 40, 100, 100, 100});
  const ObjectiveSpec spec = Spec(ObjectiveKind::kBalance);
  // Sorted fill: group means 40 and 100, the normalizer itself.
  const Partition sorted_fill({0, 0, 0, 1, 1, 1}, 2, 3);
  CHECK(BalanceScore(cohort, sorted_fill, spec) == doctest::Approx(0.0));
  // {40,100,40},{100,40,100}: means 60 and 80, stddev 10 against 30.
  const Partition mixed({0, 0, 1, 0, 1, 1}, 2, 3);
  CHECK(BalanceScore(cohort, mixed, spec) == doctest::Approx(2.0 / 3.0));
  // Swapping the extremes back into sorted-fill positions does not help.
  const Partition back = mixed.Apply({MoveKind::kSwap, 2, 3, -1});
  CHECK(back.Canonical() == sorted_fill.Canonical());
  CHECK(BalanceScore(cohort, back, spec) <= BalanceScore(cohort, mixed, spec));
}

TEST_CASE("Balance score edge cases") {
  const ObjectiveSpec spec = Spec(ObjectiveKind::kBalance);
  const Cohort even = CohortFromMarks({40, 100, 60, 80, 70, 70});
  CHECK(BalanceScore(even, Partition({0, 0, 1, 1, 2, 2}, 3, 2), spec) ==
        doctest::Approx(1.0));
  const Cohort flat = CohortFromMarks(std::vector<double>(7, 55.0));
  CHECK(BalanceScore(flat, InitialPartition(7, 3, 2), spec) == 1.0);
  const Cohort pair = CohortFromMarks({40, 90});
  CHECK(BalanceScore(pair, Partition({0, 0}, 1, 3), spec) == 1.0);

  Rng rng(8);
  for (int t = 0; t < 200; ++t) {
    const Cohort c = RandomCohort(rng, 2 + rng.Index(12));
    const double s = BalanceScore(c, InitialPartition(c.size(), 3, rng.Next()), spec);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
  }
}

TEST_CASE("Evaluate") {
  const Cohort cohort = CohortFromMarks({40, 100, 60, 80, 70, 70});
  const Partition equal({0, 0, 1, 1, 2, 2}, 3, 2);
  CHECK(Evaluate(cohort, equal, Spec(ObjectiveKind::kBalance)) == doctest::Approx(1.0));
  const ObjectiveSpec sep = Spec(ObjectiveKind::kSeparability, 99);
  CHECK(Evaluate(cohort, equal, sep) == Evaluate(cohort, equal, sep));

  CHECK(ParseObjectiveKind("balance") == ObjectiveKind::kBalance);
  try {
    ParseObjectiveKind("svm");
    FAIL("expected configuration error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfiguration);
  }
  ObjectiveSpec bogus;
  bogus.kind = static_cast<ObjectiveKind>(42);
  CHECK_THROWS_AS(Evaluate(cohort, equal, bogus), Error);

  ObjectiveSpec bad_fraction;
  bad_fraction.test_fraction = 1.0;
  CHECK_THROWS_AS(bad_fraction.Validate(), Error);
  ObjectiveSpec zero_weights;
  zero_weights.feature_weights = {0, 0, 0, 0};
  CHECK_THROWS_AS(zero_weights.Validate(), Error);
  ObjectiveSpec negative;
  negative.feature_weights = {1, -1, 0, 0};
  CHECK_THROWS_AS(negative.Validate(), Error);

  CHECK_THROWS_AS(Evaluate(cohort, Partition({0, 1}, 2, 1), sep), Error);
}

}  // namespace
}  // namespace groupsa
