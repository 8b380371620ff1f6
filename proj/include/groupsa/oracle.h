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

// Exhaustive enumeration of the annealer's search space for small cohorts.
//
// The space is every partition of n students into exactly
// GroupCount(n, max_group_size) non-empty groups of at most max_group_size
// members, up to group relabeling. Partitions are produced directly in
// canonical labeling: student i either joins an open group or opens the next
// one, so group g's smallest member is the smallest student not in groups
// 0..g-1.

#ifndef GROUPSA_ORACLE_H_
#define GROUPSA_ORACLE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

#include "groupsa/cohort.h"
#include "groupsa/objective.h"

namespace groupsa {

inline constexpr std::size_t kMaxOracleCohort = 12;
inline constexpr double kMaxOraclePartitions = 1e6;
// Scores within this distance of the maximum count as ties.
inline constexpr double kOracleScoreTolerance = 1e-9;

// Number of partitions EnumeratePartitions() would produce, computed by
// recurrence without enumerating.
double CountPartitions(std::size_t n_students, int max_group_size,
                       bool exact_fill);

// Throws Error(kEnumerationCap), quoting the count, when n_students exceeds
// kMaxOracleCohort or the count exceeds kMaxOraclePartitions.
void CheckEnumerationCap(std::size_t n_students, int max_group_size,
                         bool exact_fill);

// Calls `visit` once per canonical partition. exact_fill keeps only
// partitions whose groups all hold exactly max_group_size students.
void ForEachPartition(std::size_t n_students, int max_group_size,
                      bool exact_fill,
                      const std::function<void(const Partition&)>& visit);

std::vector<Partition> EnumeratePartitions(std::size_t n_students,
                                           int max_group_size, bool exact_fill);

struct OracleResult {
  std::vector<Partition> best_partitions;  // every argmax, canonical labels
  double best_score = 0.0;
  std::size_t evaluated = 0;
};

OracleResult BruteForceBest(const Cohort& cohort, const ObjectiveSpec& spec,
                            int max_group_size);

}  // namespace groupsa

#endif  // GROUPSA_ORACLE_H_
