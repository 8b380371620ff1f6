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

#include "groupsa/oracle.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "groupsa/error.h"

namespace groupsa {
namespace {

double Binomial(std::size_t n, std::size_t k) {
  double c = 1.0;
  for (std::size_t i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
  }
  return std::round(c);
}

class Enumerator {
 public:
  Enumerator(std::size_t n, int max_size, int n_groups,
             const std::function<void(const Partition&)>& visit)
      : n_(n),
        max_size_(max_size),
        n_groups_(n_groups),
        visit_(visit),
        assignment_(n, -1),
        sizes_(n_groups, 0) {}

  void Run() { Place(0, 0); }

 private:
  void Place(std::size_t student, int open) {
    if (student == n_) {
      if (open == n_groups_) visit_(Partition(assignment_, n_groups_, max_size_));
      return;
    }
    const std::size_t left_after = n_ - student - 1;
    for (int g = 0; g < open; ++g) {
      if (sizes_[g] == max_size_) continue;
      if (left_after < static_cast<std::size_t>(n_groups_ - open)) continue;
      Assign(student, g);
      Place(student + 1, open);
      Unassign(student, g);
    }
    if (open < n_groups_) {
      Assign(student, open);
      Place(student + 1, open + 1);
      Unassign(student, open);
    }
  }

  void Assign(std::size_t student, int g) {
    assignment_[student] = g;
    ++sizes_[g];
  }
  void Unassign(std::size_t student, int g) {
    assignment_[student] = -1;
    --sizes_[g];
  }

  std::size_t n_;
  int max_size_;
  int n_groups_;
  const std::function<void(const Partition&)>& visit_;
  std::vector<int> assignment_;
  std::vector<int> sizes_;
};

}  // namespace

double CountPartitions(std::size_t n_students, int max_group_size,
                       bool exact_fill) {
  const int n_groups = GroupCount(n_students, max_group_size);
  const auto s = static_cast<std::size_t>(max_group_size);
  if (exact_fill && n_students % s != 0) return 0.0;
  // ways[m][g]: m students into g non-empty groups of allowed sizes. The
  // group holding the first student picks its other k - 1 members.
  std::vector<std::vector<double>> ways(
      n_students + 1, std::vector<double>(static_cast<std::size_t>(n_groups) + 1, 0.0));
  ways[0][0] = 1.0;
  for (std::size_t m = 1; m <= n_students; ++m) {
    for (std::size_t g = 1; g <= static_cast<std::size_t>(n_groups); ++g) {
      double total = 0.0;
      for (std::size_t k = exact_fill ? s : 1; k <= std::min(s, m); ++k) {
        total += Binomial(m - 1, k - 1) * ways[m - k][g - 1];
      }
      ways[m][g] = total;
    }
  }
  return ways[n_students][static_cast<std::size_t>(n_groups)];
}

void CheckEnumerationCap(std::size_t n_students, int max_group_size,
                         bool exact_fill) {
  if (n_students > kMaxOracleCohort) {
    std::ostringstream msg;
    msg << "exhaustive enumeration refused: cohort of " << n_students
        << " exceeds the limit of " << kMaxOracleCohort << " students";
    if (n_students <= 200) {
      msg << " (about " << CountPartitions(n_students, max_group_size, exact_fill)
          << " partitions)";
    }
    throw Error(ErrorCode::kEnumerationCap, msg.str());
  }
  const double count = CountPartitions(n_students, max_group_size, exact_fill);
  if (count > kMaxOraclePartitions) {
    std::ostringstream msg;
    msg << "exhaustive enumeration refused: " << count
        << " partitions exceed the cap of " << kMaxOraclePartitions;
    throw Error(ErrorCode::kEnumerationCap, msg.str());
  }
}

void ForEachPartition(std::size_t n_students, int max_group_size,
                      bool exact_fill,
                      const std::function<void(const Partition&)>& visit) {
  CheckEnumerationCap(n_students, max_group_size, exact_fill);
  if (n_students == 0) return;
  if (exact_fill && n_students % static_cast<std::size_t>(max_group_size) != 0) {
    return;
  }
  Enumerator(n_students, max_group_size, GroupCount(n_students, max_group_size),
             visit)
      .Run();
}

std::vector<Partition> EnumeratePartitions(std::size_t n_students,
                                           int max_group_size,
                                           bool exact_fill) {
  std::vector<Partition> out;
  ForEachPartition(n_students, max_group_size, exact_fill,
                   [&](const Partition& p) { out.push_back(p); });
  return out;
}

OracleResult BruteForceBest(const Cohort& cohort, const ObjectiveSpec& spec,
                            int max_group_size) {
  OracleResult result;
  result.best_score = -1.0;
  ForEachPartition(cohort.size(), max_group_size, false,
                   [&](const Partition& p) {
                     const double score = Evaluate(cohort, p, spec);
                     ++result.evaluated;
                     if (score > result.best_score + kOracleScoreTolerance) {
                       result.best_score = score;
                       result.best_partitions.clear();
                     }
                     if (score >= result.best_score - kOracleScoreTolerance) {
                       result.best_score = std::max(result.best_score, score);
                       result.best_partitions.push_back(p);
                     }
                   });
  return result;
}

}  // namespace groupsa
