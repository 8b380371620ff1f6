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

#ifndef GROUPSA_COHORT_H_
#define GROUPSA_COHORT_H_

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "groupsa/random.h"
#include "groupsa/records.h"

namespace groupsa {

inline constexpr std::size_t kFeatureCount = 4;

// Per-student features. Values() orders them as
// {prereq_marks_mean, current_marks, credits, semester_index}.
struct FeatureVector {
  double prereq_marks_mean = 0.0;
  double current_marks = 0.0;
  double credits = 0.0;
  int semester_index = 0;
  // Set when the student had no prerequisite record and prereq_marks_mean
  // holds the imputed cohort mean.
  bool imputed = false;

  std::array<double, kFeatureCount> Values() const {
    return {prereq_marks_mean, current_marks, credits,
            static_cast<double>(semester_index)};
  }

  friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Students of one course offering with their features. Immutable; the
// constructor enforces distinct students, matching feature count, finite
// features and size >= 2 (Error kCohort otherwise).
class Cohort {
 public:
  Cohort(std::string course_code, std::string semester,
         std::vector<std::string> students,
         std::vector<FeatureVector> features);

  const std::string& course_code() const { return course_code_; }
  const std::string& semester() const { return semester_; }
  const std::vector<std::string>& students() const { return students_; }
  const std::vector<FeatureVector>& features() const { return features_; }
  std::size_t size() const { return students_.size(); }

 private:
  std::string course_code_;
  std::string semester_;
  std::vector<std::string> students_;
  std::vector<FeatureVector> features_;
};

// Mean of the student's marks over the direct prerequisites of `course`, or
// nullopt when the records hold none of them.
std::optional<double> PrerequisiteMean(std::string_view student,
                                       std::span<const CleanRecord> records,
                                       std::span<const PrerequisiteEntry> prereqs,
                                       std::string_view course);

// Features of `student` for `course`. `imputed_prereq_mean` is used (and
// `imputed` set) when PrerequisiteMean() has nothing. semester_index counts
// the distinct semesters in which the student has records before the
// semester of their `course` record. Throws Error(kCohort) if the student
// has no record for `course`.
FeatureVector BuildFeatures(std::string_view student,
                            std::span<const CleanRecord> records,
                            std::span<const PrerequisiteEntry> prereqs,
                            std::string_view course,
                            double imputed_prereq_mean);

// Up to `limit` students (smallest ids first) who passed `course` in
// `semester`. Missing prerequisite means are imputed with the mean over the
// cohort members that have one.
Cohort SelectCohort(std::span<const CleanRecord> records,
                    std::span<const PrerequisiteEntry> prereqs,
                    std::string_view course, std::string_view semester,
                    std::size_t limit);

// ceil(cohort_size / max_group_size)
int GroupCount(std::size_t cohort_size, int max_group_size);

enum class MoveKind { kSwap, kRelocate };

struct MoveProposal {
  MoveKind kind = MoveKind::kSwap;
  std::size_t student_a = 0;
  std::size_t student_b = 0;  // swap only
  int target_group = -1;      // relocate only

  friend bool operator==(const MoveProposal&, const MoveProposal&) = default;
};

// Label-independent form: groups as sorted member lists, ordered by their
// smallest member. Members are cohort positions, and cohorts are ordered by
// student id.
using CanonicalForm = std::vector<std::vector<std::size_t>>;

// Assignment of cohort positions to groups 0..n_groups-1. Every group is
// non-empty and holds at most max_group_size members.
class Partition {
 public:
  // Throws Error(kConfiguration) if the assignment violates the invariants.
  Partition(std::vector<int> assignment, int n_groups, int max_group_size);

  std::size_t size() const { return assignment_.size(); }
  int n_groups() const { return n_groups_; }
  int max_group_size() const { return max_group_size_; }
  int group_of(std::size_t student) const { return assignment_[student]; }
  int group_size(int group) const { return sizes_[group]; }
  const std::vector<int>& assignment() const { return assignment_; }
  const std::vector<int>& group_sizes() const { return sizes_; }
  bool IsFull() const;

  std::vector<std::vector<std::size_t>> Groups() const;
  CanonicalForm Canonical() const;
  // Same grouping, groups relabeled in canonical order.
  Partition Relabeled() const;

  // Throws Error(kDomain) if the move is not legal for this partition.
  Partition Apply(const MoveProposal& move) const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> assignment_;
  std::vector<int> sizes_;
  int n_groups_ = 0;
  int max_group_size_ = 0;
};

// GroupCount(n, s) groups; positions shuffled with `seed` and dealt
// round-robin, so group sizes differ by at most one.
Partition InitialPartition(std::size_t cohort_size, int max_group_size,
                           std::uint64_t seed);

// One random neighbor: a swap of two students in different groups or, with
// probability 1/2 when some group is under capacity, a relocation of one
// student into such a group. Requires at least two groups (Error kDomain).
std::pair<MoveProposal, Partition> ProposeNeighbor(const Partition& partition,
                                                   Rng& rng);

}  // namespace groupsa

#endif  // GROUPSA_COHORT_H_
