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

#include "groupsa/cohort.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "groupsa/error.h"

namespace groupsa {
namespace {

const CleanRecord* FindRecord(std::span<const CleanRecord> records,
                              std::string_view student,
                              std::string_view course) {
  for (const auto& r : records) {
    if (r.student_id == student && r.course_code == course) return &r;
  }
  return nullptr;
}

}  // namespace

Cohort::Cohort(std::string course_code, std::string semester,
               std::vector<std::string> students,
               std::vector<FeatureVector> features)
    : course_code_(std::move(course_code)),
      semester_(std::move(semester)),
      students_(std::move(students)),
      features_(std::move(features)) {
  if (students_.size() < 2) {
    throw Error(ErrorCode::kCohort,
                "cohort needs at least 2 students, got " +
                    std::to_string(students_.size()));
  }
  if (features_.size() != students_.size()) {
    throw Error(ErrorCode::kCohort, "cohort feature count does not match");
  }
  std::set<std::string_view> seen;
  for (const auto& s : students_) {
    if (!seen.insert(s).second) {
      throw Error(ErrorCode::kCohort, "duplicate cohort student '" + s + "'");
    }
  }
  for (const auto& f : features_) {
    for (double v : f.Values()) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::kCohort, "non-finite feature value");
      }
    }
  }
}

std::optional<double> PrerequisiteMean(
    std::string_view student, std::span<const CleanRecord> records,
    std::span<const PrerequisiteEntry> prereqs, std::string_view course) {
  double sum = 0.0;
  int count = 0;
  for (const auto& entry : prereqs) {
    if (entry.course_code != course) continue;
    if (const auto* r = FindRecord(records, student, entry.prerequisite_code)) {
      sum += r->marks;
      ++count;
    }
  }
  if (count == 0) return std::nullopt;
  return sum / count;
}

FeatureVector BuildFeatures(std::string_view student,
                            std::span<const CleanRecord> records,
                            std::span<const PrerequisiteEntry> prereqs,
                            std::string_view course,
                            double imputed_prereq_mean) {
  const CleanRecord* own = FindRecord(records, student, course);
  if (own == nullptr) {
    throw Error(ErrorCode::kCohort, "student '" + std::string(student) +
                                        "' has no record for course '" +
                                        std::string(course) + "'");
  }
  FeatureVector f;
  f.current_marks = own->marks;
  f.credits = own->credits;
  std::set<std::string_view> earlier;
  for (const auto& r : records) {
    if (r.student_id == student && r.semester < own->semester) {
      earlier.insert(r.semester);
    }
  }
  f.semester_index = static_cast<int>(earlier.size());
  if (const auto mean = PrerequisiteMean(student, records, prereqs, course)) {
    f.prereq_marks_mean = *mean;
  } else {
    f.prereq_marks_mean = imputed_prereq_mean;
    f.imputed = true;
  }
  return f;
}

Cohort SelectCohort(std::span<const CleanRecord> records,
                    std::span<const PrerequisiteEntry> prereqs,
                    std::string_view course, std::string_view semester,
                    std::size_t limit) {
  std::set<std::string> matching;
  for (const auto& r : records) {
    if (r.course_code == course && r.semester == semester) {
      matching.insert(r.student_id);
    }
  }
  std::vector<std::string> students(matching.begin(), matching.end());
  if (students.size() > limit) students.resize(limit);
  if (students.size() < 2) {
    throw Error(ErrorCode::kCohort,
                "course '" + std::string(course) + "' in semester '" +
                    std::string(semester) + "' has " +
                    std::to_string(students.size()) +
                    " eligible student(s); at least 2 required");
  }

  double prereq_sum = 0.0;
  double current_sum = 0.0;
  int with_prereq = 0;
  for (const auto& s : students) {
    current_sum += FindRecord(records, s, course)->marks;
    if (const auto mean = PrerequisiteMean(s, records, prereqs, course)) {
      prereq_sum += *mean;
      ++with_prereq;
    }
  }
  const double imputed = with_prereq > 0
                             ? prereq_sum / with_prereq
                             : current_sum / static_cast<double>(students.size());

  std::vector<FeatureVector> features;
  features.reserve(students.size());
  for (const auto& s : students) {
    features.push_back(BuildFeatures(s, records, prereqs, course, imputed));
  }
  return Cohort(std::string(course), std::string(semester),
                std::move(students), std::move(features));
}

int GroupCount(std::size_t cohort_size, int max_group_size) {
  if (max_group_size <= 0) {
    throw Error(ErrorCode::kConfiguration, "max group size must be positive");
  }
  const auto s = static_cast<std::size_t>(max_group_size);
  return static_cast<int>((cohort_size + s - 1) / s);
}

Partition::Partition(std::vector<int> assignment, int n_groups,
                     int max_group_size)
    : assignment_(std::move(assignment)),
      n_groups_(n_groups),
      max_group_size_(max_group_size) {
  if (n_groups_ <= 0 || max_group_size_ <= 0) {
    throw Error(ErrorCode::kConfiguration,
                "partition needs positive group count and group size");
  }
  sizes_.assign(static_cast<std::size_t>(n_groups_), 0);
  for (int g : assignment_) {
    if (g < 0 || g >= n_groups_) {
      throw Error(ErrorCode::kConfiguration,
                  "group index " + std::to_string(g) + " out of range");
    }
    ++sizes_[g];
  }
  for (int g = 0; g < n_groups_; ++g) {
    if (sizes_[g] == 0) {
      throw Error(ErrorCode::kConfiguration,
                  "group " + std::to_string(g) + " is empty");
    }
    if (sizes_[g] > max_group_size_) {
      throw Error(ErrorCode::kConfiguration,
                  "group " + std::to_string(g) + " exceeds max size " +
                      std::to_string(max_group_size_));
    }
  }
}

bool Partition::IsFull() const {
  return std::all_of(sizes_.begin(), sizes_.end(),
                     [this](int s) { return s == max_group_size_; });
}

std::vector<std::vector<std::size_t>> Partition::Groups() const {
  std::vector<std::vector<std::size_t>> groups(n_groups_);
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    groups[assignment_[i]].push_back(i);
  }
  return groups;
}

CanonicalForm Partition::Canonical() const {
  // Members are pushed in increasing order, so each group is already sorted.
  auto groups = Groups();
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

Partition Partition::Relabeled() const {
  std::vector<int> relabel(n_groups_, -1);
  int next = 0;
  std::vector<int> assignment(assignment_.size());
  for (std::size_t i = 0; i < assignment_.size(); ++i) {
    int& label = relabel[assignment_[i]];
    if (label < 0) label = next++;
    assignment[i] = label;
  }
  return Partition(std::move(assignment), n_groups_, max_group_size_);
}

Partition Partition::Apply(const MoveProposal& move) const {
  Partition out = *this;
  const std::size_t n = size();
  if (move.student_a >= n) {
    throw Error(ErrorCode::kDomain, "move names an unknown student");
  }
  const int from = assignment_[move.student_a];
  if (move.kind == MoveKind::kSwap) {
    if (move.student_b >= n || assignment_[move.student_b] == from) {
      throw Error(ErrorCode::kDomain,
                  "swap requires two students in different groups");
    }
    std::swap(out.assignment_[move.student_a], out.assignment_[move.student_b]);
    return out;
  }
  const int to = move.target_group;
  if (to < 0 || to >= n_groups_ || to == from ||
      sizes_[to] >= max_group_size_ || sizes_[from] < 2) {
    throw Error(ErrorCode::kDomain, "illegal relocate move");
  }
  out.assignment_[move.student_a] = to;
  --out.sizes_[from];
  ++out.sizes_[to];
  return out;
}

Partition InitialPartition(std::size_t cohort_size, int max_group_size,
                           std::uint64_t seed) {
  if (cohort_size == 0) {
    throw Error(ErrorCode::kCohort, "cannot partition an empty cohort");
  }
  const int n_groups = GroupCount(cohort_size, max_group_size);
  std::vector<std::size_t> order(cohort_size);
  std::iota(order.begin(), order.end(), std::size_t{0});
  Rng rng(seed);
  rng.Shuffle(std::span(order));
  std::vector<int> assignment(cohort_size);
  for (std::size_t i = 0; i < cohort_size; ++i) {
    assignment[order[i]] = static_cast<int>(i % n_groups);
  }
  return Partition(std::move(assignment), n_groups, max_group_size);
}

std::pair<MoveProposal, Partition> ProposeNeighbor(const Partition& partition,
                                                   Rng& rng) {
  if (partition.n_groups() < 2) {
    throw Error(ErrorCode::kDomain, "a single-group partition has no neighbor");
  }
  const std::size_t n = partition.size();

  if (!partition.IsFull() && rng.Uniform01() < 0.5) {
    std::vector<MoveProposal> relocations;
    for (std::size_t s = 0; s < n; ++s) {
      const int from = partition.group_of(s);
      if (partition.group_size(from) < 2) continue;
      for (int g = 0; g < partition.n_groups(); ++g) {
        if (g != from && partition.group_size(g) < partition.max_group_size()) {
          relocations.push_back({MoveKind::kRelocate, s, 0, g});
        }
      }
    }
    if (!relocations.empty()) {
      const MoveProposal move = relocations[rng.Index(relocations.size())];
      return {move, partition.Apply(move)};
    }
  }

  MoveProposal move;
  move.kind = MoveKind::kSwap;
  move.student_a = rng.Index(n);
  do {
    move.student_b = rng.Index(n);
  } while (partition.group_of(move.student_b) ==
           partition.group_of(move.student_a));
  return {move, partition.Apply(move)};
}

}  // namespace groupsa
