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
#include <deque>
#include <map>
#include <set>

#include "doctest.h"
#include "groupsa/cohort.h"
#include "groupsa/error.h"
#include "test_util.h"

namespace groupsa {
namespace {

CleanRecord Rec(std::string s, std::string c, std::string sem, int marks) {
  return {std::move(s), std::move(c), 3.0, std::move(sem), "F", marks};
}

std::vector<int> SortedSizes(const Partition& p) {
  auto sizes = p.group_sizes();
  std::sort(sizes.begin(), sizes.end());
  return sizes;
}

void CheckInvariants(const Partition& p, std::size_t n, int max_size) {
  REQUIRE(p.size() == n);
  CHECK(p.n_groups() == GroupCount(n, max_size));
  int total = 0;
  for (int s : p.group_sizes()) {
    CHECK(s >= 1);
    CHECK(s <= max_size);
    total += s;
  }
  CHECK(total == static_cast<int>(n));
}

TEST_CASE("BuildFeatures prerequisite mean") {
  const std::vector<PrerequisiteEntry> prereqs = {{"C3", "C1"}, {"C3", "C2"}};
  std::vector<CleanRecord> records = {Rec("S1", "C1", "2019-1", 80),
                                      Rec("S1", "C2", "2019-2", 90),
                                      Rec("S1", "C3", "2020-1", 70),
                                      Rec("S2", "C3", "2020-1", 60),
                                      Rec("S3", "C1", "2019-1", 40),
                                      Rec("S3", "C3", "2020-1", 75)};
  const auto f1 = BuildFeatures("S1", records, prereqs, "C3", 72.5);
  CHECK(f1.prereq_marks_mean == doctest::Approx(85.0));
  CHECK_FALSE(f1.imputed);
  CHECK(f1.current_marks == doctest::Approx(70.0));
  CHECK(f1.semester_index == 2);

  const auto f2 = BuildFeatures("S2", records, prereqs, "C3", 72.5);
  CHECK(f2.prereq_marks_mean == doctest::Approx(72.5));
  CHECK(f2.imputed);
  CHECK(f2.semester_index == 0);

  const auto f3 = BuildFeatures("S3", records, prereqs, "C3", 72.5);
  CHECK(f3.prereq_marks_mean == doctest::Approx(40.0));
  CHECK_FALSE(f3.imputed);

  // Independent of record order.
  std::reverse(records.begin(), records.end());
  CHECK(BuildFeatures("S1", records, prereqs, "C3", 72.5) == f1);

  CHECK_THROWS_AS(BuildFeatures("S9", records, prereqs, "C3", 0.0), Error);
}

std::vector<CleanRecord> Offering(std::size_t n, const std::string& course,
                                  const std::string& sem) {
  std::vector<CleanRecord> out;
  for (std::size_t i = 0; i < n; ++i) {
    out.push_back(Rec(testing::StudentName(i), course, sem, 40 + static_cast<int>(i)));
  }
  return out;
}

TEST_CASE("SelectCohort sizes") {
  auto records = Offering(40, "C5", "2020-1");
  const auto other = Offering(10, "C5", "2020-2");
  records.insert(records.end(), other.begin(), other.end());

  const Cohort thirty = SelectCohort(records, {}, "C5", "2020-1", 30);
  CHECK(thirty.size() == 30);
  CHECK(std::is_sorted(thirty.students().begin(), thirty.students().end()));
  CHECK(thirty.students().front() == "S00");

  const Cohort five = SelectCohort(Offering(5, "C5", "2020-1"), {}, "C5", "2020-1", 30);
  CHECK(five.size() == 5);

  try {
    SelectCohort(Offering(1, "C5", "2020-1"), {}, "C5", "2020-1", 30);
    FAIL("expected cohort error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCohort);
  }
  CHECK_THROWS_AS(SelectCohort(records, {}, "C6", "2020-1", 30), Error);
}

TEST_CASE("SelectCohort imputes with the cohort mean") {
  std::vector<CleanRecord> records = {Rec("A", "C2", "s2", 60), Rec("B", "C2", "s2", 70),
                                      Rec("C", "C2", "s2", 80), Rec("A", "C1", "s1", 70),
                                      Rec("B", "C1", "s1", 75)};
  const std::vector<PrerequisiteEntry> prereqs = {{"C2", "C1"}};
  const Cohort c = SelectCohort(records, prereqs, "C2", "s2", 30);
  REQUIRE(c.size() == 3);
  CHECK(c.features()[2].imputed);
  CHECK(c.features()[2].prereq_marks_mean == doctest::Approx(72.5));
  CHECK_FALSE(c.features()[0].imputed);
}

TEST_CASE("Cohort invariants") {
  FeatureVector f;
  CHECK_THROWS_AS(Cohort("C", "s", {"A"}, {f}), Error);
  CHECK_THROWS_AS(Cohort("C", "s", {"A", "A"}, {f, f}), Error);
  CHECK_THROWS_AS(Cohort("C", "s", {"A", "B"}, {f}), Error);
  FeatureVector bad;
  bad.credits = std::numeric_limits<double>::infinity();
  CHECK_THROWS_AS(Cohort("C", "s", {"A", "B"}, {f, bad}), Error);
}

TEST_CASE("InitialPartition") {
  SUBCASE("30 students in groups of 3") {
    const Partition p = InitialPartition(30, 3, 1);
    CHECK(p.n_groups() == 10);
    for (int s : p.group_sizes()) CHECK(s == 3);
  }
  SUBCASE("7 students in groups of 3") {
    // 7 dealt round-robin into ceil(7/3) = 3 groups: 3, 2, 2.
    const Partition p = InitialPartition(7, 3, 1);
    CHECK(p.n_groups() == 3);
    CHECK(SortedSizes(p) == std::vector<int>{2, 2, 3});
  }
  SUBCASE("deterministic per seed") {
    CHECK(InitialPartition(30, 3, 42) == InitialPartition(30, 3, 42));
    CHECK_FALSE(InitialPartition(30, 3, 42) == InitialPartition(30, 3, 43));
  }
  SUBCASE("random sizes and seeds keep the invariants") {
    Rng rng(3);
    for (int t = 0; t < 300; ++t) {
      const std::size_t n = 2 + rng.Index(40);
      const int s = 1 + static_cast<int>(rng.Index(6));
      CheckInvariants(InitialPartition(n, s, rng.Next()), n, s);
    }
  }
}

TEST_CASE("Partition validation") {
  CHECK_THROWS_AS(Partition({0, 0, 0, 0}, 2, 3), Error);  // empty group 1
  CHECK_THROWS_AS(Partition({0, 0, 0, 0, 1}, 2, 3), Error);  // oversize
  CHECK_THROWS_AS(Partition({0, 2}, 2, 3), Error);
  CHECK_NOTHROW(Partition({0, 1, 0}, 2, 2));
}

TEST_CASE("Swap semantics") {
  // {A,B,C},{D,E,F}; swap(A,D) -> {D,B,C},{A,E,F}
  const Partition p({0, 0, 0, 1, 1, 1}, 2, 3);
  const Partition q = p.Apply({MoveKind::kSwap, 0, 3, -1});
  CHECK(q.Canonical() == CanonicalForm{{0, 4, 5}, {1, 2, 3}});
  CHECK(q.group_of(3) == 0);
  CHECK(q.group_of(0) == 1);
  CHECK(q.Apply({MoveKind::kSwap, 0, 3, -1}) == p);
  CHECK_THROWS_AS(p.Apply({MoveKind::kSwap, 0, 1, -1}), Error);
  CHECK_THROWS_AS(p.Apply({MoveKind::kRelocate, 0, 0, 1}), Error);
}

TEST_CASE("ProposeNeighbor on full partitions only swaps") {
  Rng rng(11);
  Partition p = InitialPartition(30, 3, 5);
  for (int i = 0; i < 500; ++i) {
    auto [move, next] = ProposeNeighbor(p, rng);
    CHECK(move.kind == MoveKind::kSwap);
    CHECK(p.group_of(move.student_a) != p.group_of(move.student_b));
    CHECK(SortedSizes(next) == SortedSizes(p));
    // Exactly two students changed group.
    int changed = 0;
    for (std::size_t s = 0; s < p.size(); ++s) changed += p.group_of(s) != next.group_of(s);
    CHECK(changed == 2);
    CHECK(next.Apply(move) == p);
    p = next;
  }
}

TEST_CASE("ProposeNeighbor keeps invariants with spare capacity") {
  Rng rng(17);
  int relocations = 0;
  for (int t = 0; t < 100; ++t) {
    const std::size_t n = 3 + rng.Index(20);
    const int s = 2 + static_cast<int>(rng.Index(4));
    if (GroupCount(n, s) < 2) continue;
    Partition p = InitialPartition(n, s, rng.Next());
    for (int i = 0; i < 50; ++i) {
      const Partition before = p;
      auto [move, next] = ProposeNeighbor(p, rng);
      CHECK(before == p);  // input untouched
      CheckInvariants(next, n, s);
      if (move.kind == MoveKind::kRelocate) {
        ++relocations;
        CHECK(p.group_size(move.target_group) < s);
        CHECK(next.group_of(move.student_a) == move.target_group);
      }
      p = std::move(next);
    }
  }
  CHECK(relocations > 0);

  const Partition single = InitialPartition(3, 3, 1);
  CHECK_THROWS_AS(ProposeNeighbor(single, rng), Error);
}

TEST_CASE("Canonical form") {
  // {{B,A},{C}} -> ({A,B},{C})
  const Partition p({1, 1, 0}, 2, 2);
  CHECK(p.Canonical() == CanonicalForm{{0, 1}, {2}});
  CHECK(p.Relabeled().assignment() == std::vector<int>{0, 0, 1});
  CHECK(Partition({0, 0, 1}, 2, 2).Canonical() == p.Canonical());

  // Label permutations of a 3-group partition all agree.
  const std::vector<int> base = {0, 1, 2, 0, 1, 2};
  std::vector<int> perm = {0, 1, 2};
  do {
    std::vector<int> relabeled;
    for (int g : base) relabeled.push_back(perm[g]);
    CHECK(Partition(relabeled, 3, 2).Canonical() == Partition(base, 3, 2).Canonical());
  } while (std::next_permutation(perm.begin(), perm.end()));

  // The 3 pairings of 4 students are pairwise distinct.
  const std::vector<std::vector<int>> pairings = {{0, 0, 1, 1}, {0, 1, 0, 1}, {0, 1, 1, 0}};
  std::set<CanonicalForm> forms;
  for (const auto& a : pairings) forms.insert(Partition(a, 2, 2).Canonical());
  CHECK(forms.size() == 3);
}

TEST_CASE("Swap neighborhood of 6 students in 2x3 is connected") {
  const auto all = testing::BruteForceCanonicalSet(6, 3, true);
  REQUIRE(all.size() == 10);
  for (const auto& start_form : all) {
    std::vector<int> labels(6);
    for (std::size_t g = 0; g < start_form.size(); ++g) {
      for (auto m : start_form[g]) labels[m] = static_cast<int>(g);
    }
    std::set<CanonicalForm> seen = {start_form};
    std::deque<Partition> queue = {Partition(labels, 2, 3)};
    while (!queue.empty()) {
      const Partition p = queue.front();
      queue.pop_front();
      for (std::size_t a = 0; a < 6; ++a) {
        for (std::size_t b = a + 1; b < 6; ++b) {
          if (p.group_of(a) == p.group_of(b)) continue;
          const Partition q = p.Apply({MoveKind::kSwap, a, b, -1});
          if (seen.insert(q.Canonical()).second) queue.push_back(q);
        }
      }
    }
    CHECK(seen.size() == 10);
  }
}

}  // namespace
}  // namespace groupsa
