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

#include <map>
#include <sstream>

#include "doctest.h"
#include "groupsa/error.h"
#include "groupsa/random.h"
#include "groupsa/records.h"
#include "test_util.h"

namespace groupsa {
namespace {

RecordParseResult Parse(const std::string& text, const ColumnMapping& m = {}) {
  std::istringstream in(text);
  return ParseRecords(in, m);
}

RawRecordRow Row(std::string s, std::string c, std::string sem, int marks) {
  return {std::move(s), std::move(c), 3.0, std::move(sem), "M", marks};
}

std::vector<RawRecordRow> RandomRows(Rng& rng, std::size_t n) {
  std::vector<RawRecordRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    rows.push_back({"S" + std::to_string(rng.Index(6)), "C" + std::to_string(rng.Index(4)),
                    static_cast<double>(rng.Index(4)), "20" + std::to_string(10 + rng.Index(5)),
                    rng.Index(2) ? "F" : "M", static_cast<int>(rng.Index(101))});
  }
  return rows;
}

TEST_CASE("ParseRecords reads a header and one valid line") {
  const auto r = Parse(
      "student_id,course_code,credits,semester,gender,marks\n"
      "S1,C1,3,2020-1,F,85\n");
  REQUIRE(r.rows.size() == 1);
  CHECK(r.errors.empty());
  CHECK(r.rows[0] == RawRecordRow{"S1", "C1", 3.0, "2020-1", "F", 85});
}

TEST_CASE("ParseRecords collects non-numeric marks as a line error") {
  const auto r = Parse(
      "student_id,course_code,credits,semester,gender,marks\n"
      "S1,C1,3,2020-1,F,abc\n");
  CHECK(r.rows.empty());
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].line == 2);
  CHECK(r.errors[0].message.find("line 2") != std::string::npos);
}

TEST_CASE("ParseRecords on a header-only file") {
  const auto r = Parse("student_id,course_code,credits,semester,gender,marks\n");
  CHECK(r.rows.empty());
  CHECK(r.errors.empty());
}

TEST_CASE("ParseRecords rejects a missing required column") {
  try {
    Parse("student_id,course_code,credits,semester,gender\nS1,C1,3,2020-1,F\n");
    FAIL("expected schema error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kSchema);
    CHECK(std::string(e.what()).find("marks") != std::string::npos);
  }
  CHECK_THROWS_AS(Parse(""), Error);
}

TEST_CASE("ParseRecords maps arbitrary column labels") {
  ColumnMapping m;
  m.student_id = "Student ID";
  m.course_code = "Course Code";
  m.credits = "Credits";
  m.semester = "Semester";
  m.gender = "Gender";
  m.marks = "Marks Round";
  m.delimiter = ';';
  const auto r = Parse(
      "Student ID;Course Code;Total;Credits;Semester;Gender;Marks Round;Grades\r\n"
      "\"2019-1-60-001\";CSE101;84.5;3;2019-1;M;84.6;A\r\n"
      "\r\n"
      "2019-1-60-002;CSE101;90;1.5;2019-1;F;101;A+\r\n",
      m);
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].student_id == "2019-1-60-001");
  CHECK(r.rows[0].marks == 85);
  CHECK(r.rows[0].credits == doctest::Approx(3.0));
  REQUIRE(r.errors.size() == 1);
  CHECK(r.errors[0].line == 4);
}

TEST_CASE("ParseRecords gender column is optional") {
  const auto r = Parse("student_id,course_code,credits,semester,marks\nS1,C1,3,2020-1,70\n");
  REQUIRE(r.rows.size() == 1);
  CHECK(r.rows[0].gender.empty());
}

TEST_CASE("ParseRecords rejects bad credits and empty ids") {
  const auto r = Parse(
      "student_id,course_code,credits,semester,gender,marks\n"
      "S1,C1,-1,2020-1,F,70\n"
      ",C1,3,2020-1,F,70\n"
      "S1,C1,3,2020-1\n");
  CHECK(r.rows.empty());
  CHECK(r.errors.size() == 3);
}

TEST_CASE("SplitDelimited handles quotes") {
  const auto f = SplitDelimited(R"( a ,"b,c","say ""hi""",)", ',');
  REQUIRE(f.size() == 4);
  CHECK(f[0] == "a");
  CHECK(f[1] == "b,c");
  CHECK(f[2] == "say \"hi\"");
  CHECK(f[3].empty());
}

TEST_CASE("CleanRecords keeps the maximum marks per pair") {
  const std::vector<RawRecordRow> rows = {Row("S1", "C1", "sem1", 70),
                                          Row("S1", "C1", "sem2", 85)};
  const auto clean = CleanRecords(rows);
  REQUIRE(clean.size() == 1);
  CHECK(clean[0].marks == 85);

  // Maximum, not last semester.
  const std::vector<RawRecordRow> later_lower = {Row("S1", "C1", "sem1", 85),
                                                 Row("S1", "C1", "sem2", 70)};
  CHECK(CleanRecords(later_lower)[0].marks == 85);
}

TEST_CASE("CleanRecords pass boundary") {
  CHECK(CleanRecords(std::vector{Row("S1", "C1", "sem1", 39)}).empty());
  const auto kept = CleanRecords(std::vector{Row("S1", "C1", "sem1", 40)});
  REQUIRE(kept.size() == 1);
  CHECK(kept[0].marks == 40);
}

TEST_CASE("CleanRecords breaks mark ties by later semester") {
  const auto clean =
      CleanRecords(std::vector{Row("S1", "C1", "2020-2", 70), Row("S1", "C1", "2021-1", 70),
                               Row("S1", "C1", "2019-3", 70)});
  REQUIRE(clean.size() == 1);
  CHECK(clean[0].semester == "2021-1");
}

TEST_CASE("CleanRecords on the 100-row pipeline fixture") {
  const auto rows = testing::PipelineFixture();
  REQUIRE(rows.size() == 100);
  const auto clean = CleanRecords(rows);
  CHECK(clean.size() == 85);
  CHECK(CleanRecords(clean) == clean);
}

TEST_CASE("CleanRecords properties on random tables") {
  Rng rng(7);
  for (int trial = 0; trial < 200; ++trial) {
    auto rows = RandomRows(rng, rng.Index(60));
    const auto clean = CleanRecords(rows);

    // Brute-force maximum per pair.
    std::map<std::pair<std::string, std::string>, int> best;
    for (const auto& r : rows) {
      auto [it, inserted] = best.try_emplace({r.student_id, r.course_code}, r.marks);
      if (!inserted) it->second = std::max(it->second, r.marks);
    }
    std::size_t expected = 0;
    for (const auto& [pair, marks] : best) expected += marks >= kPassMark;
    CHECK(clean.size() == expected);
    for (std::size_t i = 0; i < clean.size(); ++i) {
      CHECK(clean[i].marks >= kPassMark);
      CHECK(clean[i].marks == best.at({clean[i].student_id, clean[i].course_code}));
      if (i > 0) {
        CHECK(std::tie(clean[i - 1].student_id, clean[i - 1].course_code) <
              std::tie(clean[i].student_id, clean[i].course_code));
      }
    }
    CHECK(CleanRecords(clean) == clean);

    rng.Shuffle(std::span(rows));
    CHECK(CleanRecords(rows) == clean);
  }
}

TEST_CASE("ParsePrerequisites") {
  auto parse = [](const std::string& text) {
    std::istringstream in(text);
    return ParsePrerequisites(in);
  };
  SUBCASE("identity") {
    const auto r = parse("course_code,prerequisite_code\nC2,C1\n");
    REQUIRE(r.entries.size() == 1);
    CHECK(r.entries[0] == PrerequisiteEntry{"C2", "C1"});
    CHECK(r.diagnostics.empty());
  }
  SUBCASE("duplicates collapse") {
    const auto r = parse("course,prereq\nC2,C1\nC2,C1\n");
    CHECK(r.entries.size() == 1);
  }
  SUBCASE("self prerequisite rejected") {
    const auto r = parse("course,prereq\nC1,C1\n");
    CHECK(r.entries.empty());
    REQUIRE(r.diagnostics.size() == 1);
    CHECK(r.diagnostics[0].line == 2);
  }
  SUBCASE("incomplete line") {
    const auto r = parse("course,prereq\nC1,\nC3\n");
    CHECK(r.entries.empty());
    CHECK(r.diagnostics.size() == 2);
  }
}

TEST_CASE("ComputeDatasetStats") {
  CHECK(ComputeDatasetStats({}) == DatasetStats{0, 0, 0});
  const std::vector<CleanRecord> rows = {Row("S1", "C1", "a", 50), Row("S1", "C2", "a", 60),
                                         Row("S2", "C1", "a", 70)};
  CHECK(ComputeDatasetStats(rows) == DatasetStats{3, 2, 2});
  const auto clean = CleanRecords(testing::PipelineFixture());
  CHECK(ComputeDatasetStats(clean) == DatasetStats{85, 17, 5});
}

}  // namespace
}  // namespace groupsa
