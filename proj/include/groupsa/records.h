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

// Academic record ingestion and cleaning.
//
// Record files are delimited text tables with a header row. Column labels are
// mapped onto the six record attributes through ColumnMapping, so files with
// arbitrary headers can be read. Cleaning keeps one passing row per
// (student, course) pair: the one with the highest marks.

#ifndef GROUPSA_RECORDS_H_
#define GROUPSA_RECORDS_H_

#include <cstddef>
#include <istream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace groupsa {

// Marks strictly below this value are failing and removed by CleanRecords.
inline constexpr int kPassMark = 40;

struct RawRecordRow {
  std::string student_id;
  std::string course_code;
  double credits = 0.0;
  // Compared lexicographically; use sortable term codes such as "2019-2".
  std::string semester;
  std::string gender;
  int marks = 0;

  friend bool operator==(const RawRecordRow&, const RawRecordRow&) = default;
};

// Same fields as RawRecordRow. Within a cleaned set each (student_id,
// course_code) pair is unique and marks >= kPassMark.
using CleanRecord = RawRecordRow;

struct PrerequisiteEntry {
  std::string course_code;
  std::string prerequisite_code;

  friend auto operator<=>(const PrerequisiteEntry&,
                          const PrerequisiteEntry&) = default;
};

// Header labels for each attribute. gender may be absent from the file.
struct ColumnMapping {
  std::string student_id = "student_id";
  std::string course_code = "course_code";
  std::string credits = "credits";
  std::string semester = "semester";
  std::string gender = "gender";
  std::string marks = "marks";
  char delimiter = ',';
};

struct LineError {
  std::size_t line = 0;  // 1-based, header is line 1
  std::string message;
};

struct RecordParseResult {
  std::vector<RawRecordRow> rows;
  std::vector<LineError> errors;
};

struct PrerequisiteParseResult {
  std::vector<PrerequisiteEntry> entries;
  std::vector<LineError> diagnostics;
};

struct DatasetStats {
  std::size_t rows = 0;
  std::size_t students = 0;
  std::size_t courses = 0;

  friend bool operator==(const DatasetStats&, const DatasetStats&) = default;
};

// Splits one delimited line. Fields may be double-quoted ("" escapes a quote);
// unquoted fields are trimmed of surrounding whitespace.
std::vector<std::string> SplitDelimited(std::string_view line, char delimiter);

// Throws Error(kSchema) when the header is missing or lacks a required column.
// Bad data lines are collected in `errors` and skipped.
RecordParseResult ParseRecords(std::istream& source,
                               const ColumnMapping& mapping = {});

// Keeps, per (student, course), the row with maximum marks (later semester
// wins ties), drops rows with marks < kPassMark, and orders the result by
// (student_id, course_code). Idempotent and independent of input order.
std::vector<CleanRecord> CleanRecords(std::span<const RawRecordRow> rows);

// Two-column table (course, prerequisite) with a header row. Output is sorted
// with duplicates collapsed; self-prerequisites are rejected with a
// diagnostic.
PrerequisiteParseResult ParsePrerequisites(std::istream& source,
                                           char delimiter = ',');

DatasetStats ComputeDatasetStats(std::span<const CleanRecord> records);

}  // namespace groupsa

#endif  // GROUPSA_RECORDS_H_
