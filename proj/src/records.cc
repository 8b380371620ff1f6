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

#include "groupsa/records.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <optional>
#include <set>
#include <tuple>

#include "groupsa/error.h"

namespace groupsa {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::optional<double> ParseNumber(std::string_view text) {
  text = Trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  if (text.empty()) return std::nullopt;
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    return std::nullopt;
  }
  return value;
}

std::optional<std::size_t> FindColumn(const std::vector<std::string>& header,
                                      const std::string& name) {
  const auto it = std::find(header.begin(), header.end(), name);
  if (it == header.end()) return std::nullopt;
  return static_cast<std::size_t>(it - header.begin());
}

bool IsBlank(std::string_view line) { return Trim(line).empty(); }

// Reads one line, stripping a trailing '\r'.
bool ReadLine(std::istream& in, std::string& line) {
  if (!std::getline(in, line)) return false;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  return true;
}

// Total order used to pick the surviving row of a (student, course) pair:
// higher marks, then later semester, then the remaining fields.
bool Outranks(const RawRecordRow& a, const RawRecordRow& b) {
  return std::tie(a.marks, a.semester, a.credits, a.gender) >
         std::tie(b.marks, b.semester, b.credits, b.gender);
}

}  // namespace

std::vector<std::string> SplitDelimited(std::string_view line,
                                        char delimiter) {
  std::vector<std::string> fields;
  std::string field;
  bool quoted = false;
  bool was_quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          field.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field.push_back(c);
      }
    } else if (c == '"' && Trim(field).empty()) {
      field.clear();
      quoted = true;
      was_quoted = true;
    } else if (c == delimiter) {
      fields.push_back(was_quoted ? field : std::string(Trim(field)));
      field.clear();
      was_quoted = false;
    } else if (!was_quoted) {
      field.push_back(c);
    }
  }
  fields.push_back(was_quoted ? field : std::string(Trim(field)));
  return fields;
}

RecordParseResult ParseRecords(std::istream& source,
                               const ColumnMapping& mapping) {
  std::string line;
  std::size_t line_no = 0;
  while (ReadLine(source, line)) {
    ++line_no;
    if (!IsBlank(line)) break;
  }
  if (line_no == 0 || IsBlank(line)) {
    throw Error(ErrorCode::kSchema, "record file has no header row");
  }
  const auto header = SplitDelimited(line, mapping.delimiter);

  auto require = [&](const std::string& name) {
    const auto index = FindColumn(header, name);
    if (!index) {
      throw Error(ErrorCode::kSchema,
                  "record file is missing required column '" + name + "'");
    }
    return *index;
  };
  const std::size_t student_col = require(mapping.student_id);
  const std::size_t course_col = require(mapping.course_code);
  const std::size_t credits_col = require(mapping.credits);
  const std::size_t semester_col = require(mapping.semester);
  const std::size_t marks_col = require(mapping.marks);
  const auto gender_col = FindColumn(header, mapping.gender);

  RecordParseResult result;
  while (ReadLine(source, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    const auto fields = SplitDelimited(line, mapping.delimiter);
    auto fail = [&](const std::string& message) {
      result.errors.push_back(
          {line_no, "line " + std::to_string(line_no) + ": " + message});
    };
    if (fields.size() < header.size()) {
      fail("expected " + std::to_string(header.size()) + " fields, found " +
           std::to_string(fields.size()));
      continue;
    }
    RawRecordRow row;
    row.student_id = fields[student_col];
    row.course_code = fields[course_col];
    row.semester = fields[semester_col];
    if (gender_col) row.gender = fields[*gender_col];
    if (row.student_id.empty() || row.course_code.empty()) {
      fail("empty student id or course code");
      continue;
    }
    const auto marks = ParseNumber(fields[marks_col]);
    if (!marks) {
      fail("non-numeric marks '" + fields[marks_col] + "'");
      continue;
    }
    const double rounded = std::round(*marks);
    if (rounded < 0.0 || rounded > 100.0) {
      fail("marks " + fields[marks_col] + " outside [0,100]");
      continue;
    }
    row.marks = static_cast<int>(rounded);
    const auto credits = ParseNumber(fields[credits_col]);
    if (!credits || *credits < 0.0) {
      fail("invalid credits '" + fields[credits_col] + "'");
      continue;
    }
    row.credits = *credits;
    result.rows.push_back(std::move(row));
  }
  return result;
}

std::vector<CleanRecord> CleanRecords(std::span<const RawRecordRow> rows) {
  std::vector<const RawRecordRow*> order;
  order.reserve(rows.size());
  for (const auto& row : rows) order.push_back(&row);
  // Pair ascending, best row first within each pair.
  std::sort(order.begin(), order.end(),
            [](const RawRecordRow* a, const RawRecordRow* b) {
              const int by_student = a->student_id.compare(b->student_id);
              if (by_student != 0) return by_student < 0;
              const int by_course = a->course_code.compare(b->course_code);
              if (by_course != 0) return by_course < 0;
              return Outranks(*a, *b);
            });
  std::vector<CleanRecord> out;
  for (std::size_t i = 0; i < order.size(); ++i) {
    const RawRecordRow& row = *order[i];
    const bool first_of_pair =
        i == 0 || order[i - 1]->student_id != row.student_id ||
        order[i - 1]->course_code != row.course_code;
    if (first_of_pair && row.marks >= kPassMark) out.push_back(row);
  }
  return out;
}

PrerequisiteParseResult ParsePrerequisites(std::istream& source,
                                           char delimiter) {
  PrerequisiteParseResult result;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::set<PrerequisiteEntry> unique;
  while (ReadLine(source, line)) {
    ++line_no;
    if (IsBlank(line)) continue;
    if (!header_seen) {
      header_seen = true;
      continue;
    }
    const auto fields = SplitDelimited(line, delimiter);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (fields.size() < 2 || fields[0].empty() || fields[1].empty()) {
      result.diagnostics.push_back(
          {line_no, where + "expected course and prerequisite codes"});
      continue;
    }
    if (fields[0] == fields[1]) {
      result.diagnostics.push_back(
          {line_no, where + "course '" + fields[0] +
                        "' listed as its own prerequisite"});
      continue;
    }
    unique.insert({fields[0], fields[1]});
  }
  result.entries.assign(unique.begin(), unique.end());
  return result;
}

DatasetStats ComputeDatasetStats(std::span<const CleanRecord> records) {
  std::set<std::string_view> students;
  std::set<std::string_view> courses;
  for (const auto& r : records) {
    students.insert(r.student_id);
    courses.insert(r.course_code);
  }
  return {records.size(), students.size(), courses.size()};
}

}  // namespace groupsa
