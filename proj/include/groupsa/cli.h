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

// Pipeline entry points behind the groupsa command-line tool.
//
// Settings come from a key=value config file and from command-line flags
// using the same keys (flag "--max-iters" is key "max-iters"); flags win.

#ifndef GROUPSA_CLI_H_
#define GROUPSA_CLI_H_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "groupsa/annealer.h"
#include "groupsa/cohort.h"
#include "groupsa/error.h"
#include "groupsa/objective.h"
#include "groupsa/records.h"

namespace groupsa {

using Settings = std::map<std::string, std::string>;

struct RunConfig {
  std::filesystem::path records_path;
  std::filesystem::path prereqs_path;
  std::string course;
  std::string semester;
  std::size_t limit = 30;
  int max_group_size = 3;
  ObjectiveSpec objective;
  Schedule schedule;
  std::size_t restarts = 5;
  std::uint64_t seed = 0;
  bool parallel = true;
  std::filesystem::path out_dir = "out";
  ColumnMapping columns;
};

struct VerifyConfig {
  RunConfig run;
  std::size_t seeds = 100;
  double threshold = 0.95;
};

struct SynthConfig {
  std::size_t students = 818;
  std::size_t courses = 69;
  double prereq_density = 0.1;
  std::uint64_t seed = 0;
  std::filesystem::path out_dir = "data";
};

// Parses "key = value" lines; blank lines and '#' comments are skipped.
Settings ParseSettings(std::istream& in);
Settings LoadSettingsFile(const std::filesystem::path& path);

// Entries of `overrides` replace those of `base`.
Settings MergeSettings(Settings base, const Settings& overrides);

// Unknown keys and malformed values raise Error(kConfiguration).
RunConfig RunConfigFromSettings(const Settings& settings);
VerifyConfig VerifyConfigFromSettings(const Settings& settings);
SynthConfig SynthConfigFromSettings(const Settings& settings);

// Input stage shared by run and verify.
struct Pipeline {
  std::vector<RawRecordRow> raw;
  std::vector<LineError> row_errors;
  std::vector<CleanRecord> clean;
  std::vector<PrerequisiteEntry> prereqs;
  std::vector<LineError> prereq_diagnostics;
};

// Reads and cleans the record file (and the prerequisite file, if set).
// Missing files are configuration errors naming the path; a record file
// whose data rows all fail to parse is a schema error.
Pipeline LoadPipeline(const RunConfig& config);

struct RunOutcome {
  Cohort cohort;
  AnnealResult result;
  std::filesystem::path assignments_path;
  std::filesystem::path summary_path;
  std::vector<std::filesystem::path> trace_paths;
};

// Loads, optimizes and writes assignments.csv, summary.txt and
// trace_restart_<i>.csv under config.out_dir.
RunOutcome Run(const RunConfig& config);

void WriteAssignments(std::ostream& out, const Cohort& cohort,
                      const Partition& partition);
// Parses an assignments file back into a partition of `cohort`.
Partition ReadAssignments(std::istream& in, const Cohort& cohort,
                          int max_group_size);
void WriteSummary(std::ostream& out, const RunConfig& config,
                  const Cohort& cohort, const AnnealResult& result);

struct VerifyReport {
  double oracle_best = 0.0;
  std::size_t oracle_argmax_count = 0;
  std::size_t partitions_evaluated = 0;
  std::size_t seeds = 0;
  std::size_t hits = 0;
  double worst_gap = 0.0;
  double mean_sa_best = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

// Runs the annealer under master seeds seed..seed+seeds-1 and counts how
// often it reaches the exhaustive optimum. Throws Error(kEnumerationCap)
// for cohorts the oracle cannot enumerate.
VerifyReport Verify(const VerifyConfig& config, const Cohort& cohort);
VerifyReport Verify(const VerifyConfig& config);
void PrintVerifyReport(std::ostream& out, const VerifyReport& report);

struct SynthTables {
  std::string records_csv;
  std::string prereqs_csv;
};

// Deterministic synthetic records with retakes (duplicate pairs) and failing
// marks mixed in.
SynthTables Synthesize(const SynthConfig& config);
// Writes records.csv and prereqs.csv under config.out_dir.
std::vector<std::filesystem::path> WriteSynthetic(const SynthConfig& config);

// Row counts before and after cleaning plus the largest course offerings.
void PrintStats(std::ostream& out, const RunConfig& config);

// Process exit status per error class.
int ExitCodeFor(ErrorCode code);

}  // namespace groupsa

#endif  // GROUPSA_CLI_H_
