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

#include "groupsa/cli.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <set>
#include <sstream>
#include <tuple>
#include <unordered_map>

#include "groupsa/format.h"
#include "groupsa/oracle.h"
#include "groupsa/random.h"

namespace groupsa {
namespace fs = std::filesystem;
namespace {

const std::set<std::string>& RunKeys() {
  static const std::set<std::string> keys = {
      "records",          "prereqs",          "course",
      "semester",         "limit",            "group-size",
      "t0",               "alpha",            "tmin",
      "max-iters",        "max-runtime",      "restarts",
      "seed",             "objective",        "test-fraction",
      "split-seed",       "weights",          "out",
      "delimiter",        "parallel",         "column.student_id",
      "column.course_code", "column.credits", "column.semester",
      "column.gender",    "column.marks",
  };
  return keys;
}

Error ConfigError(const std::string& message) {
  return Error(ErrorCode::kConfiguration, message);
}

std::string_view TrimView(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::uint64_t ParseUnsigned(const std::string& key, std::string_view text) {
  text = TrimView(text);
  std::uint64_t value = 0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("setting '" + key + "' expects a non-negative integer, got '" +
                      std::string(text) + "'");
  }
  return value;
}

double ParseReal(const std::string& key, std::string_view text) {
  text = TrimView(text);
  double value = 0.0;
  const auto [ptr, ec] =
      std::from_chars(text.data(), text.data() + text.size(), value);
  if (text.empty() || ec != std::errc() || ptr != text.data() + text.size() ||
      !std::isfinite(value)) {
    throw ConfigError("setting '" + key + "' expects a number, got '" +
                      std::string(text) + "'");
  }
  return value;
}

bool ParseBool(const std::string& key, std::string_view text) {
  text = TrimView(text);
  if (text == "1" || text == "true" || text == "yes" || text == "on") return true;
  if (text == "0" || text == "false" || text == "no" || text == "off") return false;
  throw ConfigError("setting '" + key + "' expects true or false");
}

char ParseDelimiter(std::string_view text) {
  if (text == "tab" || text == "\\t" || text == "\t") return '\t';
  if (text.size() == 1) return text[0];
  throw ConfigError("delimiter must be a single character or 'tab'");
}

std::ifstream OpenInput(const fs::path& path, const std::string& what) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("cannot open " + what + " '" + path.string() + "'");
  }
  return in;
}

std::ofstream OpenOutput(const fs::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot write '" + path.string() + "'");
  return out;
}

// Standard normal draw (Box-Muller) from the explicit generator.
double Normal(Rng& rng) {
  const double u1 = 1.0 - rng.Uniform01();
  const double u2 = rng.Uniform01();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::string SemesterToken(std::size_t term) {
  return std::to_string(2015 + term / 3) + "-" + std::to_string(term % 3 + 1);
}

std::string PaddedId(char prefix, std::size_t value, int width) {
  std::ostringstream s;
  s << prefix << std::setw(width) << std::setfill('0') << value;
  return s.str();
}

}  // namespace

Settings ParseSettings(std::istream& in) {
  Settings settings;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto view = TrimView(line);
    if (view.empty() || view.front() == '#') continue;
    const auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError("config line " + std::to_string(line_no) +
                        ": expected key = value");
    }
    const std::string key(TrimView(view.substr(0, eq)));
    if (key.empty()) {
      throw ConfigError("config line " + std::to_string(line_no) + ": empty key");
    }
    settings[key] = std::string(TrimView(view.substr(eq + 1)));
  }
  return settings;
}

Settings LoadSettingsFile(const fs::path& path) {
  auto in = OpenInput(path, "config file");
  return ParseSettings(in);
}

Settings MergeSettings(Settings base, const Settings& overrides) {
  for (const auto& [k, v] : overrides) base[k] = v;
  return base;
}

RunConfig RunConfigFromSettings(const Settings& settings) {
  RunConfig c;
  for (const auto& [key, value] : settings) {
    if (!RunKeys().contains(key)) throw ConfigError("unknown setting '" + key + "'");
    if (key == "records") {
      c.records_path = value;
    } else if (key == "prereqs") {
      c.prereqs_path = value;
    } else if (key == "course") {
      c.course = value;
    } else if (key == "semester") {
      c.semester = value;
    } else if (key == "limit") {
      c.limit = ParseUnsigned(key, value);
    } else if (key == "group-size") {
      const auto size = ParseUnsigned(key, value);
      if (size == 0 || size > 1000000) throw ConfigError("group-size must be positive");
      c.max_group_size = static_cast<int>(size);
    } else if (key == "t0") {
      c.schedule.t0 = ParseReal(key, value);
    } else if (key == "alpha") {
      c.schedule.alpha = ParseReal(key, value);
    } else if (key == "tmin") {
      c.schedule.t_min = ParseReal(key, value);
    } else if (key == "max-iters") {
      c.schedule.max_iterations = ParseUnsigned(key, value);
    } else if (key == "max-runtime") {
      c.schedule.max_runtime = std::chrono::duration<double>(ParseReal(key, value));
    } else if (key == "restarts") {
      c.restarts = ParseUnsigned(key, value);
    } else if (key == "seed") {
      c.seed = ParseUnsigned(key, value);
    } else if (key == "objective") {
      c.objective.kind = ParseObjectiveKind(TrimView(value));
    } else if (key == "test-fraction") {
      c.objective.test_fraction = ParseReal(key, value);
    } else if (key == "split-seed") {
      c.objective.split_seed = ParseUnsigned(key, value);
    } else if (key == "weights") {
      const auto parts = SplitDelimited(value, ',');
      if (parts.size() != kFeatureCount) {
        throw ConfigError("weights expects " + std::to_string(kFeatureCount) +
                          " comma-separated values");
      }
      for (std::size_t k = 0; k < kFeatureCount; ++k) {
        c.objective.feature_weights[k] = ParseReal(key, parts[k]);
      }
    } else if (key == "out") {
      c.out_dir = value;
    } else if (key == "delimiter") {
      c.columns.delimiter = ParseDelimiter(value);
    } else if (key == "parallel") {
      c.parallel = ParseBool(key, value);
    } else if (key == "column.student_id") {
      c.columns.student_id = value;
    } else if (key == "column.course_code") {
      c.columns.course_code = value;
    } else if (key == "column.credits") {
      c.columns.credits = value;
    } else if (key == "column.semester") {
      c.columns.semester = value;
    } else if (key == "column.gender") {
      c.columns.gender = value;
    } else if (key == "column.marks") {
      c.columns.marks = value;
    }
  }
  if (c.limit < 2) throw ConfigError("limit must be at least 2");
  if (c.restarts == 0) throw ConfigError("restarts must be at least 1");
  c.schedule.Validate();
  c.objective.Validate();
  return c;
}

VerifyConfig VerifyConfigFromSettings(const Settings& settings) {
  VerifyConfig v;
  Settings rest = settings;
  if (auto it = rest.find("seeds"); it != rest.end()) {
    v.seeds = ParseUnsigned("seeds", it->second);
    if (v.seeds == 0) throw ConfigError("seeds must be at least 1");
    rest.erase(it);
  }
  if (auto it = rest.find("threshold"); it != rest.end()) {
    std::string_view text = TrimView(it->second);
    const bool percent = !text.empty() && text.back() == '%';
    if (percent) text.remove_suffix(1);
    v.threshold = ParseReal("threshold", text) / (percent ? 100.0 : 1.0);
    if (v.threshold < 0.0 || v.threshold > 1.0) {
      throw ConfigError("threshold must be within [0, 1] (or 0%..100%)");
    }
    rest.erase(it);
  }
  v.run = RunConfigFromSettings(rest);
  return v;
}

SynthConfig SynthConfigFromSettings(const Settings& settings) {
  SynthConfig c;
  for (const auto& [key, value] : settings) {
    if (key == "students") {
      c.students = ParseUnsigned(key, value);
    } else if (key == "courses") {
      c.courses = ParseUnsigned(key, value);
    } else if (key == "prereq-density") {
      c.prereq_density = ParseReal(key, value);
    } else if (key == "seed") {
      c.seed = ParseUnsigned(key, value);
    } else if (key == "out") {
      c.out_dir = value;
    } else {
      throw ConfigError("unknown setting '" + key + "'");
    }
  }
  if (c.students == 0 || c.courses == 0) {
    throw ConfigError("students and courses must be positive");
  }
  if (!(c.prereq_density >= 0.0 && c.prereq_density <= 1.0)) {
    throw ConfigError("prereq-density must be within [0, 1]");
  }
  return c;
}

Pipeline LoadPipeline(const RunConfig& config) {
  if (config.records_path.empty()) throw ConfigError("no record file given (--records)");
  Pipeline p;
  {
    auto in = OpenInput(config.records_path, "record file");
    auto parsed = ParseRecords(in, config.columns);
    p.raw = std::move(parsed.rows);
    p.row_errors = std::move(parsed.errors);
  }
  if (p.raw.empty() && !p.row_errors.empty()) {
    throw Error(ErrorCode::kSchema,
                "all " + std::to_string(p.row_errors.size()) + " data rows of '" +
                    config.records_path.string() + "' failed to parse; first: " +
                    p.row_errors.front().message);
  }
  p.clean = CleanRecords(p.raw);
  if (!config.prereqs_path.empty()) {
    auto in = OpenInput(config.prereqs_path, "prerequisite file");
    auto parsed = ParsePrerequisites(in, config.columns.delimiter);
    p.prereqs = std::move(parsed.entries);
    p.prereq_diagnostics = std::move(parsed.diagnostics);
  }
  return p;
}

namespace {

Cohort BuildCohort(const RunConfig& config) {
  if (config.course.empty() || config.semester.empty()) {
    throw ConfigError("both --course and --semester are required");
  }
  const Pipeline p = LoadPipeline(config);
  return SelectCohort(p.clean, p.prereqs, config.course, config.semester,
                      config.limit);
}

}  // namespace

void WriteAssignments(std::ostream& out, const Cohort& cohort,
                      const Partition& partition) {
  out << "student_id,group,prereq_marks_mean,current_marks,credits,"
         "semester_index,imputed\n";
  for (std::size_t i = 0; i < cohort.size(); ++i) {
    const auto& f = cohort.features()[i];
    out << cohort.students()[i] << ',' << partition.group_of(i) << ','
        << FormatDouble(f.prereq_marks_mean) << ',' << FormatDouble(f.current_marks)
        << ',' << FormatDouble(f.credits) << ',' << f.semester_index << ','
        << (f.imputed ? 1 : 0) << '\n';
  }
}

Partition ReadAssignments(std::istream& in, const Cohort& cohort,
                          int max_group_size) {
  std::unordered_map<std::string, std::size_t> position;
  for (std::size_t i = 0; i < cohort.size(); ++i) position[cohort.students()[i]] = i;

  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::kSchema, "empty assignments file");
  std::vector<int> assignment(cohort.size(), -1);
  int n_groups = 0;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (TrimView(line).empty()) continue;
    const auto fields = SplitDelimited(line, ',');
    const std::string where = "assignments line " + std::to_string(line_no) + ": ";
    if (fields.size() < 2) throw Error(ErrorCode::kSchema, where + "too few fields");
    const auto it = position.find(fields[0]);
    if (it == position.end()) {
      throw Error(ErrorCode::kSchema, where + "unknown student '" + fields[0] + "'");
    }
    if (assignment[it->second] != -1) {
      throw Error(ErrorCode::kSchema, where + "student listed twice");
    }
    const auto group = ParseUnsigned("group", fields[1]);
    assignment[it->second] = static_cast<int>(group);
    n_groups = std::max(n_groups, static_cast<int>(group) + 1);
  }
  if (std::find(assignment.begin(), assignment.end(), -1) != assignment.end()) {
    throw Error(ErrorCode::kSchema, "assignments file misses cohort students");
  }
  return Partition(std::move(assignment), n_groups, max_group_size);
}

void WriteSummary(std::ostream& out, const RunConfig& config,
                  const Cohort& cohort, const AnnealResult& result) {
  const Schedule& s = config.schedule;
  out << "course: " << cohort.course_code() << '\n'
      << "semester: " << cohort.semester() << '\n'
      << "cohort_size: " << cohort.size() << '\n'
      << "max_group_size: " << config.max_group_size << '\n'
      << "n_groups: " << result.best_partition.n_groups() << '\n'
      << "objective: " << ObjectiveKindName(config.objective.kind) << '\n'
      << "test_fraction: " << FormatDouble(config.objective.test_fraction) << '\n'
      << "split_seed: " << config.objective.split_seed << '\n'
      << "feature_weights:";
  for (double w : config.objective.feature_weights) out << ' ' << FormatDouble(w);
  out << '\n'
      << "t0: " << FormatDouble(s.t0) << '\n'
      << "alpha: " << FormatDouble(s.alpha) << '\n'
      << "t_min: " << FormatDouble(s.t_min) << '\n'
      << "cooling_steps: " << CoolingSteps(s.t0, s.t_min, s.alpha) << '\n'
      << "max_iterations: " << s.max_iterations << '\n'
      << "restarts: " << result.restarts.size() << '\n'
      << "master_seed: " << config.seed << '\n'
      << "best_score: " << FormatDouble(result.best_score) << '\n'
      << "best_restart: " << result.best_restart << '\n'
      << "stop_reason: " << StopReasonName(result.stop_reason) << '\n'
      << '\n'
      << "restart,initial_score,best_score,running_best,steps,stop_reason\n";
  double running = 0.0;
  for (const auto& r : result.restarts) {
    running = r.index == 0 ? r.best_score : std::max(running, r.best_score);
    out << r.index << ',' << FormatDouble(r.initial_score) << ','
        << FormatDouble(r.best_score) << ',' << FormatDouble(running) << ','
        << r.trace.size() << ',' << StopReasonName(r.stop_reason) << '\n';
  }
  out << '\n' << "groups:\n";
  const CanonicalForm groups = result.best_partition.Canonical();
  for (std::size_t g = 0; g < groups.size(); ++g) {
    out << "  " << g << ':';
    for (std::size_t member : groups[g]) out << ' ' << cohort.students()[member];
    out << '\n';
  }
}

RunOutcome Run(const RunConfig& config) {
  config.schedule.Validate();
  config.objective.Validate();
  Cohort cohort = BuildCohort(config);
  AnnealResult result =
      AnnealWithRestarts(cohort, config.objective, config.schedule, config.restarts,
                         config.max_group_size, config.seed, config.parallel);

  // Single writer, after every restart has finished.
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + config.out_dir.string() +
                      "': " + ec.message());
  }
  RunOutcome outcome{std::move(cohort), std::move(result),
                     config.out_dir / "assignments.csv",
                     config.out_dir / "summary.txt", {}};
  {
    auto out = OpenOutput(outcome.assignments_path);
    WriteAssignments(out, outcome.cohort, outcome.result.best_partition);
  }
  for (const auto& r : outcome.result.restarts) {
    const auto path = config.out_dir / ("trace_restart_" + std::to_string(r.index) + ".csv");
    auto out = OpenOutput(path);
    WriteTrace(out, r.trace);
    outcome.trace_paths.push_back(path);
  }
  {
    auto out = OpenOutput(outcome.summary_path);
    WriteSummary(out, config, outcome.cohort, outcome.result);
  }
  return outcome;
}

VerifyReport Verify(const VerifyConfig& config, const Cohort& cohort) {
  const RunConfig& run = config.run;
  CheckEnumerationCap(cohort.size(), run.max_group_size, false);
  const OracleResult oracle = BruteForceBest(cohort, run.objective, run.max_group_size);

  VerifyReport report;
  report.oracle_best = oracle.best_score;
  report.oracle_argmax_count = oracle.best_partitions.size();
  report.partitions_evaluated = oracle.evaluated;
  report.seeds = config.seeds;
  report.threshold = config.threshold;
  double sum = 0.0;
  for (std::size_t i = 0; i < config.seeds; ++i) {
    const AnnealResult r =
        AnnealWithRestarts(cohort, run.objective, run.schedule, run.restarts,
                           run.max_group_size, run.seed + i, run.parallel);
    const double gap = oracle.best_score - r.best_score;
    if (gap <= kOracleScoreTolerance) ++report.hits;
    report.worst_gap = std::max(report.worst_gap, gap);
    sum += r.best_score;
  }
  report.mean_sa_best = sum / static_cast<double>(config.seeds);
  report.passed = static_cast<double>(report.hits) >=
                  config.threshold * static_cast<double>(config.seeds) - 1e-9;
  return report;
}

VerifyReport Verify(const VerifyConfig& config) {
  return Verify(config, BuildCohort(config.run));
}

void PrintVerifyReport(std::ostream& out, const VerifyReport& report) {
  out << "oracle_best: " << FormatDouble(report.oracle_best) << '\n'
      << "oracle_argmax_partitions: " << report.oracle_argmax_count << '\n'
      << "partitions_evaluated: " << report.partitions_evaluated << '\n'
      << "seeds: " << report.seeds << '\n'
      << "hits: " << report.hits << '\n'
      << "hit_rate: " << FormatDouble(static_cast<double>(report.hits) /
                                      static_cast<double>(report.seeds))
      << '\n'
      << "mean_sa_best: " << FormatDouble(report.mean_sa_best) << '\n'
      << "worst_gap: " << FormatDouble(report.worst_gap) << '\n'
      << "threshold: " << FormatDouble(report.threshold) << '\n'
      << "verdict: " << (report.passed ? "PASS" : "FAIL") << '\n';
}

SynthTables Synthesize(const SynthConfig& config) {
  Rng rng(config.seed);
  constexpr std::size_t kProgramTerms = 12;
  constexpr std::size_t kIntakes = 4;
  const std::size_t per_term = (config.courses + kProgramTerms - 1) / kProgramTerms;

  std::ostringstream prereqs;
  prereqs << "course_code,prerequisite_code\n";
  for (std::size_t j = 1; j < config.courses; ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (rng.Uniform01() < config.prereq_density) {
        prereqs << PaddedId('C', j + 1, 3) << ',' << PaddedId('C', i + 1, 3) << '\n';
      }
    }
  }

  std::ostringstream records;
  records << "student_id,course_code,credits,semester,gender,marks\n";
  for (std::size_t s = 0; s < config.students; ++s) {
    const std::string id = PaddedId('S', s + 1, 5);
    const char* gender = rng.Uniform01() < 0.5 ? "F" : "M";
    const double ability = std::clamp(68.0 + 12.0 * Normal(rng), 25.0, 98.0);
    const std::size_t intake = s % kIntakes;
    for (std::size_t j = 0; j < config.courses; ++j) {
      if (rng.Uniform01() < 0.1) continue;  // course not taken
      const std::string course = PaddedId('C', j + 1, 3);
      const double credits = j % 4 == 3 ? 1.0 : 3.0;
      std::size_t term = intake + j / per_term;
      auto emit = [&](double noise_scale) {
        const double raw = ability + noise_scale * Normal(rng);
        const int marks = static_cast<int>(std::clamp(std::round(raw), 0.0, 100.0));
        records << id << ',' << course << ',' << credits << ','
                << SemesterToken(term) << ',' << gender << ',' << marks << '\n';
        return marks;
      };
      int marks = emit(9.0);
      // Failed courses are usually retaken; a few passes are retaken to
      // improve the grade.
      for (int attempt = 0; attempt < 2; ++attempt) {
        const bool retake = marks < kPassMark ? rng.Uniform01() < 0.8
                                              : (marks < 60 && rng.Uniform01() < 0.05);
        if (!retake) break;
        ++term;
        marks = emit(11.0);
      }
    }
  }
  return {records.str(), prereqs.str()};
}

std::vector<fs::path> WriteSynthetic(const SynthConfig& config) {
  const SynthTables tables = Synthesize(config);
  std::error_code ec;
  fs::create_directories(config.out_dir, ec);
  if (ec) {
    throw ConfigError("cannot create output directory '" + config.out_dir.string() +
                      "': " + ec.message());
  }
  const fs::path records = config.out_dir / "records.csv";
  const fs::path prereqs = config.out_dir / "prereqs.csv";
  OpenOutput(records) << tables.records_csv;
  OpenOutput(prereqs) << tables.prereqs_csv;
  return {records, prereqs};
}

void PrintStats(std::ostream& out, const RunConfig& config) {
  const Pipeline p = LoadPipeline(config);
  const DatasetStats stats = ComputeDatasetStats(p.clean);
  out << "raw_rows: " << p.raw.size() << '\n'
      << "row_errors: " << p.row_errors.size() << '\n'
      << "clean_rows: " << stats.rows << '\n'
      << "students: " << stats.students << '\n'
      << "courses: " << stats.courses << '\n';
  if (!config.prereqs_path.empty()) {
    out << "prerequisites: " << p.prereqs.size() << '\n'
        << "prerequisite_diagnostics: " << p.prereq_diagnostics.size() << '\n';
  }
  std::map<std::pair<std::string, std::string>, std::size_t> offerings;
  for (const auto& r : p.clean) ++offerings[{r.course_code, r.semester}];
  std::vector<std::tuple<std::size_t, std::string, std::string>> ranked;
  for (const auto& [key, count] : offerings) ranked.emplace_back(count, key.first, key.second);
  std::sort(ranked.begin(), ranked.end(), [](const auto& a, const auto& b) {
    if (std::get<0>(a) != std::get<0>(b)) return std::get<0>(a) > std::get<0>(b);
    return std::tie(std::get<1>(a), std::get<2>(a)) < std::tie(std::get<1>(b), std::get<2>(b));
  });
  out << "largest_offerings: course,semester,students\n";
  for (std::size_t i = 0; i < std::min<std::size_t>(5, ranked.size()); ++i) {
    out << "  " << std::get<1>(ranked[i]) << ',' << std::get<2>(ranked[i]) << ','
        << std::get<0>(ranked[i]) << '\n';
  }
}

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kConfiguration:
      return 2;
    case ErrorCode::kSchema:
      return 3;
    case ErrorCode::kCohort:
      return 4;
    case ErrorCode::kEnumerationCap:
      return 5;
    case ErrorCode::kDomain:
      return 6;
  }
  return 1;
}

}  // namespace groupsa
