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

// groupsa: form student groups with simulated annealing.
//
//   groupsa synth  --students 818 --courses 69 --out data
//   groupsa stats  --records data/records.csv
//   groupsa run    --records data/records.csv --prereqs data/prereqs.csv \
//                  --course C013 --semester 2016-2 --out out
//   groupsa verify --records ... --limit 6 --group-size 3 --objective balance

#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "groupsa/cli.h"

namespace {

struct FlagSpec {
  const char* name;  // settings key, flag is "--" + name
  const char* help;
};

constexpr FlagSpec kRunFlags[] = {
    {"records", "record file (delimited text with header)"},
    {"prereqs", "prerequisite file (course_code,prerequisite_code)"},
    {"course", "course code of the class to group"},
    {"semester", "semester token of the class"},
    {"limit", "maximum cohort size (default 30)"},
    {"group-size", "maximum students per group (default 3)"},
    {"t0", "initial temperature (default 10)"},
    {"alpha", "cooling factor in (0,1) (default 0.7)"},
    {"tmin", "temperature floor (default 0.0001)"},
    {"max-iters", "iteration cap per restart (default 100000)"},
    {"max-runtime", "runtime cap per restart in seconds (default 60)"},
    {"restarts", "number of restarts (default 5)"},
    {"seed", "master seed (default 0)"},
    {"objective", "separability | balance (default separability)"},
    {"test-fraction", "held-out fraction for separability (default 0.2)"},
    {"split-seed", "train/test split seed (default 0)"},
    {"weights", "feature weights prereq,current,credits,semester (default 1,1,0,0)"},
    {"delimiter", "input field delimiter (default ',')"},
    {"parallel", "run restarts on worker threads (default true)"},
    {"out", "output directory (default out)"},
};

constexpr FlagSpec kVerifyFlags[] = {
    {"seeds", "number of master seeds to try (default 100)"},
    {"threshold", "required hit rate, 0..1 or percent (default 0.95)"},
};

constexpr FlagSpec kSynthFlags[] = {
    {"students", "number of students (default 818)"},
    {"courses", "number of courses (default 69)"},
    {"prereq-density", "probability an earlier course is a prerequisite (default 0.1)"},
    {"seed", "generator seed (default 0)"},
    {"out", "output directory (default data)"},
};

// Flag values land here keyed by setting name; only flags actually given
// on the command line are copied into the final settings.
struct FlagValues {
  std::vector<std::pair<std::string, CLI::Option*>> options;
  std::map<std::string, std::string> values;
};

template <std::size_t N>
void AddFlags(CLI::App* app, const FlagSpec (&specs)[N], FlagValues& flags) {
  for (const auto& spec : specs) {
    auto* opt = app->add_option(std::string("--") + spec.name,
                                flags.values[spec.name], spec.help);
    flags.options.emplace_back(spec.name, opt);
  }
}

groupsa::Settings Collect(const std::string& config_path, const FlagValues& flags) {
  groupsa::Settings given;
  for (const auto& [name, opt] : flags.options) {
    if (opt->count() > 0) given[name] = flags.values.at(name);
  }
  groupsa::Settings base;
  if (!config_path.empty()) base = groupsa::LoadSettingsFile(config_path);
  return groupsa::MergeSettings(std::move(base), given);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Student group formation with simulated annealing"};
  app.require_subcommand(1);

  std::string config_path;
  FlagValues run_flags, verify_flags, synth_flags, stats_flags;

  auto* run = app.add_subcommand("run", "optimize groups for one class");
  run->add_option("--config", config_path, "key=value config file");
  AddFlags(run, kRunFlags, run_flags);

  auto* verify = app.add_subcommand(
      "verify", "compare annealing against exhaustive search (cohort <= 12)");
  verify->add_option("--config", config_path, "key=value config file");
  AddFlags(verify, kRunFlags, verify_flags);
  AddFlags(verify, kVerifyFlags, verify_flags);

  auto* synth = app.add_subcommand("synth", "write synthetic record files");
  synth->add_option("--config", config_path, "key=value config file");
  AddFlags(synth, kSynthFlags, synth_flags);

  auto* stats = app.add_subcommand("stats", "row counts before/after cleaning");
  stats->add_option("--config", config_path, "key=value config file");
  AddFlags(stats, kRunFlags, stats_flags);

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) {
      const auto config = groupsa::RunConfigFromSettings(Collect(config_path, run_flags));
      const auto outcome = groupsa::Run(config);
      std::cout << "best_score: " << outcome.result.best_score << " (restart "
                << outcome.result.best_restart << ")\n"
                << "assignments: " << outcome.assignments_path.string() << '\n'
                << "summary: " << outcome.summary_path.string() << '\n';
      for (const auto& p : outcome.trace_paths) std::cout << "trace: " << p.string() << '\n';
      return 0;
    }
    if (verify->parsed()) {
      const auto config =
          groupsa::VerifyConfigFromSettings(Collect(config_path, verify_flags));
      const auto report = groupsa::Verify(config);
      groupsa::PrintVerifyReport(std::cout, report);
      return report.passed ? 0 : 1;
    }
    if (synth->parsed()) {
      const auto config =
          groupsa::SynthConfigFromSettings(Collect(config_path, synth_flags));
      for (const auto& p : groupsa::WriteSynthetic(config)) {
        std::cout << "wrote " << p.string() << '\n';
      }
      return 0;
    }
    if (stats->parsed()) {
      const auto config =
          groupsa::RunConfigFromSettings(Collect(config_path, stats_flags));
      groupsa::PrintStats(std::cout, config);
      return 0;
    }
  } catch (const groupsa::Error& e) {
    std::cerr << e.Diagnostic() << '\n';
    return groupsa::ExitCodeFor(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error[internal]: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
