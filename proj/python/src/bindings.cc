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

// Python bindings for the groupsa core.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>
#include <string>
#include <vector>

#include "groupsa/annealer.h"
#include "groupsa/cohort.h"
#include "groupsa/error.h"
#include "groupsa/objective.h"
#include "groupsa/oracle.h"
#include "groupsa/records.h"

namespace py = pybind11;

namespace groupsa {
namespace {

ObjectiveSpec MakeSpec(const std::string& objective, double test_fraction,
                       std::uint64_t split_seed) {
  ObjectiveSpec spec;
  spec.kind = ParseObjectiveKind(objective);
  spec.test_fraction = test_fraction;
  spec.split_seed = split_seed;
  return spec;
}

Schedule MakeSchedule(double t0, double alpha, double t_min, std::uint64_t max_iterations) {
  Schedule s;
  s.t0 = t0;
  s.alpha = alpha;
  s.t_min = t_min;
  s.max_iterations = max_iterations;
  return s;
}

}  // namespace
}  // namespace groupsa

PYBIND11_MODULE(_groupsa, m) {
  using namespace groupsa;
  m.doc() = "Student group formation with simulated annealing";

  static py::exception<Error> error_type(m, "GroupsaError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(error_type.ptr(), e.Diagnostic().c_str());
    }
  });

  py::class_<RawRecordRow>(m, "Record")
      .def_readonly("student_id", &RawRecordRow::student_id)
      .def_readonly("course_code", &RawRecordRow::course_code)
      .def_readonly("credits", &RawRecordRow::credits)
      .def_readonly("semester", &RawRecordRow::semester)
      .def_readonly("gender", &RawRecordRow::gender)
      .def_readonly("marks", &RawRecordRow::marks);

  py::class_<DatasetStats>(m, "DatasetStats")
      .def_readonly("rows", &DatasetStats::rows)
      .def_readonly("students", &DatasetStats::students)
      .def_readonly("courses", &DatasetStats::courses);

  m.def(
      "parse_records",
      [](const std::string& text) {
        std::istringstream in(text);
        RecordParseResult r = ParseRecords(in);
        std::vector<std::pair<std::size_t, std::string>> errors;
        for (const auto& e : r.errors) errors.emplace_back(e.line, e.message);
        return py::make_tuple(r.rows, errors);
      },
      py::arg("text"), "Parse delimited record text; returns (rows, [(line, message)]).");
  m.def("clean_records", [](const std::vector<RawRecordRow>& rows) { return CleanRecords(rows); },
        py::arg("rows"));
  m.def("dataset_stats",
        [](const std::vector<RawRecordRow>& rows) { return ComputeDatasetStats(rows); },
        py::arg("records"));

  py::class_<Cohort>(m, "Cohort")
      .def_property_readonly("course_code", &Cohort::course_code)
      .def_property_readonly("semester", &Cohort::semester)
      .def_property_readonly("students", &Cohort::students)
      .def("__len__", &Cohort::size);

  m.def(
      "cohort_from_marks",
      [](const std::vector<double>& marks) {
        std::vector<std::string> students;
        std::vector<FeatureVector> features;
        for (std::size_t i = 0; i < marks.size(); ++i) {
          students.push_back("S" + std::to_string(1000 + i));
          FeatureVector f;
          f.prereq_marks_mean = marks[i];
          f.current_marks = marks[i];
          features.push_back(f);
        }
        return Cohort("C", "s", std::move(students), std::move(features));
      },
      py::arg("marks"),
      "Cohort whose prerequisite and current marks both equal the given values.");

  py::class_<Partition>(m, "Partition")
      .def(py::init<std::vector<int>, int, int>(), py::arg("assignment"), py::arg("n_groups"),
           py::arg("max_group_size"))
      .def_property_readonly("assignment", &Partition::assignment)
      .def_property_readonly("n_groups", &Partition::n_groups)
      .def_property_readonly("group_sizes", &Partition::group_sizes)
      .def("groups", &Partition::Groups)
      .def("canonical", &Partition::Canonical)
      .def("__eq__", [](const Partition& a, const Partition& b) { return a == b; });

  m.def("initial_partition", &InitialPartition, py::arg("cohort_size"),
        py::arg("max_group_size"), py::arg("seed"));
  m.def("group_count", &GroupCount);

  m.def(
      "evaluate",
      [](const Cohort& c, const Partition& p, const std::string& objective, double test_fraction,
         std::uint64_t split_seed) {
        return Evaluate(c, p, MakeSpec(objective, test_fraction, split_seed));
      },
      py::arg("cohort"), py::arg("partition"), py::arg("objective") = "separability",
      py::arg("test_fraction") = 0.2, py::arg("split_seed") = 0);

  m.def("acceptance_probability", &AcceptanceProbability, py::arg("score_new"),
        py::arg("score_old"), py::arg("temperature"));
  m.def("cooling_steps", &CoolingSteps, py::arg("t0"), py::arg("t_min"), py::arg("alpha"));
  m.def("select_best_restart",
        [](const std::vector<double>& bests) {
          const BestRestart b = SelectBestRestart(bests);
          return py::make_tuple(b.index, b.score);
        },
        py::arg("restart_bests"), "Returns (index, score) of the best restart.");

  py::class_<AnnealResult>(m, "AnnealResult")
      .def_readonly("best_partition", &AnnealResult::best_partition)
      .def_readonly("best_score", &AnnealResult::best_score)
      .def_readonly("best_restart", &AnnealResult::best_restart)
      .def_property_readonly("restart_bests", [](const AnnealResult& r) {
        std::vector<double> out;
        for (const auto& s : r.restarts) out.push_back(s.best_score);
        return out;
      });

  m.def(
      "anneal",
      [](const Cohort& cohort, const std::string& objective, double t0, double alpha,
         double t_min, std::uint64_t max_iterations, std::size_t restarts, int max_group_size,
         std::uint64_t seed, bool parallel) {
        py::gil_scoped_release release;
        return AnnealWithRestarts(cohort, MakeSpec(objective, 0.2, 0),
                                  MakeSchedule(t0, alpha, t_min, max_iterations), restarts,
                                  max_group_size, seed, parallel);
      },
      py::arg("cohort"), py::arg("objective") = "separability", py::arg("t0") = 10.0,
      py::arg("alpha") = 0.7, py::arg("t_min") = 0.0001, py::arg("max_iterations") = 100000,
      py::arg("restarts") = 5, py::arg("max_group_size") = 3, py::arg("seed") = 0,
      py::arg("parallel") = false);

  m.def("count_partitions", &CountPartitions, py::arg("n_students"), py::arg("max_group_size"),
        py::arg("exact_fill") = false);
  m.def("enumerate_partitions", &EnumeratePartitions, py::arg("n_students"),
        py::arg("max_group_size"), py::arg("exact_fill") = false);
  m.def(
      "brute_force_best",
      [](const Cohort& cohort, const std::string& objective, int max_group_size) {
        const OracleResult r = BruteForceBest(cohort, MakeSpec(objective, 0.2, 0), max_group_size);
        return py::make_tuple(r.best_score, r.best_partitions, r.evaluated);
      },
      py::arg("cohort"), py::arg("objective") = "separability", py::arg("max_group_size") = 3,
      "Returns (best_score, best_partitions, evaluated).");
}
