#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "rb/analytics.hpp"
#include "rb/encode.hpp"
#include "rb/error.hpp"
#include "rb/harness.hpp"
#include "rb/instance.hpp"
#include "rb/params.hpp"
#include "rb/reports.hpp"
#include "rb/search.hpp"
#include "rb/serialize.hpp"
#include "rb/symmetry.hpp"

namespace py = pybind11;

namespace {

py::object to_python(const rb::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

rb::SolveMode parse_mode(const std::string& mode) {
  if (mode == "decide") return rb::SolveMode::kDecide;
  if (mode == "count") return rb::SolveMode::kCount;
  if (mode == "enumerate") return rb::SolveMode::kEnumerate;
  throw rb::Error(rb::ErrorCode::kInvalidArgument, "mode must be decide, count or enumerate");
}

rb::SweepConfig make_config(int n, double alpha, std::optional<int> d, double p, int k,
                            std::vector<double> r_factors, double r_min, double r_max, int steps,
                            int trials, std::uint64_t seed, std::uint64_t budget, int jobs,
                            std::vector<int> avoid_sizes) {
  rb::SweepConfig c;
  c.n = n;
  c.alpha = alpha;
  c.d = d;
  c.p = p;
  c.k = k;
  c.r_factors = std::move(r_factors);
  c.r_min = r_min;
  c.r_max = r_max;
  c.steps = steps;
  c.trials = trials;
  c.seed = seed;
  c.budget = budget;
  c.jobs = jobs;
  c.avoid_sizes = std::move(avoid_sizes);
  return c;
}

py::object records(const std::vector<rb::ExperimentRecord>& recs) {
  return to_python(rb::Json::parse(rb::records_to_json(recs)))["records"];
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Model RB random CSP workbench";

  static py::exception<rb::Error> rb_error(m, "RbError");
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const rb::Error& e) {
      const auto message = std::string(rb::to_string(e.code())) + ": " + e.what();
      PyErr_SetString(rb_error.ptr(), message.c_str());
    }
  });

  py::class_<rb::RbParams>(m, "Params")
      .def_readonly("n", &rb::RbParams::n)
      .def_readonly("alpha", &rb::RbParams::alpha)
      .def_readonly("p", &rb::RbParams::p)
      .def_readonly("k", &rb::RbParams::k)
      .def_readonly("d", &rb::RbParams::d)
      .def_readonly("b", &rb::RbParams::b)
      .def_readonly("p_eff", &rb::RbParams::p_eff)
      .def_readonly("r", &rb::RbParams::r)
      .def_readonly("m", &rb::RbParams::m)
      .def_readonly("seed", &rb::RbParams::seed)
      .def_readonly("r_cr", &rb::RbParams::r_cr)
      .def_readonly("delta", &rb::RbParams::delta)
      .def_readonly("omega", &rb::RbParams::omega)
      .def("to_dict", [](const rb::RbParams& p) { return to_python(rb::params_to_json(p)); })
      .def("__eq__", [](const rb::RbParams& a, const rb::RbParams& b) { return a == b; })
      .def("__repr__", [](const rb::RbParams& p) {
        return "Params(n=" + std::to_string(p.n) + ", d=" + std::to_string(p.d) +
               ", k=" + std::to_string(p.k) + ", b=" + std::to_string(p.b) +
               ", m=" + std::to_string(p.m) + ", seed=" + std::to_string(p.seed) + ")";
      });

  m.def(
      "derive_params",
      [](int n, double alpha, double p, int k, std::uint64_t seed, std::optional<double> r,
         std::optional<int> d) {
        rb::DensityMode mode;
        mode.explicit_r = r;
        mode.explicit_d = d;
        return rb::derive_params(n, alpha, p, k, seed, mode);
      },
      py::arg("n"), py::arg("alpha") = 1.0, py::arg("p") = 0.5, py::arg("k") = 2,
      py::arg("seed") = 1, py::arg("r") = py::none(), py::arg("d") = py::none());

  py::class_<rb::Instance>(m, "Instance")
      .def_readonly("params", &rb::Instance::params)
      .def_property_readonly("n", &rb::Instance::n)
      .def_property_readonly("d", &rb::Instance::d)
      .def_property_readonly("num_constraints",
                             [](const rb::Instance& i) { return i.constraints.size(); })
      .def_property_readonly("scopes",
                             [](const rb::Instance& i) {
                               std::vector<std::vector<int>> out;
                               for (const auto& c : i.constraints) out.push_back(c.scope);
                               return out;
                             })
      .def_readonly("planted", &rb::Instance::planted)
      .def("is_solution", &rb::Instance::is_solution, py::arg("assignment"))
      .def("violated", &rb::Instance::violated, py::arg("assignment"))
      .def("allowed_tuples",
           [](const rb::Instance& i, std::size_t index) { return i.materialize(index).tuples(); },
           py::arg("constraint_index"))
      .def("to_json", &rb::serialize_instance)
      .def("__eq__", [](const rb::Instance& a, const rb::Instance& b) { return a == b; });

  m.def(
      "gen_instance",
      [](const rb::RbParams& params, bool planted) {
        return rb::gen_instance(params, {.planted = planted});
      },
      py::arg("params"), py::arg("planted") = false);
  m.def("parse_instance", &rb::parse_instance, py::arg("text"));

  m.def(
      "solve",
      [](const rb::Instance& inst, const std::string& mode, std::size_t cap, std::uint64_t budget) {
        return to_python(rb::to_json(rb::solve(inst, {parse_mode(mode), cap, budget})));
      },
      py::arg("instance"), py::arg("mode") = "count", py::arg("cap") = 16,
      py::arg("budget") = rb::kDefaultNodeBudget);
  m.def("brute_force_count", py::overload_cast<const rb::Instance&>(&rb::brute_force_count),
        py::arg("instance"));
  m.def(
      "near_solutions",
      [](const rb::Instance& inst, std::size_t index, std::uint64_t budget) {
        rb::SolveOptions options;
        options.budget = budget;
        return to_python(rb::to_json(rb::near_solutions(inst, index, options)));
      },
      py::arg("instance"), py::arg("constraint_index"), py::arg("budget") = rb::kDefaultNodeBudget);
  m.def(
      "self_unsat_analysis",
      [](const rb::Instance& inst, std::uint64_t budget) {
        return to_python(rb::to_json(rb::self_unsat_analysis(inst, budget)));
      },
      py::arg("instance"), py::arg("budget") = rb::kDefaultNodeBudget);

  m.def(
      "encode_dimacs", [](const rb::Instance& inst) { return rb::to_dimacs(rb::encode_log(inst)); },
      py::arg("instance"));
  m.def("decode_assignment", &rb::decode_assignment, py::arg("model"), py::arg("params"));

  m.def(
      "expected_solution_count",
      [](const rb::RbParams& p, bool unrounded) {
        return rb::expected_solution_count(
            p, unrounded ? rb::MomentBasis::kUnrounded : rb::MomentBasis::kRounded);
      },
      py::arg("params"), py::arg("unrounded") = false);
  m.def(
      "expected_near_solutions",
      [](const rb::RbParams& p, bool unrounded) {
        return rb::expected_near_solutions(
            p, unrounded ? rb::MomentBasis::kUnrounded : rb::MomentBasis::kRounded);
      },
      py::arg("params"), py::arg("unrounded") = false);
  m.def(
      "second_moment",
      [](const rb::RbParams& p, bool unrounded) {
        const auto report = rb::second_moment(
            p, unrounded ? rb::MomentBasis::kUnrounded : rb::MomentBasis::kRounded);
        py::dict out = to_python(rb::to_json(report));
        out["f_terms"] = report.f_terms;
        return out;
      },
      py::arg("params"), py::arg("unrounded") = false);
  m.def(
      "thresholds",
      [](const rb::RbParams& p) {
        return to_python(rb::to_json(rb::thresholds(p.p_eff, p.k, p.alpha, p.n, p.d)));
      },
      py::arg("params"));
  m.def(
      "validate_alpha", [](const rb::RbParams& p) { return to_python(rb::to_json(rb::validate_alpha(p))); },
      py::arg("params"));
  m.def(
      "wilson_interval",
      [](long long successes, long long trials) {
        const auto iv = rb::wilson_interval(successes, trials);
        return py::make_tuple(iv.estimate, iv.lo, iv.hi);
      },
      py::arg("successes"), py::arg("trials"));

  m.def(
      "flip_sat_to_unsat",
      [](const rb::Instance& inst, const rb::Assignment& solution, int x, std::set<int> avoid,
         std::uint64_t budget) {
        auto [post, outcome] = rb::flip_sat_to_unsat(inst, solution, x, avoid, budget);
        return py::make_tuple(std::move(post), to_python(rb::to_json(outcome)));
      },
      py::arg("instance"), py::arg("solution"), py::arg("x"), py::arg("avoid") = std::set<int>{},
      py::arg("budget") = rb::kDefaultNodeBudget);
  m.def(
      "flip_unsat_to_sat",
      [](const rb::Instance& inst, int x, std::set<int> avoid, std::uint64_t budget) {
        auto [post, outcome] = rb::flip_unsat_to_sat(inst, x, avoid, budget);
        return py::make_tuple(std::move(post), to_python(rb::to_json(outcome)));
      },
      py::arg("instance"), py::arg("x"), py::arg("avoid") = std::set<int>{},
      py::arg("budget") = rb::kDefaultNodeBudget);

  using Runner = std::vector<rb::ExperimentRecord> (*)(const rb::SweepConfig&);
  const auto bind_runner = [&m](const char* name, Runner runner) {
    m.def(
        name,
        [runner](int n, double alpha, std::optional<int> d, double p, int k,
                 std::vector<double> r_factors, double r_min, double r_max, int steps, int trials,
                 std::uint64_t seed, std::uint64_t budget, int jobs, std::vector<int> avoid_sizes) {
          const auto config = make_config(n, alpha, d, p, k, std::move(r_factors), r_min, r_max,
                                          steps, trials, seed, budget, jobs, std::move(avoid_sizes));
          config.validate();
          std::vector<rb::ExperimentRecord> recs;
          {
            py::gil_scoped_release release;
            recs = runner(config);
          }
          return records(recs);
        },
        py::arg("n") = 10, py::arg("alpha") = 1.0, py::arg("d") = py::none(), py::arg("p") = 0.5,
        py::arg("k") = 2, py::arg("r_factors") = std::vector<double>{}, py::arg("r_min") = 0.5,
        py::arg("r_max") = 2.0, py::arg("steps") = 4, py::arg("trials") = 100,
        py::arg("seed") = 1, py::arg("budget") = rb::kDefaultNodeBudget, py::arg("jobs") = 1,
        py::arg("avoid_sizes") = std::vector<int>{});
  };
  bind_runner("run_phase_sweep", &rb::run_phase_sweep);
  bind_runner("run_flip_suite", &rb::run_flip_suite);
  bind_runner("run_threshold_suite", [](const rb::SweepConfig& c) {
    return std::vector<rb::ExperimentRecord>{rb::run_threshold_suite(c)};
  });
}
