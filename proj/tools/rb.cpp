// rb: command-line front end for the Model RB workbench.
#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
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

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::uint64_t budget = rb::kDefaultNodeBudget;
  std::string out;
  std::string format;
  int jobs = 1;
};

struct ModelArgs {
  int n = 10;
  double alpha = 1.0;
  double p = 0.5;
  int k = 2;
  std::optional<int> d;
  std::optional<double> r;
  std::optional<double> r_factor;
};

void add_model_options(CLI::App* cmd, ModelArgs& m) {
  cmd->add_option("-n,--n", m.n, "number of variables")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", m.alpha, "domain exponent, d = round(n^alpha)");
  cmd->add_option("-p,--p", m.p, "constraint tightness");
  cmd->add_option("-k,--k", m.k, "constraint arity");
  cmd->add_option("-d,--d", m.d, "domain size (overrides alpha)");
  auto* r = cmd->add_option("-r,--r", m.r, "constraint density (default: threshold)");
  cmd->add_option("--r-factor", m.r_factor, "density as a multiple of r_cr")->excludes(r);
}

rb::RbParams model_params(const ModelArgs& m, std::uint64_t seed) {
  rb::DensityMode mode;
  mode.explicit_d = m.d;
  mode.explicit_r = m.r;
  auto params = rb::derive_params(m.n, m.alpha, m.p, m.k, seed, mode);
  if (m.r_factor) {
    mode.explicit_r = *m.r_factor * params.r_cr;
    params = rb::derive_params(m.n, m.alpha, m.p, m.k, seed, mode);
  }
  return params;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
  } else {
    rb::write_file(path, text);
  }
}

std::string dump(const rb::Json& j) { return j.dump(2) + "\n"; }

rb::RecordFormat record_format(const Globals& g) {
  if (g.format == "json") return rb::RecordFormat::kJson;
  return rb::RecordFormat::kCsv;
}

void emit_records(const std::vector<rb::ExperimentRecord>& records, const Globals& g) {
  const auto format = record_format(g);
  emit(format == rb::RecordFormat::kJson ? rb::records_to_json(records)
                                         : rb::records_to_csv(records),
       g.out);
}

void print_intervals(const std::vector<rb::ExperimentRecord>& records) {
  for (const auto& rec : records) {
    const auto row = [](const char* name, const rb::Interval& iv) {
      std::fprintf(stderr, "  %-26s %.4f  [%.4f, %.4f]\n", name, iv.estimate, iv.lo, iv.hi);
    };
    std::fprintf(stderr, "%s n=%d d=%d r=%.6g m=%d avoid=%d trials=%lld\n", rec.suite.c_str(),
                 rec.n, rec.d, rec.r, rec.m, rec.avoid_size, rec.trials);
    row("Pr[SAT]", rec.pr_sat());
    if (rec.suite == "threshold") {
      row("Pr[unique solution]", rec.pr_unique());
      row("Pr[self-unsat | UNSAT]", rec.pr_self_unsat_given_unsat());
    }
    if (rec.suite == "flip") {
      row("sat->unsat success", rec.s2u_success());
      row("unsat->sat success", rec.u2s_success());
    }
  }
}

struct SweepArgs {
  ModelArgs model;
  double r_min = 0.5;
  double r_max = 2.0;
  int steps = 4;
  std::vector<double> r_factors;
  int trials = 100;
  std::vector<int> avoid_sizes;
  bool record_timing = false;
  bool reference = false;
};

void add_sweep_options(CLI::App* cmd, SweepArgs& s) {
  cmd->add_option("-n,--n", s.model.n, "number of variables")->check(CLI::PositiveNumber);
  cmd->add_option("--alpha", s.model.alpha, "domain exponent");
  cmd->add_option("-p,--p", s.model.p, "constraint tightness");
  cmd->add_option("-k,--k", s.model.k, "constraint arity");
  cmd->add_option("-d,--d", s.model.d, "domain size (overrides alpha)");
  cmd->add_option("--trials", s.trials, "trials per point")->check(CLI::PositiveNumber);
  cmd->add_flag("--record-timing", s.record_timing, "store wall-clock seconds per record");
}

rb::SweepConfig sweep_config(const SweepArgs& s, const Globals& g) {
  rb::SweepConfig c;
  c.n = s.model.n;
  c.alpha = s.model.alpha;
  c.d = s.model.d;
  c.p = s.model.p;
  c.k = s.model.k;
  c.r_min = s.r_min;
  c.r_max = s.r_max;
  c.steps = s.steps;
  c.r_factors = s.r_factors;
  c.trials = s.trials;
  c.seed = g.seed;
  c.budget = g.budget;
  c.jobs = g.jobs;
  c.avoid_sizes = s.avoid_sizes;
  c.record_timing = s.record_timing;
  return c;
}

constexpr int kReferenceScales[][2] = {{8, 8}, {10, 10}, {12, 12}};

int exit_code(rb::SolveStatus status) {
  switch (status) {
    case rb::SolveStatus::kSat: return 10;
    case rb::SolveStatus::kUnsat: return 20;
    case rb::SolveStatus::kBudgetExhausted: return 30;
  }
  return 1;
}

rb::SolveMode parse_mode(const std::string& s) {
  if (s == "decide") return rb::SolveMode::kDecide;
  if (s == "enumerate") return rb::SolveMode::kEnumerate;
  return rb::SolveMode::kCount;
}

std::string replace_extension(const std::string& path, const std::string& ext) {
  return std::filesystem::path(path).replace_extension(ext).string();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Model RB random CSP workbench"};
  app.require_subcommand(1);
  app.fallthrough();

  Globals g;
  app.add_option("--seed", g.seed, "base seed");
  app.add_option("--budget", g.budget, "search node budget");
  app.add_option("-o,--out", g.out, "output path (default stdout)");
  app.add_option("--format", g.format, "record format")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--jobs", g.jobs, "parallel trials")
      ->envname("RB_JOBS")
      ->check(CLI::PositiveNumber);

  // gen
  auto* gen = app.add_subcommand("gen", "generate an instance");
  ModelArgs gen_model;
  bool planted = false;
  add_model_options(gen, gen_model);
  gen->add_flag("--planted", planted, "plant a solution (k = 2)");

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "solve an instance (exit 10 SAT, 20 UNSAT, 30 budget)");
  std::string solve_path;
  std::string solve_mode = "count";
  std::size_t cap = 16;
  solve_cmd->add_option("instance", solve_path, "instance JSON")->required();
  solve_cmd->add_option("--mode", solve_mode, "decide, count or enumerate")
      ->check(CLI::IsMember({"decide", "count", "enumerate"}));
  solve_cmd->add_option("--cap", cap, "solutions kept");

  // analyze
  auto* analyze = app.add_subcommand("analyze", "structural and analytic report for an instance");
  std::string analyze_path;
  bool with_self_unsat = false;
  std::optional<std::size_t> near_index;
  analyze->add_option("instance", analyze_path, "instance JSON")->required();
  analyze->add_flag("--self-unsat", with_self_unsat, "run the self-unsatisfiability analysis");
  analyze->add_option("--near", near_index, "count near-solutions of this constraint");

  // flip
  auto* flip = app.add_subcommand("flip", "apply a satisfiability-flipping symmetry mapping");
  std::string flip_path;
  std::string direction = "sat-to-unsat";
  std::optional<int> flip_var;
  std::vector<int> avoid_values;
  std::string post_path;
  flip->add_option("instance", flip_path, "instance JSON")->required();
  flip->add_option("--direction", direction, "sat-to-unsat or unsat-to-sat")
      ->check(CLI::IsMember({"sat-to-unsat", "unsat-to-sat"}));
  flip->add_option("-x,--var", flip_var, "branching variable (default: first constrained)");
  flip->add_option("--avoid", avoid_values, "values the swap must avoid")->delimiter(',');
  flip->add_option("--instance-out", post_path, "write the mapped instance here");

  // encode
  auto* encode = app.add_subcommand("encode", "log-encode an instance to DIMACS CNF");
  std::string encode_path;
  encode->add_option("instance", encode_path, "instance JSON")->required();

  // moments
  auto* moments = app.add_subcommand("moments", "first and second moment report");
  std::string moments_path;
  ModelArgs moments_model;
  bool unrounded = false;
  std::string fterms_path;
  moments->add_option("--instance", moments_path, "take parameters from an instance");
  add_model_options(moments, moments_model);
  moments->add_flag("--unrounded", unrounded, "use the real-valued constraint count");
  moments->add_option("--fterms", fterms_path, "F(S) CSV path (default: beside --out)");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "phase-transition sweep over constraint density");
  SweepArgs sweep_args;
  add_sweep_options(sweep, sweep_args);
  sweep->add_option("--r-min", sweep_args.r_min, "lowest density");
  sweep->add_option("--r-max", sweep_args.r_max, "highest density");
  sweep->add_option("--steps", sweep_args.steps, "grid points");
  sweep->add_option("--r-factors", sweep_args.r_factors, "densities as multiples of r_cr")
      ->delimiter(',');

  // suite
  auto* suite = app.add_subcommand("suite", "threshold or flip experiment suite");
  std::string suite_name;
  SweepArgs suite_args;
  suite->add_option("name", suite_name, "threshold or flip")
      ->required()
      ->check(CLI::IsMember({"threshold", "flip"}));
  add_sweep_options(suite, suite_args);
  suite->add_option("--avoid-sizes", suite_args.avoid_sizes, "flip suite avoid-set sizes")
      ->delimiter(',');
  suite->add_flag("--reference", suite_args.reference, "run the three reference scales");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*gen) {
      const auto params = model_params(gen_model, g.seed);
      emit(rb::serialize_instance(rb::gen_instance(params, {.planted = planted})) + "\n", g.out);
      return 0;
    }

    if (*solve_cmd) {
      const auto inst = rb::load_instance(solve_path);
      rb::SolveOptions options;
      options.mode = parse_mode(solve_mode);
      options.cap = cap;
      options.budget = g.budget;
      const auto report = rb::solve(inst, options);
      emit(dump(rb::to_json(report)), g.out);
      return exit_code(report.status);
    }

    if (*analyze) {
      const auto inst = rb::load_instance(analyze_path);
      const auto& params = inst.params;
      rb::Json j;
      j["params"] = rb::params_to_json(params);
      j["thresholds"] =
          rb::to_json(rb::thresholds(params.p_eff, params.k, params.alpha, params.n, params.d));
      j["alpha"] = rb::to_json(rb::validate_alpha(params));
      j["degrees"] = rb::to_json(rb::degree_stats(inst));
      j["log_expected_solutions"] = rb::log_expected_solution_count(params);
      if (near_index) {
        rb::SolveOptions options;
        options.budget = g.budget;
        j["near_solutions"] = rb::to_json(rb::near_solutions(inst, *near_index, options));
      }
      if (with_self_unsat) j["self_unsat"] = rb::to_json(rb::self_unsat_analysis(inst, g.budget));
      emit(dump(j), g.out);
      return 0;
    }

    if (*flip) {
      const auto inst = rb::load_instance(flip_path);
      const auto x = flip_var ? flip_var : rb::first_constrained_variable(inst);
      if (!x) throw rb::Error(rb::ErrorCode::kVariableUnconstrained, "instance has no constraints");
      const rb::AvoidSet avoid(avoid_values.begin(), avoid_values.end());
      std::pair<rb::Instance, rb::FlipOutcome> result;
      if (direction == "sat-to-unsat") {
        rb::SolveOptions options;
        options.mode = rb::SolveMode::kDecide;
        options.budget = g.budget;
        const auto pre = rb::solve(inst, options);
        if (pre.status != rb::SolveStatus::kSat) {
          std::cerr << "rb: instance has no solution to break (" << rb::to_string(pre.status)
                    << ")\n";
          return exit_code(pre.status);
        }
        result = rb::flip_sat_to_unsat(inst, pre.solutions.front(), *x, avoid, g.budget);
      } else {
        result = rb::flip_unsat_to_sat(inst, *x, avoid, g.budget);
      }
      if (!post_path.empty()) rb::save_instance(result.first, post_path);
      emit(dump(rb::to_json(result.second)), g.out);
      return 0;
    }

    if (*encode) {
      const auto cnf = rb::encode_log(rb::load_instance(encode_path));
      if (g.out.empty()) {
        rb::write_dimacs(cnf, std::cout);
      } else {
        rb::write_dimacs(cnf, g.out);
      }
      return 0;
    }

    if (*moments) {
      const auto params = moments_path.empty() ? model_params(moments_model, g.seed)
                                               : rb::load_instance(moments_path).params;
      const auto basis = unrounded ? rb::MomentBasis::kUnrounded : rb::MomentBasis::kRounded;
      const auto report = rb::second_moment(params, basis);
      rb::Json j;
      j["params"] = rb::params_to_json(params);
      j["basis"] = unrounded ? "unrounded" : "rounded";
      j["moments"] = rb::to_json(report);
      j["alpha"] = rb::to_json(rb::validate_alpha(params));
      const auto csv = rb::f_terms_csv(report);
      if (g.out.empty()) {
        // Without an output path the format selects which artifact is printed.
        emit(g.format == "csv" ? csv : dump(j), "");
        if (!fterms_path.empty()) rb::write_file(fterms_path, csv);
      } else {
        rb::write_file(g.out, dump(j));
        rb::write_file(fterms_path.empty() ? replace_extension(g.out, ".fterms.csv") : fterms_path,
                       csv);
      }
      return 0;
    }

    if (*sweep) {
      auto config = sweep_config(sweep_args, g);
      config.validate();
      const auto records = rb::run_phase_sweep(config);
      print_intervals(records);
      emit_records(records, g);
      return 0;
    }

    if (*suite) {
      std::vector<rb::ExperimentRecord> records;
      std::vector<rb::SweepConfig> configs;
      if (suite_args.reference) {
        for (const auto& scale : kReferenceScales) {
          auto config = sweep_config(suite_args, g);
          config.n = scale[0];
          config.d = scale[1];
          configs.push_back(config);
        }
      } else {
        configs.push_back(sweep_config(suite_args, g));
      }
      for (auto& config : configs) {
        config.validate();
        if (suite_name == "threshold") {
          records.push_back(rb::run_threshold_suite(config));
        } else {
          for (auto& rec : rb::run_flip_suite(config)) records.push_back(std::move(rec));
        }
      }
      print_intervals(records);
      emit_records(records, g);
      return 0;
    }
  } catch (const rb::Error& e) {
    std::cerr << "rb: " << rb::to_string(e.code()) << ": " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "rb: " << e.what() << "\n";
    return 2;
  }
  return 0;
}
