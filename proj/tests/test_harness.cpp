#include <gtest/gtest.h>

#include <chrono>
#include <filesystem>

#include "rb/error.hpp"
#include "rb/harness.hpp"

namespace rb {
namespace {

SweepConfig small_sweep() {
  SweepConfig c;
  c.n = 6;
  c.d = 6;
  c.r_factors = {0.5, 1.0, 1.5};
  c.trials = 20;
  c.seed = 77;
  return c;
}

TEST(Sweep, ByteDeterministicAcrossJobCounts) {
  auto config = small_sweep();
  const auto a = records_to_csv(run_phase_sweep(config));
  config.jobs = 4;
  const auto b = records_to_csv(run_phase_sweep(config));
  EXPECT_EQ(a, b);
}

TEST(Sweep, CountsAreConserved) {
  for (const auto& rec : run_phase_sweep(small_sweep())) {
    EXPECT_EQ(rec.sat_count + rec.unsat_count + rec.budget_exhausted_count, rec.trials);
    EXPECT_LE(rec.unique_solution_count, rec.sat_count);
    EXPECT_EQ(rec.counted_trials, rec.trials - rec.budget_exhausted_count);
  }
}

TEST(Sweep, SatisfiabilityFallsWithDensity) {
  auto config = small_sweep();
  config.n = 10;
  config.d = 10;
  config.r_factors = {0.5, 2.0};
  config.trials = 40;
  const auto recs = run_phase_sweep(config);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_LT(recs[0].r, recs[1].r);
  EXPECT_GT(recs[0].pr_sat().estimate, recs[1].pr_sat().estimate);
}

TEST(Sweep, BudgetExhaustionIsCounted) {
  auto config = small_sweep();
  config.budget = 1;
  for (const auto& rec : run_phase_sweep(config)) {
    EXPECT_EQ(rec.budget_exhausted_count + rec.sat_count + rec.unsat_count, rec.trials);
    EXPECT_GT(rec.budget_exhausted_count, 0);
  }
}

TEST(Config, RejectsBadValues) {
  SweepConfig c = small_sweep();
  c.trials = 0;
  EXPECT_THROW(c.validate(), Error);
  c = small_sweep();
  c.r_factors.clear();
  c.r_min = 2.0;
  c.r_max = 1.0;
  EXPECT_THROW(c.validate(), Error);
  c = small_sweep();
  c.jobs = 0;
  EXPECT_THROW(c.validate(), Error);
}

TEST(ThresholdSuite, FieldsAreConsistent) {
  SweepConfig c = small_sweep();
  c.trials = 30;
  const auto rec = run_threshold_suite(c);
  EXPECT_EQ(rec.suite, "threshold");
  EXPECT_EQ(rec.sat_count + rec.unsat_count + rec.budget_exhausted_count, rec.trials);
  EXPECT_LE(rec.self_unsat_formula_count, rec.unsat_count);
  EXPECT_EQ(rec.near_trials, rec.counted_trials);
}

TEST(FlipSuite, OneRecordPerAvoidSize) {
  SweepConfig c = small_sweep();
  c.trials = 15;
  const auto recs = run_flip_suite(c);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].avoid_size, 0);
  EXPECT_EQ(recs[1].avoid_size, 3);
  for (const auto& rec : recs) {
    EXPECT_EQ(rec.invariance_checks, rec.invariance_passes);
    EXPECT_EQ(rec.flip_u2s_success, rec.u2s_witness_ok);
    EXPECT_LE(rec.flip_s2u_success, rec.flip_s2u_attempts);
  }
}

TEST(Records, CsvHeaderGolden) {
  const std::string csv = records_to_csv({});
  EXPECT_EQ(csv.substr(0, csv.find('\n')), std::string(kRecordCsvHeader));
  EXPECT_EQ(std::string(kRecordCsvHeader).rfind("schema,suite,n,d,k,", 0), 0u);
}

std::vector<ExperimentRecord> synthetic(std::size_t count) {
  std::vector<ExperimentRecord> out(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto& r = out[i];
    r.suite = i % 2 ? "sweep" : "flip";
    r.n = static_cast<int>(i % 40);
    r.d = 7;
    r.k = 2;
    r.p = 0.5;
    r.p_eff = 3.0 / 7.0;
    r.alpha = 1.0 / 3.0;
    r.r = 0.1 * static_cast<double>(i) + 1e-13;
    r.m = static_cast<int>(i);
    r.seed = 0xFFFFFFFFFFFFFFFFull - i;
    r.trials = 100;
    r.sat_count = 40;
    r.unsat_count = 60;
    r.solution_count_sum = 1.0 / 3.0 * static_cast<double>(i);
    r.solution_count_sq_sum = 1e300;
    r.total_nodes = 12345.678;
    r.wall_seconds = 0.0;
  }
  return out;
}

TEST(Records, CsvAndJsonRoundTrip) {
  const auto recs = synthetic(50);
  EXPECT_EQ(records_from_csv(records_to_csv(recs)), recs);
  EXPECT_EQ(records_from_json(records_to_json(recs)), recs);

  const auto dir = std::filesystem::temp_directory_path() / "rb_harness_test";
  std::filesystem::create_directories(dir);
  persist(recs, (dir / "r.csv").string(), RecordFormat::kCsv);
  persist(recs, (dir / "r.json").string(), RecordFormat::kJson);
  EXPECT_EQ(load_records((dir / "r.csv").string()), recs);
  EXPECT_EQ(load_records((dir / "r.json").string()), recs);
  std::filesystem::remove_all(dir);
}

TEST(Records, SchemaMismatchRejected) {
  auto csv = records_to_csv(synthetic(1));
  const auto pos = csv.find('\n') + 1;
  csv.replace(pos, 1, "9");
  try {
    records_from_csv(csv);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaVersion);
  }
  try {
    records_from_json(R"({"schema":2,"records":[]})");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kSchemaVersion);
  }
  EXPECT_THROW(records_from_csv("schema,bogus\n"), Error);
}

TEST(Records, TenThousandRoundTripIsFast) {
  const auto recs = synthetic(10000);
  const auto start = std::chrono::steady_clock::now();
  const auto back = records_from_csv(records_to_csv(recs));
  const double seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  EXPECT_EQ(back, recs);
  EXPECT_LT(seconds, 1.0);
}

}  // namespace
}  // namespace rb
