#include <doctest.h>

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include <cooploc/metrics.hpp>
#include <cooploc/report.hpp>
#include <cooploc/scenario.hpp>
#include <cooploc/simulation.hpp>

using namespace cooploc;
using nlohmann::json;

namespace {

json small_json() {
  return json{
      {"road", {{"start", {0.0, 0.0}}, {"end", {60.0, 0.0}}, {"speed_mps", 8.0}}},
      {"vehicle",
       {{"id", "sedan"}, {"length", 4.5}, {"width", 1.8}, {"height", 1.5},
        {"start_arc", 0.0}, {"mirrors", false}}},
      {"rsus",
       json::array({{{"x", 30.0},
                     {"y", -8.0},
                     {"yaw_deg", 90.0},
                     {"mount_height", 2.0},
                     {"sensor", "vlp32c"},
                     {"range_noise_sigma", 0.01}}})},
      {"ndt",
       {{"sigma_xy", 0.05}, {"sigma_yaw", 0.005}, {"rate_hz", 10.0},
        {"zone",
         {{"arc_begin", 20.0}, {"arc_end", 40.0}, {"multiplier", 3.0}, {"blend_m", 5.0}}}}},
      {"scene", {{"ground_z", 0.0}}},
      {"channel", {{"delay_ms", 0.0}, {"loss_prob", 0.0}}},
      {"ekf",
       {{"dt", 0.02}, {"horizon_s", 1.0}, {"smooth_steps", 2},
        {"process_std", {0.015, 0.015, 0.01, 0.04, 0.02}}}},
      {"sim", {{"duration_s", 7.5}, {"master_seed", 99}, {"trials", 2}}}};
}

ScenarioConfig small_scenario() { return parse_scenario(small_json().dump(), "test"); }

bool records_identical(const TickRecord& a, const TickRecord& b) {
  if (a.t != b.t || a.arc != b.arc) return false;
  if (a.truth.x != b.truth.x || a.truth.y != b.truth.y || a.truth.yaw != b.truth.yaw)
    return false;
  if (a.fused.x != b.fused.x || a.fused.y != b.fused.y || a.fused.yaw != b.fused.yaw)
    return false;
  if (a.v != b.v || a.omega != b.omega) return false;
  if (a.in_coverage != b.in_coverage) return false;
  if (a.ndt.has_value() != b.ndt.has_value()) return false;
  if (a.ndt && (a.ndt->x != b.ndt->x || a.ndt->y != b.ndt->y || a.ndt->yaw != b.ndt->yaw))
    return false;
  return a.rsu_delivered == b.rsu_delivered;
}

std::string slurp(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  REQUIRE(in);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::filesystem::path fresh_dir(const std::string& leaf) {
  const auto dir = std::filesystem::temp_directory_path() / ("cooploc_test_" + leaf);
  std::filesystem::remove_all(dir);
  return dir;
}

}  // namespace

TEST_SUITE("simulation") {

TEST_CASE("identical seeds reproduce a run bit for bit") {
  const ScenarioConfig cfg = small_scenario();
  const TrajectoryLog a = run_scenario(cfg, 5, true);
  const TrajectoryLog b = run_scenario(cfg, 5, true);
  CHECK(log_hash(a) == log_hash(b));
  CHECK(a.records.size() == b.records.size());

  const TrajectoryLog c = run_scenario(cfg, 6, true);
  CHECK(log_hash(a) != log_hash(c));
}

TEST_CASE("disabling the units equals losing every message, tick for tick") {
  ScenarioConfig lossy = small_scenario();
  lossy.channel.loss_prob = 1.0;
  const ScenarioConfig cfg = small_scenario();

  const TrajectoryLog with_units = run_scenario(lossy, 7, true);
  const TrajectoryLog without = run_scenario(cfg, 7, false);

  REQUIRE(with_units.records.size() == without.records.size());
  for (std::size_t i = 0; i < with_units.records.size(); ++i) {
    CHECK(records_identical(with_units.records[i], without.records[i]));
  }
  // Only the channel counters tell the two runs apart.
  CHECK(with_units.rsu_sent > 0);
  CHECK(with_units.rsu_dropped == with_units.rsu_sent);
  CHECK(with_units.rsu_delivered == 0);
  CHECK(without.rsu_sent == 0);
  CHECK(without.rsu_dropped == 0);
}

TEST_CASE("noise-free streams drive the fused track onto the truth") {
  json j = small_json();
  j["ndt"]["sigma_xy"] = 0.0;
  j["ndt"]["sigma_yaw"] = 0.0;
  j["rsus"][0]["range_noise_sigma"] = 0.0;
  // Loose velocity process noise lets the filter adopt the measured motion
  // quickly, so the transient dies well before the checked window.
  j["ekf"]["process_std"] = {0.05, 0.05, 0.02, 2.0, 0.5};
  const ScenarioConfig cfg = parse_scenario(j.dump(), "test");

  const TrajectoryLog log = run_scenario(cfg, 3, true);
  double worst = 0.0;
  for (const TickRecord& r : log.records) {
    if (r.t < 4.0) continue;
    worst = std::max(worst, std::hypot(r.fused.x - r.truth.x, r.fused.y - r.truth.y));
  }
  CHECK(worst < 1e-6);
}

TEST_CASE("coverage flags follow the configured effective range") {
  json j = small_json();
  j["rsus"][0]["effective_range"] = 15.0;  // covers only part of the road
  const ScenarioConfig cfg = parse_scenario(j.dump(), "test");

  const TrajectoryLog log = run_scenario(cfg, 11, true);
  int covered = 0;
  for (const TickRecord& r : log.records) {
    const double d = std::hypot(r.truth.x - cfg.rsus[0].pose.x,
                                r.truth.y - cfg.rsus[0].pose.y);
    CHECK(r.in_coverage == (d <= 15.0));
    covered += r.in_coverage ? 1 : 0;
  }
  CHECK(covered > 0);
  CHECK(covered < static_cast<int>(log.records.size()));
}

TEST_CASE("onboard fixes arrive on their configured cadence") {
  const ScenarioConfig cfg = small_scenario();
  const TrajectoryLog log = run_scenario(cfg, 13, true);
  // 10 Hz on a 50 Hz loop means every fifth tick, starting at the first.
  for (std::size_t k = 0; k < log.records.size(); ++k) {
    CHECK(log.records[k].ndt.has_value() == (k % 5 == 0));
  }
  for (const TickRecord& r : log.records) {
    if (!r.ndt) continue;
    // Noisy but tethered: 0.05 m sigma times zone multiplier 3, within 6 sigma.
    CHECK(std::hypot(r.ndt->x - r.truth.x, r.ndt->y - r.truth.y) < 6.0 * 0.15);
  }
}

TEST_CASE("channel counters reconcile with per-tick deliveries") {
  const ScenarioConfig cfg = small_scenario();
  const TrajectoryLog log = run_scenario(cfg, 17, true);
  std::uint64_t accepted = 0;
  for (const TickRecord& r : log.records) {
    accepted += static_cast<std::uint64_t>(r.rsu_delivered);
  }
  CHECK(log.rsu_sent > 0);
  CHECK(log.rsu_sent == log.rsu_dropped + log.rsu_delivered);  // zero delay: none in flight
  CHECK(log.rsu_dropped == 0);                                 // zero loss
  CHECK(accepted + log.rsu_rejected_stale == log.rsu_delivered);
}

TEST_CASE("suite aggregates summarize the per-trial metrics") {
  const ScenarioConfig cfg = small_scenario();
  const SuiteResult suite = run_suite(cfg);
  REQUIRE(static_cast<int>(suite.trials.size()) == cfg.sim.trials);

  double sum = 0.0, lo = 1e9, hi = -1e9;
  for (const TrialResult& t : suite.trials) {
    CHECK(t.metrics.improvement_in ==
          doctest::Approx(1.0 - t.metrics.mle_in_fused / t.metrics.mle_in_baseline));
    sum += t.metrics.mle_in_fused;
    lo = std::min(lo, t.metrics.mle_in_fused);
    hi = std::max(hi, t.metrics.mle_in_fused);
  }
  CHECK(suite.mle_in_fused.mean ==
        doctest::Approx(sum / static_cast<double>(suite.trials.size())));
  CHECK(suite.mle_in_fused.min == doctest::Approx(lo));
  CHECK(suite.mle_in_fused.max == doctest::Approx(hi));
  CHECK(suite.mle_in_fused.mean <= suite.mle_in_baseline.mean);
}

TEST_CASE("suite outputs land on disk and are byte-stable across rewrites") {
  ScenarioConfig cfg = small_scenario();
  cfg.sim.trials = 1;
  const SuiteResult suite = run_suite(cfg);

  const auto dir_a = fresh_dir("suite_a");
  const auto dir_b = fresh_dir("suite_b");
  write_suite_outputs(suite, cfg, dir_a);
  write_suite_outputs(suite, cfg, dir_b);

  for (const char* name : {"trajectory.csv", "bins.csv", "summary.csv", "error_curve.svg"}) {
    CHECK(std::filesystem::exists(dir_a / name));
    CHECK(slurp(dir_a / name) == slurp(dir_b / name));
  }

  const std::string summary = slurp(dir_a / "summary.csv");
  CHECK(summary.rfind("trial,mle_in_baseline,mle_in_fused,improvement_in,"
                      "mle_out_baseline,mle_out_fused,bins_in,bins_out,"
                      "rsu_sent,rsu_dropped,rsu_delivered,rsu_rejected_stale\n",
                      0) == 0);
  const std::string bins = slurp(dir_a / "bins.csv");
  CHECK(bins.rfind("trial,arc_lo,arc_hi,in_coverage,has_samples,"
                   "min_err_baseline,min_err_fused\n",
                   0) == 0);
  const std::string trajectory = slurp(dir_a / "trajectory.csv");
  CHECK(trajectory.rfind("trial,t,arc,", 0) == 0);

  std::filesystem::remove_all(dir_a);
  std::filesystem::remove_all(dir_b);
}

TEST_CASE("a sweep runs every delay and loss combination against one baseline") {
  ScenarioConfig cfg = small_scenario();
  cfg.sim.trials = 1;
  const std::vector<double> delays{0.0, 30.0};
  const std::vector<double> losses{0.0, 0.5};
  const SweepResult sweep = run_sweep(cfg, delays, losses);

  REQUIRE(sweep.cells.size() == 4);
  CHECK(sweep.delays_ms == delays);
  CHECK(sweep.losses == losses);
  // Row-major over delays x losses.
  CHECK(sweep.cells[0].delay_ms == doctest::Approx(0.0));
  CHECK(sweep.cells[0].loss_prob == doctest::Approx(0.0));
  CHECK(sweep.cells[1].delay_ms == doctest::Approx(0.0));
  CHECK(sweep.cells[1].loss_prob == doctest::Approx(0.5));
  CHECK(sweep.cells[2].delay_ms == doctest::Approx(30.0));
  CHECK(sweep.cells[3].loss_prob == doctest::Approx(0.5));

  // The onboard-only baseline never crosses the channel, so every cell
  // reports the same baseline error.
  const double base = sweep.cells[0].suite.mle_in_baseline.mean;
  for (const SweepCell& cell : sweep.cells) {
    CHECK(cell.suite.mle_in_baseline.mean == doctest::Approx(base));
    REQUIRE(cell.suite.trials.size() == 1);
  }

  const auto dir = fresh_dir("sweep");
  write_sweep_outputs(sweep, dir);
  CHECK(std::filesystem::exists(dir / "sweep.csv"));
  CHECK(std::filesystem::exists(dir / "sweep_table.csv"));
  CHECK(slurp(dir / "sweep.csv").rfind(
            "delay_ms,loss_prob,trial,mle_in_baseline,mle_in_fused,improvement_in\n", 0) ==
        0);
  std::filesystem::remove_all(dir);
}

}  // TEST_SUITE
