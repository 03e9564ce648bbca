#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cooploc/report.hpp"
#include "cooploc/scenario.hpp"
#include "cooploc/svg.hpp"

namespace {

struct RunOptions {
  std::string config_path;
  std::string out_dir = "out";
  int trials = -1;
  double delay_ms = -1.0;
  double loss = -1.0;
  std::string sensor;
  std::int64_t seed = -1;
  bool no_rsu = false;
};

struct SweepOptions {
  std::string config_path;
  std::string out_dir = "out";
  std::vector<double> delays_ms{0.0, 10.0, 30.0};
  std::vector<double> losses{0.0, 0.1, 0.2};
  int trials = -1;
  std::int64_t seed = -1;
};

cooploc::ScenarioConfig load_with_overrides(const std::string& path, int trials,
                                            double delay_ms, double loss,
                                            const std::string& sensor, std::int64_t seed) {
  cooploc::ScenarioConfig cfg = cooploc::load_scenario(path);
  if (trials >= 0) cfg.sim.trials = trials;
  if (delay_ms >= 0.0) cfg.channel.delay_ms = delay_ms;
  if (loss >= 0.0) cfg.channel.loss_prob = loss;
  if (!sensor.empty()) cfg.override_sensor(cooploc::sensor_model_from_string(sensor));
  if (seed >= 0) cfg.sim.master_seed = static_cast<std::uint64_t>(seed);
  cfg.validate();
  return cfg;
}

int do_run(const RunOptions& opt) {
  const cooploc::ScenarioConfig cfg = load_with_overrides(
      opt.config_path, opt.trials, opt.delay_ms, opt.loss, opt.sensor, opt.seed);
  const cooploc::SuiteResult suite = cooploc::run_suite(cfg, !opt.no_rsu);
  cooploc::write_suite_outputs(suite, cfg, opt.out_dir);

  std::uint64_t sent = 0, dropped = 0, delivered = 0, stale = 0;
  for (const auto& t : suite.trials) {
    sent += t.fused.rsu_sent;
    dropped += t.fused.rsu_dropped;
    delivered += t.fused.rsu_delivered;
    stale += t.fused.rsu_rejected_stale;
  }
  std::cout << "trials: " << suite.trials.size() << "\n"
            << "in-coverage mean error (m): baseline "
            << cooploc::fmt_double(suite.mle_in_baseline.mean) << ", fused "
            << cooploc::fmt_double(suite.mle_in_fused.mean) << " (improvement "
            << cooploc::fmt_double(suite.improvement_in.mean * 100.0) << "%)\n"
            << "out-of-coverage mean error (m): baseline "
            << cooploc::fmt_double(suite.mle_out_baseline.mean) << ", fused "
            << cooploc::fmt_double(suite.mle_out_fused.mean) << "\n"
            << "messages: sent " << sent << ", dropped " << dropped << ", delivered "
            << delivered << ", stale " << stale << "\n"
            << "outputs: " << opt.out_dir << "\n";
  return 0;
}

int do_sweep(const SweepOptions& opt) {
  const cooploc::ScenarioConfig cfg =
      load_with_overrides(opt.config_path, opt.trials, -1.0, -1.0, "", opt.seed);
  const cooploc::SweepResult sweep = cooploc::run_sweep(cfg, opt.delays_ms, opt.losses);
  cooploc::write_sweep_outputs(sweep, opt.out_dir);

  std::cout << "mean fused in-coverage error (m) by delay (rows) and loss (cols)\n";
  std::cout << "delay_ms\\loss";
  for (double loss : sweep.losses) std::cout << '\t' << cooploc::fmt_double(loss);
  std::cout << '\n';
  std::size_t idx = 0;
  for (double delay : sweep.delays_ms) {
    std::cout << cooploc::fmt_double(delay);
    for (std::size_t j = 0; j < sweep.losses.size(); ++j) {
      std::cout << '\t' << cooploc::fmt_double(sweep.cells[idx].suite.mle_in_fused.mean);
      ++idx;
    }
    std::cout << '\n';
  }
  std::cout << "outputs: " << opt.out_dir << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Roadside-assisted vehicle localization simulator"};
  app.require_subcommand(1);

  RunOptions run_opt;
  CLI::App* run = app.add_subcommand("run", "Run paired baseline/fused trials");
  run->add_option("--config", run_opt.config_path, "Scenario JSON file")->required();
  run->add_option("--trials", run_opt.trials, "Override trial count");
  run->add_option("--delay-ms", run_opt.delay_ms, "Override channel delay (ms)");
  run->add_option("--loss", run_opt.loss, "Override channel loss probability");
  run->add_option("--sensor", run_opt.sensor, "Override sensor model (vlp16|vlp32c)");
  run->add_option("--seed", run_opt.seed, "Override master seed");
  run->add_option("--out", run_opt.out_dir, "Output directory");
  run->add_flag("--no-rsu", run_opt.no_rsu, "Disable roadside units (ablation)");

  SweepOptions sweep_opt;
  CLI::App* sweep = app.add_subcommand("sweep", "Grid over channel delay and loss");
  sweep->add_option("--config", sweep_opt.config_path, "Scenario JSON file")->required();
  sweep->add_option("--delays", sweep_opt.delays_ms, "Delay values in ms")
      ->delimiter(',');
  sweep->add_option("--losses", sweep_opt.losses, "Loss probabilities")->delimiter(',');
  sweep->add_option("--trials", sweep_opt.trials, "Override trial count");
  sweep->add_option("--seed", sweep_opt.seed, "Override master seed");
  sweep->add_option("--out", sweep_opt.out_dir, "Output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return do_run(run_opt);
    if (sweep->parsed()) return do_sweep(sweep_opt);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
