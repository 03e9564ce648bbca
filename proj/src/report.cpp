#include "cooploc/report.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "cooploc/svg.hpp"

namespace cooploc {

namespace {

SuiteAggregate aggregate(const std::vector<double>& values) {
  SuiteAggregate agg;
  if (values.empty()) return agg;
  agg.min = std::numeric_limits<double>::infinity();
  agg.max = -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (double v : values) {
    sum += v;
    agg.min = std::min(agg.min, v);
    agg.max = std::max(agg.max, v);
  }
  agg.mean = sum / static_cast<double>(values.size());
  return agg;
}

void fill_aggregates(SuiteResult& suite) {
  std::vector<double> in_b, in_f, out_b, out_f, impr;
  for (const TrialResult& t : suite.trials) {
    in_b.push_back(t.metrics.mle_in_baseline);
    in_f.push_back(t.metrics.mle_in_fused);
    out_b.push_back(t.metrics.mle_out_baseline);
    out_f.push_back(t.metrics.mle_out_fused);
    impr.push_back(t.metrics.improvement_in);
  }
  suite.mle_in_baseline = aggregate(in_b);
  suite.mle_in_fused = aggregate(in_f);
  suite.mle_out_baseline = aggregate(out_b);
  suite.mle_out_fused = aggregate(out_f);
  suite.improvement_in = aggregate(impr);
}

SuiteResult run_suite_against(const ScenarioConfig& cfg,
                              const std::vector<TrajectoryLog>& baselines,
                              bool enable_rsu) {
  SuiteResult suite;
  suite.trials.reserve(baselines.size());
  for (std::size_t i = 0; i < baselines.size(); ++i) {
    TrialResult trial;
    trial.trial = static_cast<int>(i);
    trial.baseline = baselines[i];
    trial.fused = run_scenario(cfg, cfg.sim.master_seed + i, enable_rsu);
    trial.metrics = compute_metrics(trial.baseline, trial.fused, cfg);
    suite.trials.push_back(std::move(trial));
  }
  fill_aggregates(suite);
  return suite;
}

std::ofstream open_out(const std::filesystem::path& file) {
  std::ofstream out(file, std::ios::binary);
  if (!out) {
    throw std::runtime_error("cannot write file: " + file.string());
  }
  return out;
}

void write_trajectory_csv(const SuiteResult& suite, const std::filesystem::path& file) {
  auto out = open_out(file);
  out << "trial,t,arc,truth_x,truth_y,truth_yaw,baseline_x,baseline_y,baseline_err,"
         "fused_x,fused_y,fused_yaw,fused_err,v,omega,in_coverage,ndt_x,ndt_y,ndt_yaw,"
         "rsu_delivered\n";
  for (const TrialResult& trial : suite.trials) {
    for (std::size_t i = 0; i < trial.fused.records.size(); ++i) {
      const TickRecord& rb = trial.baseline.records[i];
      const TickRecord& rf = trial.fused.records[i];
      const double err_b = std::hypot(rb.fused.x - rb.truth.x, rb.fused.y - rb.truth.y);
      const double err_f = std::hypot(rf.fused.x - rf.truth.x, rf.fused.y - rf.truth.y);
      out << trial.trial << ',' << fmt_double(rf.t) << ',' << fmt_double(rf.arc) << ','
          << fmt_double(rf.truth.x) << ',' << fmt_double(rf.truth.y) << ','
          << fmt_double(rf.truth.yaw) << ',' << fmt_double(rb.fused.x) << ','
          << fmt_double(rb.fused.y) << ',' << fmt_double(err_b) << ','
          << fmt_double(rf.fused.x) << ',' << fmt_double(rf.fused.y) << ','
          << fmt_double(rf.fused.yaw) << ',' << fmt_double(err_f) << ','
          << fmt_double(rf.v) << ',' << fmt_double(rf.omega) << ','
          << (rf.in_coverage ? 1 : 0) << ',';
      if (rf.ndt) {
        out << fmt_double(rf.ndt->x) << ',' << fmt_double(rf.ndt->y) << ','
            << fmt_double(rf.ndt->yaw);
      } else {
        out << ",,";
      }
      out << ',' << rf.rsu_delivered << '\n';
    }
  }
}

void write_bins_csv(const SuiteResult& suite, const std::filesystem::path& file) {
  auto out = open_out(file);
  out << "trial,arc_lo,arc_hi,in_coverage,has_samples,min_err_baseline,min_err_fused\n";
  for (const TrialResult& trial : suite.trials) {
    for (const BinStat& bin : trial.metrics.bins) {
      out << trial.trial << ',' << fmt_double(bin.arc_lo) << ',' << fmt_double(bin.arc_hi)
          << ',' << (bin.in_coverage ? 1 : 0) << ',' << (bin.has_samples ? 1 : 0) << ',';
      if (bin.has_samples) {
        out << fmt_double(bin.min_err_baseline) << ',' << fmt_double(bin.min_err_fused);
      } else {
        out << ',';
      }
      out << '\n';
    }
  }
}

void write_summary_csv(const SuiteResult& suite, const std::filesystem::path& file) {
  auto out = open_out(file);
  out << "trial,mle_in_baseline,mle_in_fused,improvement_in,mle_out_baseline,"
         "mle_out_fused,bins_in,bins_out,rsu_sent,rsu_dropped,rsu_delivered,"
         "rsu_rejected_stale\n";
  for (const TrialResult& t : suite.trials) {
    out << t.trial << ',' << fmt_double(t.metrics.mle_in_baseline) << ','
        << fmt_double(t.metrics.mle_in_fused) << ',' << fmt_double(t.metrics.improvement_in)
        << ',' << fmt_double(t.metrics.mle_out_baseline) << ','
        << fmt_double(t.metrics.mle_out_fused) << ',' << t.metrics.bins_in << ','
        << t.metrics.bins_out << ',' << t.fused.rsu_sent << ',' << t.fused.rsu_dropped
        << ',' << t.fused.rsu_delivered << ',' << t.fused.rsu_rejected_stale << '\n';
  }
  const auto row = [&](const char* name, double b, double f, double impr, double ob,
                       double of) {
    out << name << ',' << fmt_double(b) << ',' << fmt_double(f) << ',' << fmt_double(impr)
        << ',' << fmt_double(ob) << ',' << fmt_double(of) << ",,,,,,\n";
  };
  row("mean", suite.mle_in_baseline.mean, suite.mle_in_fused.mean,
      suite.improvement_in.mean, suite.mle_out_baseline.mean, suite.mle_out_fused.mean);
  row("min", suite.mle_in_baseline.min, suite.mle_in_fused.min, suite.improvement_in.min,
      suite.mle_out_baseline.min, suite.mle_out_fused.min);
  row("max", suite.mle_in_baseline.max, suite.mle_in_fused.max, suite.improvement_in.max,
      suite.mle_out_baseline.max, suite.mle_out_fused.max);
}

void write_error_curve_svg(const SuiteResult& suite, const std::filesystem::path& file) {
  const double width = 900.0;
  const double height = 420.0;
  const double ml = 60.0, mr = 20.0, mt = 20.0, mb = 45.0;
  SvgWriter svg(width, height);
  if (suite.trials.empty() || suite.trials.front().fused.records.empty()) {
    svg.save(file);
    return;
  }
  const TrialResult& trial = suite.trials.front();
  const auto& recs_b = trial.baseline.records;
  const auto& recs_f = trial.fused.records;

  double arc_lo = recs_f.front().arc;
  double arc_hi = recs_f.back().arc;
  double err_max = 1e-6;
  for (std::size_t i = 0; i < recs_f.size(); ++i) {
    err_max = std::max(err_max, std::hypot(recs_b[i].fused.x - recs_b[i].truth.x,
                                           recs_b[i].fused.y - recs_b[i].truth.y));
    err_max = std::max(err_max, std::hypot(recs_f[i].fused.x - recs_f[i].truth.x,
                                           recs_f[i].fused.y - recs_f[i].truth.y));
  }
  err_max *= 1.05;

  const auto x_of = [&](double arc) {
    return ml + (arc - arc_lo) / (arc_hi - arc_lo) * (width - ml - mr);
  };
  const auto y_of = [&](double err) {
    return height - mb - err / err_max * (height - mt - mb);
  };

  // Shaded band wherever the truth position is inside some unit's range.
  std::size_t i = 0;
  while (i < recs_f.size()) {
    if (!recs_f[i].in_coverage) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j + 1 < recs_f.size() && recs_f[j + 1].in_coverage) ++j;
    svg.add_rect(x_of(recs_f[i].arc), mt, x_of(recs_f[j].arc) - x_of(recs_f[i].arc),
                 height - mt - mb, "#c8c8c8", 0.35);
    i = j + 1;
  }

  std::vector<std::pair<double, double>> pts_b, pts_f;
  for (std::size_t k = 0; k < recs_f.size(); ++k) {
    pts_b.emplace_back(x_of(recs_b[k].arc),
                       y_of(std::hypot(recs_b[k].fused.x - recs_b[k].truth.x,
                                       recs_b[k].fused.y - recs_b[k].truth.y)));
    pts_f.emplace_back(x_of(recs_f[k].arc),
                       y_of(std::hypot(recs_f[k].fused.x - recs_f[k].truth.x,
                                       recs_f[k].fused.y - recs_f[k].truth.y)));
  }

  svg.add_line(ml, height - mb, width - mr, height - mb, "#333333");
  svg.add_line(ml, mt, ml, height - mb, "#333333");
  for (int tick = 0; tick <= 5; ++tick) {
    const double arc = arc_lo + (arc_hi - arc_lo) * tick / 5.0;
    svg.add_line(x_of(arc), height - mb, x_of(arc), height - mb + 5, "#333333");
    svg.add_text(x_of(arc) - 10, height - mb + 18, fmt_double(std::round(arc)), 11);
    const double err = err_max * tick / 5.0;
    svg.add_line(ml - 5, y_of(err), ml, y_of(err), "#333333");
    svg.add_text(8, y_of(err) + 4, fmt_double(std::round(err * 1000.0) / 1000.0), 11);
  }
  svg.add_polyline(pts_b, "#d9534f", 1.0);
  svg.add_polyline(pts_f, "#0275d8", 1.2);
  svg.add_text(ml + 10, mt + 14, "onboard only (trial 0)", 12, "#d9534f");
  svg.add_text(ml + 10, mt + 30, "fused with roadside units (trial 0)", 12, "#0275d8");
  svg.add_text(width / 2 - 30, height - 8, "arc (m)", 12);
  svg.add_text(8, mt + 2, "error (m)", 12);
  svg.save(file);
}

}  // namespace

SuiteResult run_suite(const ScenarioConfig& cfg, bool enable_rsu) {
  cfg.validate();
  std::vector<TrajectoryLog> baselines;
  baselines.reserve(static_cast<std::size_t>(cfg.sim.trials));
  for (int i = 0; i < cfg.sim.trials; ++i) {
    baselines.push_back(
        run_scenario(cfg, cfg.sim.master_seed + static_cast<std::uint64_t>(i), false));
  }
  return run_suite_against(cfg, baselines, enable_rsu);
}

void write_suite_outputs(const SuiteResult& suite, const ScenarioConfig& cfg,
                         const std::filesystem::path& out_dir) {
  (void)cfg;
  std::filesystem::create_directories(out_dir);
  write_trajectory_csv(suite, out_dir / "trajectory.csv");
  write_bins_csv(suite, out_dir / "bins.csv");
  write_summary_csv(suite, out_dir / "summary.csv");
  write_error_curve_svg(suite, out_dir / "error_curve.svg");
}

SweepResult run_sweep(const ScenarioConfig& cfg, const std::vector<double>& delays_ms,
                      const std::vector<double>& losses) {
  cfg.validate();
  if (delays_ms.empty() || losses.empty()) {
    throw std::invalid_argument("run_sweep: need at least one delay and one loss value");
  }
  std::vector<TrajectoryLog> baselines;
  baselines.reserve(static_cast<std::size_t>(cfg.sim.trials));
  for (int i = 0; i < cfg.sim.trials; ++i) {
    baselines.push_back(
        run_scenario(cfg, cfg.sim.master_seed + static_cast<std::uint64_t>(i), false));
  }

  SweepResult sweep;
  sweep.delays_ms = delays_ms;
  sweep.losses = losses;
  for (double delay : delays_ms) {
    for (double loss : losses) {
      ScenarioConfig cell_cfg = cfg;
      cell_cfg.channel.delay_ms = delay;
      cell_cfg.channel.loss_prob = loss;
      cell_cfg.validate();
      SweepCell cell;
      cell.delay_ms = delay;
      cell.loss_prob = loss;
      cell.suite = run_suite_against(cell_cfg, baselines, true);
      sweep.cells.push_back(std::move(cell));
    }
  }
  return sweep;
}

void write_sweep_outputs(const SweepResult& sweep, const std::filesystem::path& out_dir) {
  std::filesystem::create_directories(out_dir);
  {
    auto out = open_out(out_dir / "sweep.csv");
    out << "delay_ms,loss_prob,trial,mle_in_baseline,mle_in_fused,improvement_in\n";
    for (const SweepCell& cell : sweep.cells) {
      for (const TrialResult& t : cell.suite.trials) {
        out << fmt_double(cell.delay_ms) << ',' << fmt_double(cell.loss_prob) << ','
            << t.trial << ',' << fmt_double(t.metrics.mle_in_baseline) << ','
            << fmt_double(t.metrics.mle_in_fused) << ','
            << fmt_double(t.metrics.improvement_in) << '\n';
      }
    }
  }
  {
    auto out = open_out(out_dir / "sweep_table.csv");
    out << "mean_mle_in_fused_by_delay_ms_and_loss";
    for (double loss : sweep.losses) out << ',' << fmt_double(loss);
    out << '\n';
    std::size_t idx = 0;
    for (double delay : sweep.delays_ms) {
      out << fmt_double(delay);
      for (std::size_t j = 0; j < sweep.losses.size(); ++j) {
        out << ',' << fmt_double(sweep.cells[idx].suite.mle_in_fused.mean);
        ++idx;
      }
      out << '\n';
    }
  }
}

}  // namespace cooploc
