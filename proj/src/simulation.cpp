#include "cooploc/simulation.hpp"

#include <cmath>
#include <string>

#include "cooploc/background_filter.hpp"
#include "cooploc/channel.hpp"
#include "cooploc/covariance.hpp"
#include "cooploc/ekf_fusion.hpp"
#include "cooploc/rng.hpp"
#include "cooploc/rsu_pipeline.hpp"
#include "cooploc/scan_synth.hpp"

namespace cooploc {

namespace {

struct RsuRuntime {
  SensorModel model;
  ScanMount mount;
  RsuContext ctx;
  Channel channel;
  double effective_range{0.0};
  std::int64_t scan_period{1};
};

std::uint64_t fnv1a_bytes(std::uint64_t h, const void* data, std::size_t n) {
  const auto* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 1099511628211ULL;
  }
  return h;
}

std::uint64_t fnv1a_double(std::uint64_t h, double v) {
  return fnv1a_bytes(h, &v, sizeof v);
}

}  // namespace

TrajectoryLog run_scenario(const ScenarioConfig& cfg, std::uint64_t trial_seed,
                           bool enable_rsu) {
  cfg.validate();
  const double dt = cfg.ekf.dt;
  const auto n_steps = static_cast<std::int64_t>(std::floor(cfg.sim.duration_s / dt + 1e-9));
  const auto ndt_period =
      std::max<std::int64_t>(1, std::llround(1.0 / (cfg.ndt.rate_hz * dt)));

  std::vector<RsuRuntime> rsus;
  if (enable_rsu) {
    rsus.reserve(cfg.rsus.size());
    for (std::size_t i = 0; i < cfg.rsus.size(); ++i) {
      const RsuConfig& rc = cfg.rsus[i];
      SensorModel model = rc.build_model();
      ScanMount mount{rc.pose, rc.mount_height};
      const PointCloud reference =
          generate_scan(model, mount, cfg.scene, nullptr,
                        derive_seed(trial_seed, "refscan", i), 0.0,
                        "rsu" + std::to_string(i));
      RsuContext ctx{build_background_index(reference), mount, cfg.vehicle.spec,
                     rc.resolved_reported_sigma(), rc.resolved_effective_range(),
                     std::nullopt, std::nullopt};
      ChannelConfig cc{cfg.channel.delay_ms / 1000.0, cfg.channel.loss_prob,
                       derive_seed(trial_seed, "channel", i)};
      const auto scan_period =
          std::max<std::int64_t>(1, std::llround(1.0 / (model.rate_hz * dt)));
      rsus.push_back({std::move(model), mount, std::move(ctx), Channel(cc),
                      rc.resolved_effective_range(), scan_period});
    }
  }

  auto ndt_rng = make_rng(derive_seed(trial_seed, "ndt"));
  EkfFusion fused(cfg.ekf);

  TrajectoryLog log;
  log.records.reserve(static_cast<std::size_t>(n_steps) + 1);

  for (std::int64_t k = 0; k <= n_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double arc = cfg.vehicle.start_arc + cfg.road.speed_mps * t;
    const Pose2D truth = cfg.road.pose_at_arc(arc);

    bool in_coverage = false;
    for (const RsuConfig& rc : cfg.rsus) {
      if (std::hypot(truth.x - rc.pose.x, truth.y - rc.pose.y) <=
          rc.resolved_effective_range()) {
        in_coverage = true;
        break;
      }
    }

    fused.advance_to(t);

    TickRecord rec;
    rec.t = t;
    rec.arc = arc;
    rec.truth = truth;
    rec.in_coverage = in_coverage;

    if (k % ndt_period == 0) {
      const double scale = cfg.ndt.zone.noise_scale(arc);
      PoseMeasurement m;
      m.pose.x = truth.x + gauss(ndt_rng, cfg.ndt.sigma_xy * scale);
      m.pose.y = truth.y + gauss(ndt_rng, cfg.ndt.sigma_xy * scale);
      m.pose.yaw = normalize_yaw(truth.yaw + gauss(ndt_rng, cfg.ndt.sigma_yaw * scale));
      m.cov = ndt_covariance();
      m.stamp = t;
      m.source = MeasurementSource::kNdt;
      fused.submit(m);
      rec.ndt = m.pose;
    }

    for (std::size_t i = 0; i < rsus.size(); ++i) {
      RsuRuntime& r = rsus[i];
      if (k % r.scan_period != 0) continue;
      if (std::hypot(truth.x - r.mount.pose.x, truth.y - r.mount.pose.y) >
          r.effective_range) {
        continue;
      }
      VehicleBoxState veh;
      veh.pose = truth;
      veh.spec = cfg.vehicle.spec;
      veh.ground_z = cfg.scene.ground_z;
      veh.mirrors = cfg.vehicle.mirrors;
      const PointCloud scan =
          generate_scan(r.model, r.mount, cfg.scene, &veh,
                        derive_seed(trial_seed, "scan",
                                    i * 1000003ULL + static_cast<std::uint64_t>(k)),
                        t, "rsu" + std::to_string(i));
      if (fused.initialized()) {
        r.ctx.ref_position = Point2{fused.current().mean(0), fused.current().mean(1)};
        r.ctx.heading_hint = fused.current().mean(2);
      } else {
        r.ctx.ref_position.reset();
        r.ctx.heading_hint.reset();
      }
      if (const auto est = estimate_vehicle_pose(r.ctx, scan)) {
        r.channel.send(est->measurement, t);
      }
    }

    for (RsuRuntime& r : rsus) {
      for (const ChannelEvent& ev : r.channel.drain(t)) {
        if (fused.submit(ev.payload)) {
          ++rec.rsu_delivered;
        } else {
          ++log.rsu_rejected_stale;
        }
      }
    }

    if (fused.initialized()) {
      const EkfState& s = fused.current();
      rec.fused = {s.mean(0), s.mean(1), s.mean(2)};
      rec.v = s.mean(3);
      rec.omega = s.mean(4);
    }
    log.records.push_back(rec);
  }

  for (const RsuRuntime& r : rsus) {
    log.rsu_sent += r.channel.sent_count();
    log.rsu_dropped += r.channel.dropped_count();
    log.rsu_delivered += r.channel.delivered_count();
  }
  return log;
}

std::uint64_t log_hash(const TrajectoryLog& log) {
  std::uint64_t h = 1469598103934665603ULL;
  for (const TickRecord& r : log.records) {
    h = fnv1a_double(h, r.t);
    h = fnv1a_double(h, r.arc);
    h = fnv1a_double(h, r.truth.x);
    h = fnv1a_double(h, r.truth.y);
    h = fnv1a_double(h, r.truth.yaw);
    h = fnv1a_double(h, r.fused.x);
    h = fnv1a_double(h, r.fused.y);
    h = fnv1a_double(h, r.fused.yaw);
    h = fnv1a_double(h, r.v);
    h = fnv1a_double(h, r.omega);
    const unsigned char cov = r.in_coverage ? 1 : 0;
    h = fnv1a_bytes(h, &cov, 1);
    const unsigned char has_ndt = r.ndt ? 1 : 0;
    h = fnv1a_bytes(h, &has_ndt, 1);
    if (r.ndt) {
      h = fnv1a_double(h, r.ndt->x);
      h = fnv1a_double(h, r.ndt->y);
      h = fnv1a_double(h, r.ndt->yaw);
    }
    const auto delivered = static_cast<std::uint64_t>(r.rsu_delivered);
    h = fnv1a_bytes(h, &delivered, sizeof delivered);
  }
  h = fnv1a_bytes(h, &log.rsu_sent, sizeof log.rsu_sent);
  h = fnv1a_bytes(h, &log.rsu_dropped, sizeof log.rsu_dropped);
  h = fnv1a_bytes(h, &log.rsu_delivered, sizeof log.rsu_delivered);
  h = fnv1a_bytes(h, &log.rsu_rejected_stale, sizeof log.rsu_rejected_stale);
  return h;
}

}  // namespace cooploc
