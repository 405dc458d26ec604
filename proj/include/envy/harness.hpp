#pragma once

#include <cstddef>
#include <iosfwd>
#include <vector>

#include "json.hpp"

#include "envy/config.hpp"
#include "envy/fit.hpp"

namespace envy {

/// Mean, standard deviation and standard error of the mean across
/// replications (std and sem are 0 for a single replication).
struct Moments {
  double mean = 0.0;
  double std = 0.0;
  double sem = 0.0;
};

/// Cross-replication statistics at round t.
struct CheckpointStats {
  std::size_t t = 0;
  Moments max_envy;
  Moments avg_envy;
  Moments running_max;  // max_{s <= t} E^s
  Moments welfare;      // SW_t / t
  Moments delta;        // r_0^t - r_{N-1}^t
  Moments pair_envy;    // R_0^t - R_{N-1}^t
};

struct RunSummary {
  SimConfig config;
  std::vector<CheckpointStats> checkpoints;
  /// Growth fits of the mean max-envy trace over the checkpoints.
  ModelComparison fits;
};

/// Worker threads from ENVY_WORKERS, else the hardware concurrency.
std::size_t default_worker_count();

/// Runs config.replications independent trajectories. Replication r uses the
/// streams derived from (config.seed, r), and statistics are merged in
/// replication order, so the result does not depend on `workers`
/// (0 selects default_worker_count()).
RunSummary run_replications(const SimConfig& config, std::size_t workers = 0);

/// Columns: t, mean_max_envy, std_max_envy, mean_avg_envy, mean_welfare,
/// var_delta.
void write_metrics_csv(std::ostream& out, const RunSummary& summary);

/// {config_echo, checkpoints: [{t, mean, std, sem, ...}], fits: {linear, sqrt}}.
nlohmann::json summary_to_json(const RunSummary& summary);

/// Writes every path set in summary.config.outputs; the trajectory file
/// replays replication 0 with history. Throws std::runtime_error naming the
/// file on I/O failure.
void write_outputs(const RunSummary& summary);

}  // namespace envy
