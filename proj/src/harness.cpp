#include "envy/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>
#include <string>
#include <thread>

#include "envy/csv.hpp"
#include "envy/engine.hpp"

namespace envy {

namespace {

constexpr std::size_t kStatsPerCheckpoint = 6;
constexpr std::size_t kChunk = 256;

class Welford {
 public:
  void add(double x) {
    ++n_;
    const double d = x - mean_;
    mean_ += d / static_cast<double>(n_);
    m2_ += d * (x - mean_);
  }
  Moments moments() const {
    Moments m;
    m.mean = mean_;
    if (n_ > 1) {
      m.std = std::sqrt(std::max(0.0, m2_ / static_cast<double>(n_ - 1)));
      m.sem = m.std / std::sqrt(static_cast<double>(n_));
    }
    return m;
  }

 private:
  std::size_t n_ = 0;
  double mean_ = 0.0;
  double m2_ = 0.0;
};

void sample_checkpoints(const EnvyLedger& ledger, const std::vector<std::size_t>& cps, double* out) {
  for (std::size_t c = 0; c < cps.size(); ++c) {
    const std::size_t t = cps[c];
    double* row = out + c * kStatsPerCheckpoint;
    row[0] = ledger.max_envy(t);
    row[1] = ledger.avg_envy(t);
    row[2] = ledger.running_max_envy(t);
    row[3] = ledger.total_welfare(t) / static_cast<double>(t);
    row[4] = ledger.pair_discrepancy(t);
    row[5] = ledger.pair_envy(t);
  }
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

void check_written(std::ofstream& out, const std::string& path) {
  out.flush();
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace

std::size_t default_worker_count() {
  if (const char* env = std::getenv("ENVY_WORKERS")) {
    char* end = nullptr;
    const unsigned long v = std::strtoul(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) return v;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

RunSummary run_replications(const SimConfig& config, std::size_t workers) {
  config.validate();
  if (workers == 0) workers = default_worker_count();
  const Instance instance = config.build_instance();
  const auto policy = config.build_policy(instance);
  const auto arrival = config.build_arrival();
  const std::vector<std::size_t> cps = config.resolved_checkpoints();
  const std::size_t width = cps.size() * kStatsPerCheckpoint;

  std::vector<Welford> acc(width);
  std::vector<double> buffer(kChunk * width);
  for (std::size_t base = 0; base < config.replications; base += kChunk) {
    const std::size_t count = std::min(kChunk, config.replications - base);
    std::atomic<std::size_t> next{0};
    auto work = [&] {
      for (std::size_t k = next++; k < count; k = next++) {
        TrajectoryStreams streams(config.seed, base + k);
        const TrajectoryResult res = run_simulation(instance, *policy, *arrival, streams);
        sample_checkpoints(res.ledger, cps, buffer.data() + k * width);
      }
    };
    const std::size_t n_threads = std::min(workers, count);
    if (n_threads <= 1) {
      work();
    } else {
      std::vector<std::jthread> pool;
      for (std::size_t w = 0; w < n_threads; ++w) pool.emplace_back(work);
    }
    for (std::size_t k = 0; k < count; ++k) {
      const double* row = buffer.data() + k * width;
      for (std::size_t i = 0; i < width; ++i) acc[i].add(row[i]);
    }
  }

  RunSummary summary;
  summary.config = config;
  std::vector<double> ts, ys;
  for (std::size_t c = 0; c < cps.size(); ++c) {
    const Welford* w = acc.data() + c * kStatsPerCheckpoint;
    CheckpointStats s;
    s.t = cps[c];
    s.max_envy = w[0].moments();
    s.avg_envy = w[1].moments();
    s.running_max = w[2].moments();
    s.welfare = w[3].moments();
    s.delta = w[4].moments();
    s.pair_envy = w[5].moments();
    summary.checkpoints.push_back(s);
    ts.push_back(static_cast<double>(s.t));
    ys.push_back(s.max_envy.mean);
  }
  if (ts.size() >= 2) {
    summary.fits = compare_models(ts, ys);
  } else {
    const double t = ts.front(), y = ys.front();
    summary.fits = {{y / t, 0.0}, {y / std::sqrt(t), 0.0}, 1.0, std::nullopt};
  }
  return summary;
}

void write_metrics_csv(std::ostream& out, const RunSummary& summary) {
  CsvWriter w(out, {"t", "mean_max_envy", "std_max_envy", "mean_avg_envy", "mean_welfare", "var_delta"});
  for (const auto& s : summary.checkpoints) {
    w.row({static_cast<double>(s.t), s.max_envy.mean, s.max_envy.std, s.avg_envy.mean, s.welfare.mean,
           s.delta.std * s.delta.std});
  }
}

nlohmann::json summary_to_json(const RunSummary& summary) {
  using nlohmann::json;
  auto moments = [](const Moments& m) {
    return json{{"mean", m.mean}, {"std", m.std}, {"sem", m.sem}, {"band3", 3.0 * m.std}};
  };
  json cps = json::array();
  for (const auto& s : summary.checkpoints) {
    json c = moments(s.max_envy);
    c["t"] = s.t;
    c["avg_envy"] = moments(s.avg_envy);
    c["running_max_envy"] = moments(s.running_max);
    c["welfare"] = moments(s.welfare);
    c["delta"] = moments(s.delta);
    c["pair_envy"] = moments(s.pair_envy);
    cps.push_back(std::move(c));
  }
  const auto& f = summary.fits;
  json fits{{"linear", {{"c", f.linear.c}, {"res", f.linear.residual}}},
            {"sqrt", {{"c", f.sqrt.c}, {"res", f.sqrt.residual}}},
            {"preferred", f.preferred ? json(to_string(*f.preferred)) : json(nullptr)}};
  if (std::isfinite(f.ratio)) fits["ratio"] = f.ratio;
  return json{{"config_echo", summary.config.to_json()}, {"checkpoints", cps}, {"fits", fits}};
}

void write_outputs(const RunSummary& summary) {
  const OutputPaths& paths = summary.config.outputs;
  if (!paths.metrics_csv.empty()) {
    auto out = open_output(paths.metrics_csv);
    write_metrics_csv(out, summary);
    check_written(out, paths.metrics_csv);
  }
  if (!paths.summary_json.empty()) {
    auto out = open_output(paths.summary_json);
    out << summary_to_json(summary).dump(2) << '\n';
    check_written(out, paths.summary_json);
  }
  if (!paths.trajectory_csv.empty()) {
    const SimConfig& config = summary.config;
    const Instance instance = config.build_instance();
    const auto policy = config.build_policy(instance);
    const auto arrival = config.build_arrival();
    TrajectoryStreams streams(config.seed, 0);
    const auto res = run_simulation(instance, *policy, *arrival, streams, {.record_history = true});
    auto out = open_output(paths.trajectory_csv);
    write_trajectory_csv(out, res);
    check_written(out, paths.trajectory_csv);
  }
}

}  // namespace envy
