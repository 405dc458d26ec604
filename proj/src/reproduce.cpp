#include "envy/reproduce.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "envy/csv.hpp"
#include "envy/harness.hpp"

namespace envy {

namespace {

using nlohmann::json;

struct ScaleParams {
  std::size_t horizon;
  std::size_t replications;
  std::vector<std::size_t> agent_grid;
  std::vector<double> delta_grid;
  std::vector<std::size_t> horizon_grid;
};

ScaleParams params_for(Scale s) {
  if (s == Scale::kPaper) {
    std::vector<std::size_t> agents;
    for (std::size_t n = 2; n <= 20; ++n) agents.push_back(n);
    std::vector<std::size_t> horizons;
    for (std::size_t t = 1000; t <= 10000; t += 1000) horizons.push_back(t);
    return {10000, 1000, agents, {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9}, horizons};
  }
  return {2000, 100, {2, 3, 4, 6, 8, 12, 16, 20}, {0.1, 0.3, 0.5, 0.7, 0.9}, {250, 500, 1000, 2000}};
}

const json kUniform = {{"arrival", "uniform"}};
const json kAdversarial = {{"arrival", "adversarial"}};

class Runner {
 public:
  explicit Runner(const ReproduceOptions& o) : opts_(o), params_(params_for(o.scale)) {
    std::filesystem::create_directories(o.out_dir);
  }

  const ScaleParams& params() const { return params_; }
  json nudged(double delta) const { return nudged_arrival_spec(opts_.nudge_model, delta); }
  json nudged() const { return nudged(opts_.nudge_delta); }

  /// Each call gets its own seed so experiments are independent.
  RunSummary run(const std::string& preset, const json& arrival, std::size_t horizon, std::size_t n_agents,
                 std::vector<std::size_t> checkpoints = {}, const json& policy = nullptr) {
    SimConfig c;
    c.instance = {{"preset", preset}};
    c.policy = policy;
    c.arrival = arrival;
    c.horizon = horizon;
    c.n_agents = n_agents;
    c.replications = params_.replications;
    c.seed = opts_.seed + 1000003ULL * ++calls_;
    c.checkpoints = std::move(checkpoints);
    return run_replications(c, opts_.workers);
  }

  std::string open(const std::string& name, std::ofstream& out) {
    const std::string path = (std::filesystem::path(opts_.out_dir) / name).string();
    out.open(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
    written_.push_back(path);
    return path;
  }

  std::vector<std::string> written() const { return written_; }

 private:
  ReproduceOptions opts_;
  ScaleParams params_;
  std::uint64_t calls_ = 0;
  std::vector<std::string> written_;
};

struct Named {
  std::string label;
  json arrival;
};

std::vector<Named> three_arrivals(const Runner& r) {
  return {{"adv", kAdversarial}, {"uni", kUniform}, {"ndg", r.nudged()}};
}

void fig1(Runner& r) {
  const std::size_t T = r.params().horizon;
  std::ofstream fits_out;
  r.open("fig1_fits.csv", fits_out);
  CsvWriter fits(fits_out, {"instance", "arrival", "c_linear", "res_linear", "c_sqrt", "res_sqrt", "preferred"});
  for (const std::string inst : {"I_U", "I_B"}) {
    std::vector<RunSummary> runs;
    std::vector<std::string> header{"t"};
    for (const auto& a : three_arrivals(r)) {
      runs.push_back(r.run(inst, a.arrival, T, 2));
      for (const char* col : {"_mean", "_lo3", "_hi3", "_fit_linear", "_fit_sqrt"}) header.push_back(a.label + col);
      const auto& f = runs.back().fits;
      fits.row_cells({inst, a.label, format_double(f.linear.c), format_double(f.linear.residual),
                      format_double(f.sqrt.c), format_double(f.sqrt.residual),
                      f.preferred ? to_string(*f.preferred) : "none"});
    }
    std::ofstream out;
    r.open("fig1_" + inst + ".csv", out);
    CsvWriter w(out, header);
    for (std::size_t k = 0; k < runs.front().checkpoints.size(); ++k) {
      const double t = static_cast<double>(runs.front().checkpoints[k].t);
      std::vector<double> row{t};
      for (const auto& run : runs) {
        const Moments& m = run.checkpoints[k].max_envy;
        row.insert(row.end(), {m.mean, m.mean - 3 * m.std, m.mean + 3 * m.std, run.fits.linear.c * t,
                               run.fits.sqrt.c * std::sqrt(t)});
      }
      w.row(row);
    }
  }
}

void fig2(Runner& r) {
  const std::size_t T = r.params().horizon;
  std::ofstream out;
  r.open("fig2.csv", out);
  std::vector<std::string> header{"N"};
  for (const char* inst : {"I_U", "I_B"}) {
    for (const char* a : {"uni", "ndg"}) {
      header.push_back(std::string(inst) + "_" + a + "_mean");
      header.push_back(std::string(inst) + "_" + a + "_std");
    }
  }
  CsvWriter w(out, header);
  for (std::size_t n : r.params().agent_grid) {
    std::vector<double> row{static_cast<double>(n)};
    for (const std::string inst : {"I_U", "I_B"}) {
      for (const json& a : {kUniform, r.nudged()}) {
        const auto s = r.run(inst, a, T, n, {T});
        row.push_back(s.checkpoints.back().max_envy.mean);
        row.push_back(s.checkpoints.back().max_envy.std);
      }
    }
    w.row(row);
  }
}

void fig3a(Runner& r) {
  const std::size_t T = r.params().horizon;
  const auto& deltas = r.params().delta_grid;
  std::vector<std::vector<Moments>> cols;
  for (const std::string inst : {"I_U", "I_B"}) {
    cols.emplace_back();
    for (double d : deltas) cols.back().push_back(r.run(inst, r.nudged(d), T, 2, {T}).checkpoints.back().max_envy);
  }
  // y = c / delta through the origin.
  std::vector<double> c_inv;
  for (const auto& col : cols) {
    double num = 0.0, den = 0.0;
    for (std::size_t k = 0; k < deltas.size(); ++k) {
      num += col[k].mean / deltas[k];
      den += 1.0 / (deltas[k] * deltas[k]);
    }
    c_inv.push_back(num / den);
  }
  std::ofstream out;
  r.open("fig3a.csv", out);
  CsvWriter w(out, {"delta", "I_U_mean", "I_U_std", "I_U_fit_inv_delta", "I_B_mean", "I_B_std", "I_B_fit_inv_delta"});
  for (std::size_t k = 0; k < deltas.size(); ++k) {
    w.row({deltas[k], cols[0][k].mean, cols[0][k].std, c_inv[0] / deltas[k], cols[1][k].mean, cols[1][k].std,
           c_inv[1] / deltas[k]});
  }
}

void fig3b(Runner& r) {
  std::vector<double> ts;
  std::vector<Moments> ms;
  for (std::size_t T : r.params().horizon_grid) {
    ms.push_back(r.run("I_S", r.nudged(), T, 2, {T}).checkpoints.back().max_envy);
    ts.push_back(static_cast<double>(T));
  }
  std::vector<double> means;
  for (const auto& m : ms) means.push_back(m.mean);
  const GrowthFit f = fit_growth(ts, means, GrowthModel::kSqrt);
  std::ofstream out;
  r.open("fig3b.csv", out);
  CsvWriter w(out, {"T", "tilde_delta", "mean", "std", "fit_sqrt"});
  for (std::size_t k = 0; k < ts.size(); ++k) {
    w.row({ts[k], 1.0 / std::sqrt(ts[k]), ms[k].mean, ms[k].std, f.c * std::sqrt(ts[k])});
  }
}

json efc(double c) { return {{"policy", "efc"}, {"c", c}}; }

void fig4(Runner& r) {
  const std::size_t T = r.params().horizon;
  const auto s = r.run("example1", kUniform, T, 2, {}, efc(1.0));
  std::ofstream out;
  r.open("fig4.csv", out);
  CsvWriter w(out, {"t", "mean_welfare", "std_welfare", "reference"});
  for (const auto& c : s.checkpoints) {
    const double t = static_cast<double>(c.t);
    w.row({t, c.welfare.mean * t, c.welfare.std * t, (1.0 + 1.0 / 16.0) * t});
  }
}

void fig5(Runner& r) {
  const std::size_t T = r.params().horizon;
  const std::vector<double> budgets{1, 2, 3, 4, 5, 10, 20, 40};
  std::vector<RunSummary> runs;
  std::vector<std::string> header{"t"};
  for (double c : budgets) {
    runs.push_back(r.run("example1", kUniform, T, 2, {}, efc(c)));
    header.push_back("C" + format_double(c) + "_mean");
  }
  header.push_back("ceiling");
  {
    std::ofstream out;
    r.open("fig5.csv", out);
    CsvWriter w(out, header);
    for (std::size_t k = 0; k < runs.front().checkpoints.size(); ++k) {
      std::vector<double> row{static_cast<double>(runs.front().checkpoints[k].t)};
      for (const auto& run : runs) row.push_back(run.checkpoints[k].welfare.mean);
      row.push_back(1.125);
      w.row(row);
    }
  }
  std::ofstream out;
  r.open("fig5_markers.csv", out);
  CsvWriter w(out, {"C", "final_mean", "final_std", "marker", "welfare_bound", "ceiling"});
  for (std::size_t i = 0; i < budgets.size(); ++i) {
    const double c = budgets[i];
    const Moments& m = runs[i].checkpoints.back().welfare;
    w.row({c, m.mean, m.std, 1.0 + (2 * c - 1) / (2 * c) / 8.0, 1.0 + 1.0 / 8.0 - 1.0 / (16.0 * c), 1.125});
  }
}

void table2(Runner& r) {
  const std::size_t T = r.params().horizon;
  std::vector<std::size_t> rows;
  for (std::size_t k = 1; k <= 10; ++k) rows.push_back(k * T / 10);
  std::vector<std::string> header{"t"};
  std::vector<RunSummary> runs;
  for (const std::string inst : {"I_U", "I_B"}) {
    for (const auto& a : three_arrivals(r)) {
      runs.push_back(r.run(inst, a.arrival, T, 2, rows));
      header.push_back(inst + "_" + a.label + "_3sem");
      header.push_back(inst + "_" + a.label + "_3std");
    }
  }
  std::ofstream out;
  r.open("table2.csv", out);
  CsvWriter w(out, header);
  for (std::size_t k = 0; k < rows.size(); ++k) {
    std::vector<double> row{static_cast<double>(rows[k])};
    for (const auto& run : runs) {
      row.push_back(3 * run.checkpoints[k].max_envy.sem);
      row.push_back(3 * run.checkpoints[k].max_envy.std);
    }
    w.row(row);
  }
}

}  // namespace

Scale scale_from_string(const std::string& s) {
  if (s == "desk") return Scale::kDesk;
  if (s == "paper") return Scale::kPaper;
  throw std::invalid_argument("unknown scale '" + s + "' (expected desk or paper)");
}

std::vector<std::string> figure_ids() { return {"fig1", "fig2", "fig3a", "fig3b", "fig4", "fig5", "table2"}; }

json nudged_arrival_spec(const std::string& model, double delta) {
  if (model == "mallows") return {{"arrival", "nudged"}, {"model", "mallows"}, {"delta", delta}};
  if (model == "plackett_luce") return {{"arrival", "nudged"}, {"model", "plackett_luce"}, {"delta", delta}};
  if (model == "thurstone") return {{"arrival", "nudged"}, {"model", "thurstone"}, {"s", 1.0}, {"delta", delta}};
  throw std::invalid_argument("unknown nudge model '" + model + "'");
}

std::vector<std::string> reproduce(const std::string& figure, const ReproduceOptions& options) {
  using Fn = void (*)(Runner&);
  const std::vector<std::pair<std::string, Fn>> table{{"fig1", fig1},   {"fig2", fig2}, {"fig3a", fig3a},
                                                      {"fig3b", fig3b}, {"fig4", fig4}, {"fig5", fig5},
                                                      {"table2", table2}};
  for (const auto& [id, fn] : table) {
    if (id == figure) {
      nudged_arrival_spec(options.nudge_model, options.nudge_delta);
      Runner r(options);
      fn(r);
      return r.written();
    }
  }
  throw std::invalid_argument("unknown figure '" + figure + "'");
}

}  // namespace envy
