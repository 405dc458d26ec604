// envysim: command-line front end for the envy simulation library.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "envy/config.hpp"
#include "envy/csv.hpp"
#include "envy/errors.hpp"
#include "envy/fit.hpp"
#include "envy/harness.hpp"
#include "envy/reproduce.hpp"
#include "envy/verify.hpp"

namespace {

using namespace envy;

int cmd_run(const std::string& path, std::optional<std::uint64_t> seed) {
  SimConfig config = SimConfig::from_file(path);
  if (seed) config.seed = *seed;
  const RunSummary summary = run_replications(config);
  write_outputs(summary);
  const auto& o = config.outputs;
  if (o.metrics_csv.empty() && o.summary_json.empty() && o.trajectory_csv.empty()) {
    write_metrics_csv(std::cout, summary);
  } else {
    const auto& last = summary.checkpoints.back();
    std::cout << "t=" << last.t << " mean_max_envy=" << format_double(last.max_envy.mean)
              << " std=" << format_double(last.max_envy.std) << " mean_welfare=" << format_double(last.welfare.mean)
              << '\n';
  }
  return 0;
}

int cmd_sweep(const std::string& param, const std::vector<double>& values, const std::string& base,
              const std::string& out_path, std::optional<std::uint64_t> seed) {
  SimConfig config = base.empty() ? SimConfig{} : SimConfig::from_file(base);
  if (base.empty()) config.replications = 100, config.horizon = 2000;
  if (seed) config.seed = *seed;
  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) throw std::runtime_error("cannot open '" + out_path + "' for writing");
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  CsvWriter w(out, {param, "mean_max_envy", "std_max_envy", "sem_max_envy", "mean_avg_envy", "mean_welfare"});
  for (double v : values) {
    SimConfig c = config;
    if (param == "N") {
      c.n_agents = static_cast<std::size_t>(v);
    } else if (param == "T") {
      c.horizon = static_cast<std::size_t>(v);
      c.checkpoints.clear();
    } else {
      const std::string model = c.arrival.value("arrival", "") == "nudged"
                                    ? c.arrival.value("model", std::string("plackett_luce"))
                                    : "plackett_luce";
      c.arrival = nudged_arrival_spec(model, v);
    }
    c.checkpoints = {c.horizon};
    const auto s = run_replications(c);
    const auto& m = s.checkpoints.back();
    w.row({v, m.max_envy.mean, m.max_envy.std, m.max_envy.sem, m.avg_envy.mean, m.welfare.mean});
  }
  return 0;
}

int cmd_fit(const std::string& input, const std::string& model, const std::string& x_col,
            const std::string& y_col) {
  const CsvTable table = read_csv_file(input);
  const auto t = table.column_values(table.column(x_col));
  const auto y = table.column_values(table.column(y_col));
  auto print = [](const std::string& name, const GrowthFit& f) {
    std::cout << name << ": c=" << format_double(f.c) << " res=" << format_double(f.residual) << '\n';
  };
  if (model == "both") {
    const auto m = compare_models(t, y);
    print("linear", m.linear);
    print("sqrt", m.sqrt);
    std::cout << "ratio=" << format_double(m.ratio)
              << " preferred=" << (m.preferred ? to_string(*m.preferred) : "none") << '\n';
  } else {
    print(model, fit_growth(t, y, growth_model_from_string(model)));
  }
  return 0;
}

int cmd_verify() {
  const bool ok = print_checks(std::cout, run_verify_suite());
  std::cout << (ok ? "verify: all gating checks passed" : "verify: FAILED") << '\n';
  return ok ? 0 : 1;
}

int cmd_reproduce(const std::string& figure, ReproduceOptions opts, const std::string& scale,
                  std::optional<std::uint64_t> seed) {
  opts.scale = scale_from_string(scale);
  if (seed) opts.seed = *seed;
  for (const auto& path : reproduce(figure, opts)) std::cout << "wrote " << path << '\n';
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Envy in rounds-of-sessions bandits: simulation, verification and figure data.\n"
               "Worker threads: ENVY_WORKERS (default: hardware concurrency)."};
  app.require_subcommand(1);
  std::optional<std::uint64_t> seed;
  app.add_option("--seed", seed, "Master seed (overrides the config)");

  auto* run = app.add_subcommand("run", "Run the replications described by a JSON config");
  std::string config_path;
  run->add_option("config", config_path, "config.json")->required()->check(CLI::ExistingFile);

  auto* sweep = app.add_subcommand("sweep", "Final-round envy across values of one parameter");
  std::string param, base, sweep_out;
  std::vector<double> values;
  sweep->add_option("--param", param, "N, delta or T")->required()->check(CLI::IsMember({"N", "delta", "T"}));
  sweep->add_option("--values", values, "Parameter values")->required();
  sweep->add_option("--config", base, "Base config (default: I_U, T=2000, 100 replications)")
      ->check(CLI::ExistingFile);
  sweep->add_option("--out", sweep_out, "Output CSV (default: stdout)");

  auto* fit = app.add_subcommand("fit", "Fit y = c*t and y = c*sqrt(t) to a CSV trace");
  std::string input, model = "both", x_col = "t", y_col = "mean_max_envy";
  fit->add_option("--input", input, "trace.csv")->required()->check(CLI::ExistingFile);
  fit->add_option("--model", model, "linear, sqrt or both")->check(CLI::IsMember({"linear", "sqrt", "both"}));
  fit->add_option("--x", x_col, "Abscissa column");
  fit->add_option("--y", y_col, "Ordinate column");

  auto* verify = app.add_subcommand("verify", "Exact and analytic checks; exit 0 on pass");

  auto* repro = app.add_subcommand("reproduce", "Write the data behind a figure or table");
  std::string figure, scale = "desk";
  ReproduceOptions ropts;
  repro->add_option("figure", figure, "fig1 fig2 fig3a fig3b fig4 fig5 table2")
      ->required()
      ->check(CLI::IsMember(figure_ids()));
  repro->add_option("--out", ropts.out_dir, "Output directory");
  repro->add_option("--scale", scale, "desk or paper")->check(CLI::IsMember({"desk", "paper"}));
  repro->add_option("--nudge", ropts.nudge_model, "Nudge sampler for nudged runs")
      ->check(CLI::IsMember({"plackett_luce", "mallows", "thurstone"}));
  repro->add_option("--delta", ropts.nudge_delta, "Nudge bias for nudged runs");

  for (auto* sub : {run, sweep, fit, verify, repro}) sub->fallthrough();
  CLI11_PARSE(app, argc, argv);
  try {
    if (*run) return cmd_run(config_path, seed);
    if (*sweep) return cmd_sweep(param, values, base, sweep_out, seed);
    if (*fit) return cmd_fit(input, model, x_col, y_col);
    if (*verify) return cmd_verify();
    if (*repro) return cmd_reproduce(figure, ropts, scale, seed);
  } catch (const std::exception& e) {
    std::cerr << "envysim: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
