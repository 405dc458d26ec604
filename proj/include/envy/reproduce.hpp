#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"

namespace envy {

enum class Scale { kDesk, kPaper };

/// "desk" or "paper"; throws std::invalid_argument otherwise.
Scale scale_from_string(const std::string& s);

struct ReproduceOptions {
  std::string out_dir = ".";
  Scale scale = Scale::kDesk;
  std::uint64_t seed = 2024;
  std::size_t workers = 0;
  /// Sampler for nudged runs: plackett_luce, mallows or thurstone.
  std::string nudge_model = "plackett_luce";
  double nudge_delta = 0.5;
};

/// fig1, fig2, fig3a, fig3b, fig4, fig5, table2.
std::vector<std::string> figure_ids();

/// Arrival spec for a nudged run with the given sampler and bias.
nlohmann::json nudged_arrival_spec(const std::string& model, double delta);

/// Runs the experiments behind one figure and writes its CSV files into
/// out_dir (created if missing). Returns the written paths. Throws
/// std::invalid_argument for an unknown id.
std::vector<std::string> reproduce(const std::string& figure, const ReproduceOptions& options);

}  // namespace envy
